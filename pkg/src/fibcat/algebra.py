"""Fibration and opfibration checking, cleavages, pseudoalgebras.

Two independent decision procedures are implemented on purpose: the
adjoint-based criterion (an opfibration is a bundle whose canonical
comparison functor into the slice has a left adjoint with identity unit)
and a direct brute-force search for supine lifts with their universal
property.  Their agreement on the corpus is itself one of the acceptance
checks.  A cleavage converts into a pseudoalgebra for the slice monad,
whose laws are verified componentwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import (
    FinFunctor, NatTrans,
    InvalidCleavage,
    compose_functors, identity_functor, identity_nat, name_key,
    pick_object, vcompose_nat, whisker_left, whisker_right, show_name,
)
from .constructions import comma, phi
from .arrowcat import (
    Bundle, BundleSquare, BundleTwoCell,
    compose_squares, identity_square, op_bundle,
)
from .street import L_obj, L_mor, L_bundle, L_2cell, c_component, i_component
from .report import Report, timed_check


# ---------------------------------------------------------------------------
# cleavages and pseudoalgebras


@dataclass
class Cleavage:
    kind: str                 # "opcleavage" (supine lifts) | "cleavage" (prone)
    lifts: dict               # (object of total, base morphism) -> total morphism
    bundle: Bundle

    def is_normalized(self):
        e_cat, b_cat, proj = self.bundle.total, self.bundle.base, self.bundle.proj
        for e in e_cat.objects:
            lift = self.lifts.get((e, b_cat.id_of(proj.obj_map[e])))
            if lift != e_cat.id_of(e):
                return False
        return True


@dataclass
class PseudoAlgebra:
    carrier: Bundle
    structure: BundleSquare   # L(carrier) -> carrier, downstairs identity
    zeta: BundleTwoCell       # identity square => structure . unit
    theta: BundleTwoCell      # structure . L(structure) => structure . mult

    def is_normalized(self):
        return self.zeta.up.is_identity()


@dataclass
class AdjointWitness:
    left: FinFunctor
    right: FinFunctor
    unit: NatTrans
    counit: NatTrans


# ---------------------------------------------------------------------------
# the comparison functor into the slice


def chevalley_tilde(p):
    """The comparison functor Phi E -> p/B sending a morphism m: e0 -> e1
    of the total category to the triple (e0, p e1, p m)."""
    cr_src = phi(p.total)
    lp = L_obj(p)
    proj = p.proj
    obj_map = {o: ("comma", o[1], proj.obj_map[o[2]], proj.mor_map[o[3]])
               for o in cr_src.apex.objects}
    mor_map = {m: ("comma", m[1], proj.mor_map[m[2]],
                   proj.mor_map[m[3]], proj.mor_map[m[4]])
               for m in cr_src.apex.morphisms}
    return FinFunctor(cr_src.apex, lp.bundle.total, obj_map, mor_map)


# ---------------------------------------------------------------------------
# adjoint search


def find_left_adjoint(g, unit_mode="identity"):
    """Search a left adjoint of g: A -> X with constrained unit.

    For each object x the comma category x/g is enumerated and an initial
    object looked for, with its comparison morphism required to be an
    identity (``unit_mode="identity"``), an isomorphism (``"iso"``) or
    arbitrary (``"any"``).  Ties between initial objects break by the
    deterministic order on names.  Returns an AdjointWitness with both
    triangle identities asserted, or None.
    """
    a_cat, x_cat = g.dom, g.cod
    chosen = {}
    for x in x_cat.objects:
        cr = comma(pick_object(x_cat, x), g)
        initial = []
        for o in cr.apex.objects:
            if all(len(cr.apex.hom(o, o2)) == 1 for o2 in cr.apex.objects):
                initial.append(o)
        if unit_mode == "identity":
            initial = [o for o in initial if o[3] == x_cat.id_of(x)]
        elif unit_mode == "iso":
            initial = [o for o in initial if x_cat.is_iso(o[3])]
        if not initial:
            return None
        best = min(initial, key=name_key)
        chosen[x] = (best[2], best[3])  # (F x, unit component)
    obj_map = {x: chosen[x][0] for x in x_cat.objects}
    unit = {x: chosen[x][1] for x in x_cat.objects}
    mor_map = {}
    for u in x_cat.morphisms:
        x, y = x_cat.src(u), x_cat.tgt(u)
        rhs = x_cat.compose(unit[y], u)
        hits = [h for h in a_cat.hom(obj_map[x], obj_map[y])
                if x_cat.compose(g.mor_map[h], unit[x]) == rhs]
        if len(hits) != 1:
            return None
        mor_map[u] = hits[0]
    left = FinFunctor(x_cat, a_cat, obj_map, mor_map)
    eta = NatTrans(identity_functor(x_cat), compose_functors(g, left), unit)
    counit = {}
    for a in a_cat.objects:
        ga = g.obj_map[a]
        hits = [h for h in a_cat.hom(obj_map[ga], a)
                if x_cat.compose(g.mor_map[h], unit[ga]) == x_cat.id_of(ga)]
        if len(hits) != 1:
            return None
    # second pass so the dict comprehension above stays readable
    for a in a_cat.objects:
        ga = g.obj_map[a]
        counit[a] = next(h for h in a_cat.hom(obj_map[ga], a)
                         if x_cat.compose(g.mor_map[h], unit[ga]) == x_cat.id_of(ga))
    eps = NatTrans(compose_functors(left, g), identity_functor(a_cat), counit)
    # triangle identities
    for x in x_cat.objects:
        if a_cat.compose(eps.at(left.obj_map[x]), left.mor_map[eta.at(x)]) \
                != a_cat.id_of(left.obj_map[x]):
            return None
    for a in a_cat.objects:
        if x_cat.compose(g.mor_map[eps.at(a)], eta.at(g.obj_map[a])) \
                != x_cat.id_of(g.obj_map[a]):
            return None
    return AdjointWitness(left, g, eta, eps)


# ---------------------------------------------------------------------------
# the (op)fibration criteria


def is_opfibration(p):
    """Adjoint criterion for opfibrations, with extracted opcleavage."""
    w = find_left_adjoint(chevalley_tilde(p), "identity")
    if w is None:
        return False, None
    lifts = {}
    for o in L_obj(p).bundle.total.objects:
        # o = (e, b, alpha); the adjoint picks the supine lift of alpha at e
        img = w.left.obj_map[o]      # a morphism-object (e0, e1, m) of Phi E
        lifts[(o[1], o[3])] = img[3]
    return True, Cleavage("opcleavage", lifts, p)


def is_pseudo_opfibration(p):
    return find_left_adjoint(chevalley_tilde(p), "iso") is not None


def is_fibration(p):
    """Dual criterion: prone lifts exist iff the dual bundle has supine ones."""
    ok, cl = is_opfibration(op_bundle(p))
    if not ok:
        return False, None
    return True, Cleavage("cleavage", dict(cl.lifts), p)


def is_pseudo_fibration(p):
    return is_pseudo_opfibration(op_bundle(p))


# ---------------------------------------------------------------------------
# the independent oracle


def supine_candidates(p, e, alpha):
    """All morphisms out of e over alpha satisfying the universal
    factorization property of a supine (cocartesian) lift."""
    e_cat, b_cat, proj = p.total, p.base, p.proj
    out = []
    for f in e_cat.morphisms:
        if e_cat.src(f) != e or proj.mor_map[f] != alpha:
            continue
        mid = e_cat.tgt(f)
        good = True
        for g in e_cat.morphisms:
            if e_cat.src(g) != e:
                continue
            z = e_cat.tgt(g)
            for beta in b_cat.hom(proj.obj_map[mid], proj.obj_map[z]):
                if b_cat.compose(beta, alpha) != proj.mor_map[g]:
                    continue
                hs = [h for h in e_cat.hom(mid, z)
                      if proj.mor_map[h] == beta and e_cat.compose(h, f) == g]
                if len(hs) != 1:
                    good = False
                    break
            if not good:
                break
        if good:
            out.append(f)
    return sorted(out, key=name_key)


def direct_supine_oracle(p):
    """Brute-force opfibration check: every (e, alpha) needs a supine lift."""
    e_cat, b_cat, proj = p.total, p.base, p.proj
    lifts = {}
    for e in e_cat.objects:
        pe = proj.obj_map[e]
        for alpha in b_cat.morphisms:
            if b_cat.src(alpha) != pe:
                continue
            cands = supine_candidates(p, e, alpha)
            if not cands:
                witness = "(e=%s, alpha=%s)" % (show_name(e), show_name(alpha))
                return False, None, witness
            preferred = [f for f in cands
                         if alpha == b_cat.id_of(pe) and f == e_cat.id_of(e)]
            lifts[(e, alpha)] = preferred[0] if preferred else cands[0]
    return True, Cleavage("opcleavage", lifts, p), None


def direct_prone_oracle(p):
    """Dual oracle through the opposite bundle."""
    ok, cl, witness = direct_supine_oracle(op_bundle(p))
    if not ok:
        return False, None, witness
    return True, Cleavage("cleavage", dict(cl.lifts), p), None


# ---------------------------------------------------------------------------
# cleavage -> pseudoalgebra


def cleavage_to_algebra(p, cl):
    """The slice-monad pseudoalgebra induced by an opcleavage.

    The structure map sends a triple (e, b, alpha) to the codomain of the
    chosen lift; the unit and associativity comparison 2-cells come from
    the (unique) factorizations through the lifts.  Uniqueness failures
    mean the supplied lifts were not supine and raise InvalidCleavage.
    """
    if cl.kind != "opcleavage":
        raise InvalidCleavage("algebra synthesis needs an opcleavage")
    e_cat, b_cat, proj = p.total, p.base, p.proj
    lp = L_obj(p)

    def lift(e, alpha):
        f = cl.lifts.get((e, alpha))
        if f is None or e_cat.src(f) != e or proj.mor_map[f] != alpha:
            raise InvalidCleavage(
                "missing or ill-typed lift at (%s, %s)"
                % (show_name(e), show_name(alpha)))
        return f

    obj_map = {o: e_cat.tgt(lift(o[1], o[3])) for o in lp.bundle.total.objects}
    mor_map = {}
    for m in lp.bundle.total.morphisms:
        (src_o, tgt_o) = (lp.bundle.total.src(m), lp.bundle.total.tgt(m))
        xi, eta = m[1], m[2]
        f_src = lift(src_o[1], src_o[3])
        f_tgt = lift(tgt_o[1], tgt_o[3])
        want = e_cat.compose(f_tgt, xi)
        hs = [h for h in e_cat.hom(obj_map[src_o], obj_map[tgt_o])
              if proj.mor_map[h] == eta and e_cat.compose(h, f_src) == want]
        if len(hs) != 1:
            raise InvalidCleavage(
                "lift at (%s, %s) is not supine: %d factorizations"
                % (show_name(src_o[1]), show_name(src_o[3]), len(hs)))
        mor_map[m] = hs[0]
    c_up = FinFunctor(lp.bundle.total, e_cat, obj_map, mor_map)
    structure = BundleSquare(lp.bundle, p, c_up, identity_functor(b_cat))

    i_sq = i_component(p)
    zeta_up = NatTrans(
        identity_functor(e_cat), compose_functors(c_up, i_sq.up),
        {e: lift(e, b_cat.id_of(proj.obj_map[e])) for e in e_cat.objects})
    zeta = BundleTwoCell(identity_square(p), compose_squares(structure, i_sq),
                         zeta_up, identity_nat(identity_functor(b_cat)))

    lc_sq = L_mor(structure)
    mult_sq = c_component(p)
    src_sq = compose_squares(structure, lc_sq)
    tgt_sq = compose_squares(structure, mult_sq)
    theta_comps = {}
    for w in L_obj(lp.bundle).bundle.total.objects:
        inner, b2, alpha1 = w[1], w[2], w[3]
        e, alpha = inner[1], inner[3]
        f1 = lift(e, alpha)
        f2 = lift(c_up.obj_map[inner], alpha1)
        g = lift(e, b_cat.compose(alpha1, alpha))
        through = e_cat.compose(f2, f1)
        hs = [h for h in e_cat.hom(src_sq.up.obj_map[w], tgt_sq.up.obj_map[w])
              if proj.mor_map[h] == b_cat.id_of(b2)
              and e_cat.compose(h, through) == g]
        if len(hs) != 1:
            raise InvalidCleavage(
                "no unique associativity comparison at %s" % show_name(w))
        theta_comps[w] = hs[0]
    theta_up = NatTrans(src_sq.up, tgt_sq.up, theta_comps)
    theta = BundleTwoCell(src_sq, tgt_sq, theta_up,
                          identity_nat(identity_functor(b_cat)))
    return PseudoAlgebra(p, structure, zeta, theta)


def free_algebra(p):
    """The free pseudoalgebra on a bundle: carrier L p, strict structure."""
    lp = L_bundle(p)
    structure = c_component(p)
    i_sq = i_component(lp)
    zeta = BundleTwoCell(identity_square(lp), compose_squares(structure, i_sq),
                         identity_nat(identity_functor(lp.total)),
                         identity_nat(identity_functor(lp.base)))
    lc_sq = L_mor(structure)
    mult_sq = c_component(lp)
    src_sq = compose_squares(structure, lc_sq)
    tgt_sq = compose_squares(structure, mult_sq)
    theta = BundleTwoCell(src_sq, tgt_sq,
                          identity_nat(src_sq.up),
                          identity_nat(src_sq.down))
    return PseudoAlgebra(lp, structure, zeta, theta)


# ---------------------------------------------------------------------------
# law verification


def verify_pseudoalgebra(alg, label=None):
    """The three coherence laws of a pseudoalgebra plus shape checks."""
    label = label or _alg_label(alg)
    p = alg.carrier
    lp = L_obj(p)
    c_fun = alg.structure.up
    reports = []

    def shapes():
        return (alg.structure.down == identity_functor(p.base)
                and alg.structure.src == lp.bundle and alg.structure.tgt == p)

    def invertible():
        return alg.zeta.up.is_invertible() and alg.theta.up.is_invertible()

    def eq1():
        i_le = i_component(lp.bundle).up
        lhs = vcompose_nat(whisker_right(alg.theta.up, i_le),
                           whisker_right(alg.zeta.up, c_fun))
        return lhs == identity_nat(c_fun)

    def eq2():
        li = L_mor(i_component(p)).up
        lzeta = L_2cell(alg.zeta).up
        lhs = vcompose_nat(whisker_right(alg.theta.up, li),
                           whisker_left(c_fun, lzeta))
        return lhs == identity_nat(c_fun)

    def eq3():
        lce = L_mor(c_component(p)).up            # L of the multiplication
        ltheta = L_2cell(alg.theta).up
        lhs = vcompose_nat(whisker_right(alg.theta.up, lce),
                           whisker_left(c_fun, ltheta))
        llc = L_mor(L_mor(alg.structure)).up      # L^2 of the structure map
        mult_le = c_component(lp.bundle).up       # multiplication one level in
        rhs = vcompose_nat(whisker_right(alg.theta.up, mult_le),
                           whisker_right(alg.theta.up, llc))
        if lhs == rhs:
            return True
        bad = [show_name(w) for w in lhs.components
               if lhs.at(w) != rhs.at(w)]
        return False, bad[:3]

    reports.append(timed_check("algebra-shape[%s]" % label,
                               "pseudoalgebra-boundaries", shapes))
    reports.append(timed_check("algebra-invertible[%s]" % label,
                               "pseudoalgebra-invertible-2-cells", invertible))
    reports.append(timed_check("algebra-eq-1[%s]" % label,
                               "lax-algebra-unit-law-1", eq1))
    reports.append(timed_check("algebra-eq-2[%s]" % label,
                               "lax-algebra-unit-law-2", eq2))
    reports.append(timed_check("algebra-eq-3[%s]" % label,
                               "lax-algebra-associativity", eq3))
    return reports


def verify_lax_homomorphism(src_alg, tgt_alg, f, theta_f, label="hom"):
    """The two coherence laws of a lax homomorphism (f, theta_f).

    theta_f is a 2-cell from (target structure) . L f to f . (source
    structure); pseudo/strict flags are included in the reports.
    """
    reports = []
    f_up = f.up
    c_src = src_alg.structure.up
    c_tgt = tgt_alg.structure.up
    p = src_alg.carrier

    def shape():
        return (theta_f.src == compose_squares(tgt_alg.structure, L_mor(f))
                and theta_f.tgt == compose_squares(f, src_alg.structure))

    def eq5():
        i_up = i_component(p).up
        lhs = vcompose_nat(whisker_right(theta_f.up, i_up),
                           whisker_right(tgt_alg.zeta.up, f_up))
        rhs = whisker_left(f_up, src_alg.zeta.up)
        return lhs == rhs

    def eq6():
        lf = L_mor(f)
        lc_src = L_mor(src_alg.structure).up
        step1 = whisker_left(c_tgt, L_2cell(theta_f).up)
        step2 = whisker_right(theta_f.up, lc_src)
        step3 = whisker_left(f_up, src_alg.theta.up)
        lhs = vcompose_nat(step3, vcompose_nat(step2, step1))
        llf = L_mor(lf).up
        mult_src = c_component(p).up
        rhs = vcompose_nat(whisker_right(theta_f.up, mult_src),
                           whisker_right(tgt_alg.theta.up, llf))
        return lhs == rhs

    def flags():
        pseudo = theta_f.up.is_invertible()
        return pseudo

    reports.append(timed_check("hom-shape[%s]" % label,
                               "lax-homomorphism-boundaries", shape))
    reports.append(timed_check("hom-eq-5[%s]" % label,
                               "lax-homomorphism-unit-law", eq5))
    reports.append(timed_check("hom-eq-6[%s]" % label,
                               "lax-homomorphism-multiplication-law", eq6))
    reports.append(timed_check("hom-pseudo[%s]" % label,
                               "lax-homomorphism-invertible", flags))
    return reports


def _alg_label(alg):
    return "%s->%s" % (show_name(alg.carrier.total.label),
                       show_name(alg.carrier.base.label))


# ---------------------------------------------------------------------------
# corpus-level agreement checks


def verify_chevalley_vs_oracle(bundles):
    reports = []
    for p in bundles:
        label = _bundle_label(p)

        def agree(p=p):
            via_adjoint, _ = is_opfibration(p)
            via_oracle, _, witness = direct_supine_oracle(p)
            if via_adjoint == via_oracle:
                return True
            return False, ["adjoint=%s oracle=%s witness=%s"
                           % (via_adjoint, via_oracle, witness)]

        reports.append(timed_check("chevalley-vs-oracle[%s]" % label,
                                   "opfibration-criteria-agreement", agree))
    return reports


def verify_duality(bundles):
    reports = []
    for p in bundles:
        label = _bundle_label(p)

        def dual(p=p):
            return is_fibration(p)[0] == is_opfibration(op_bundle(p))[0]

        reports.append(timed_check("fibration-duality[%s]" % label,
                                   "fibration-opfibration-duality", dual))
    return reports


def _bundle_label(p):
    return "%s->%s" % (show_name(p.total.label), show_name(p.base.label))
