"""Indexed bundle endofunctors, the transition 2-cells, and algebra lifting.

An indexed endofunctor acts on bundles without touching the base and sends
pullback (prone) squares to pullback squares.  For such a T the slice
monad admits a canonical transition L T => T L, built here concretely from
the pullback comparison plus T of the reindexing square; together with its
unit/multiplication compatibility laws this lifts T to pseudoalgebras —
i.e. T preserves fibrations and opfibrations.  The preservation theorem is
re-checked experimentally on every corpus instance.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    FinFunctor, NatTrans,
    NotProne, TheoremViolation,
    compose_functors, constant_functor, identity_functor,
    invert_functor, terminal_category, whisker_right, show_name,
)
from .constructions import pullback, mediate_pullback
from .arrowcat import (
    Bundle, BundleSquare, BundleTwoCell, I_of,
    compose_squares, identity_square, identity_twocell, is_prone,
    op_bundle, op_square, op_twocell, vcompose_twocells,
)
from .street import (
    K_n, K_square, L_bundle, L_mor, L_obj, L_2cell,
    c_component, d0K_component, d1K_component, i_component,
    iK_component, cK_component,
)
from .algebra import (
    PseudoAlgebra, cleavage_to_algebra, is_fibration, is_opfibration,
    is_pseudo_fibration, is_pseudo_opfibration, verify_pseudoalgebra,
)
from .report import Report, timed_check, vacuous


@dataclass(frozen=True)
class IndexedEndofunctor:
    name: str
    on_bundle: callable
    on_square: callable
    on_2cell: callable


# ---------------------------------------------------------------------------
# builtins


def identity_endofunctor():
    return IndexedEndofunctor(
        "identity",
        on_bundle=lambda p: p,
        on_square=lambda f: f,
        on_2cell=lambda a: a,
    )


def const_fiber(fib, fib_name=None):
    """p: E -> B goes to the projection B x F -> B; the total category is
    forgotten entirely, so the functor is fibre-blind."""
    fib_name = fib_name or str(fib.label)
    pt = terminal_category()

    def bang(c):
        return constant_functor(c, pt, "*")

    def on_bundle(p):
        prod = pullback(bang(p.base), bang(fib))
        proj0 = FinFunctor(prod.apex, p.base,
                           {o: o[1] for o in prod.apex.objects},
                           {m: m[1] for m in prod.apex.morphisms})
        return Bundle(prod.apex, p.base, proj0)

    def on_square(sq):
        src, tgt = on_bundle(sq.src), on_bundle(sq.tgt)
        up = FinFunctor(
            src.total, tgt.total,
            {o: ("pb", sq.down.obj_map[o[1]], o[2]) for o in src.total.objects},
            {m: ("pb", sq.down.mor_map[m[1]], m[2]) for m in src.total.morphisms})
        return BundleSquare(src, tgt, up, sq.down)

    def on_2cell(al):
        fsq, gsq = on_square(al.src), on_square(al.tgt)
        up = NatTrans(fsq.up, gsq.up,
                      {o: ("pb", al.down.at(o[1]), fib.id_of(o[2]))
                       for o in fsq.up.dom.objects})
        return BundleTwoCell(fsq, gsq, up, al.down)

    return IndexedEndofunctor("const_fiber:%s" % fib_name,
                              on_bundle, on_square, on_2cell)


def fiber_power(n):
    """The n-fold fibered power E x_B ... x_B E with its projection."""
    if n < 1:
        raise ValueError("fiber_power needs n >= 1")

    def build(p):
        """Returns (bundle, depth) with nested ("pb", ...) naming."""
        pb = pullback(p.proj, identity_functor(p.base))
        width = Bundle(pb.apex, p.base, pb.proj1)
        for _ in range(n - 1):
            nxt = pullback(width.proj, p.proj)
            width = Bundle(nxt.apex, p.base,
                           compose_functors(width.proj, nxt.proj0))
        return width

    def rename_obj(o, sq, k):
        # k = remaining power; the innermost layer is the (e, b) pair
        if k == 1:
            return ("pb", sq.up.obj_map[o[1]], sq.down.obj_map[o[2]])
        return ("pb", rename_obj(o[1], sq, k - 1), sq.up.obj_map[o[2]])

    def rename_mor(m, sq, k):
        if k == 1:
            return ("pb", sq.up.mor_map[m[1]], sq.down.mor_map[m[2]])
        return ("pb", rename_mor(m[1], sq, k - 1), sq.up.mor_map[m[2]])

    def on_bundle(p):
        return build(p)

    def on_square(sq):
        src, tgt = build(sq.src), build(sq.tgt)
        up = FinFunctor(src.total, tgt.total,
                        {o: rename_obj(o, sq, n) for o in src.total.objects},
                        {m: rename_mor(m, sq, n) for m in src.total.morphisms})
        return BundleSquare(src, tgt, up, sq.down)

    def cell_obj(o, al, k):
        if k == 1:
            return ("pb", al.up.at(o[1]), al.down.at(o[2]))
        return ("pb", cell_obj(o[1], al, k - 1), al.up.at(o[2]))

    def on_2cell(al):
        fsq, gsq = on_square(al.src), on_square(al.tgt)
        up = NatTrans(fsq.up, gsq.up,
                      {o: cell_obj(o, al, n) for o in fsq.up.dom.objects})
        return BundleTwoCell(fsq, gsq, up, al.down)

    return IndexedEndofunctor("fiber_power:%d" % n,
                              on_bundle, on_square, on_2cell)


def slice_endofunctor():
    """The slice monad packaged as a bundle endofunctor.

    It preserves the base but is *not* indexed — pulling a slice back along
    a base inclusion forgets morphisms into the removed objects — so it
    serves as the deliberate negative example for validate_indexed.
    """
    return IndexedEndofunctor("slice", L_bundle, L_mor, L_2cell)


def builtin_functors(extra_fiber=None):
    """The stock endofunctors: identity, a fibre-blind one, a fibre-sensitive
    one.  ``extra_fiber`` supplies the constant fibre category (default: the
    2-chain)."""
    from .core import chain_category
    fib = extra_fiber or chain_category("2", 2)
    return [identity_endofunctor(), const_fiber(fib), fiber_power(2)]


def co_dual_endofunctor(t):
    """The induced endofunctor on opposite bundles (for the fibration side)."""
    return IndexedEndofunctor(
        "co(%s)" % t.name,
        on_bundle=lambda p: op_bundle(t.on_bundle(op_bundle(p))),
        on_square=lambda f: op_square(t.on_square(op_square(f))),
        on_2cell=lambda a: op_twocell(t.on_2cell(op_twocell(a))),
    )


# ---------------------------------------------------------------------------
# validation


def validate_indexed(t, bundles, squares, twocells, prone_squares=()):
    """Check that t is a genuine indexed endofunctor over the corpus."""
    reports = []

    def cod_preserving():
        bad = []
        for name, p in bundles.items():
            if t.on_bundle(p).base != p.base:
                bad.append("bundle %s" % name)
        for name, sq in squares.items():
            if t.on_square(sq).down != sq.down:
                bad.append("square %s" % name)
        return (not bad, bad)

    def two_functorial():
        bad = []
        for name, p in bundles.items():
            if t.on_square(identity_square(p)) != identity_square(t.on_bundle(p)):
                bad.append("identity square at %s" % name)
        comp = _composable_pairs(squares)
        for (n1, f), (n2, g) in comp:
            if (t.on_square(compose_squares(g, f))
                    != compose_squares(t.on_square(g), t.on_square(f))):
                bad.append("composite %s . %s" % (n2, n1))
        for name, al in twocells.items():
            timg = t.on_2cell(al)
            if t.on_2cell(identity_twocell(al.src)) != identity_twocell(t.on_square(al.src)):
                bad.append("identity 2-cell at %s" % name)
            both = vcompose_twocells(timg, t.on_2cell(identity_twocell(al.src)))
            if both != timg:
                bad.append("vertical composition at %s" % name)
        return (not bad, bad)

    def preserves_prone():
        bad = []
        for name, sq in prone_squares:
            if not is_prone(sq):
                continue
            if not is_prone(t.on_square(sq)):
                bad.append("prone square %s" % name)
        return (not bad, bad)

    reports.append(timed_check("indexed-cod-preserving[%s]" % t.name,
                               "bundle-endofunctor-over-cod", cod_preserving))
    reports.append(timed_check("indexed-2-functorial[%s]" % t.name,
                               "bundle-endofunctor-2-functoriality", two_functorial))
    reports.append(timed_check("indexed-preserves-prone[%s]" % t.name,
                               "indexed-preserves-pullback-squares", preserves_prone))
    return reports


def _composable_pairs(squares):
    out = []
    items = list(squares.items())
    for n1, f in items:
        for n2, g in items:
            if f.tgt == g.src:
                out.append(((n1, f), (n2, g)))
    return out


# ---------------------------------------------------------------------------
# transitions


def psi_n(t, p, n):
    """The comparison T K_n => K_n T, built by lifting through the prone
    projection; invertibility and the defining equation are asserted."""
    if n == 0:
        return identity_square(t.on_bundle(p))
    prev = psi_n(t, p, n - 1)
    tp = t.on_bundle(p)
    target_prone = d0K_component(tp, n - 1)
    if not is_prone(target_prone):
        raise NotProne("projection square failed to be a pullback")
    t_step = t.on_square(d0K_component(p, n - 1))
    src_bundle = t_step.src   # T applied to K_n p
    q0 = src_bundle.proj                                     # into L^n B
    q1 = compose_functors(prev.up, t_step.up)                # into K_{n-1}(T p)
    pb = pullback(target_prone.down, target_prone.tgt.proj)
    m = mediate_pullback(pb, q0, q1)
    comp = mediate_pullback(pb, target_prone.src.proj, target_prone.up)
    up = compose_functors(invert_functor(comp), m)
    out = BundleSquare(src_bundle, K_n(tp, n).bundle, up,
                       identity_functor(src_bundle.base))
    # defining equation: projecting after psi agrees with psi after T(projection)
    assert (compose_squares(target_prone, out)
            == compose_squares(prev, t_step))
    assert up.is_invertible()
    return out


def Psi_component(t, p):
    """The transition L T p -> T L p over the identity base.

    Built from the pullback comparison between the slice of T p and T of
    the slice projection square, composed with T of the reindexing square
    that moves the slice from over Phi B to over B.
    """
    tp = t.on_bundle(p)
    base_square = d0K_component(p, 0)          # K_1 p -> p, a pullback
    t_base = t.on_square(base_square)          # still a pullback if t indexed
    slice_tp = d0K_component(tp, 0)            # K_1 (T p) -> T p
    # both squares are pullbacks of the cospan (d0: Phi B -> B, T p); the
    # comparison between them is mediated through the canonical apex
    canon = pullback(slice_tp.down, tp.proj)
    m_slice = mediate_pullback(canon, slice_tp.src.proj, slice_tp.up)
    m_image = mediate_pullback(canon, t_base.src.proj, t_base.up)
    if not m_image.is_invertible():
        raise NotProne("the endofunctor broke the slice pullback")
    assert m_slice.is_invertible()
    comparison = compose_functors(invert_functor(m_image), m_slice)
    # the reindexing square: the slice of p viewed over Phi B, then over B
    k1 = K_n(p, 1).bundle
    phi_bundle = L_obj(I_of(p.base)).bundle    # Phi B with its d1 projection
    reindex = BundleSquare(k1, L_bundle(p),
                           identity_functor(k1.total), phi_bundle.proj)
    t_reindex = t.on_square(reindex)
    up = compose_functors(t_reindex.up, comparison)
    src = L_bundle(tp)
    out = BundleSquare(src, t.on_bundle(L_bundle(p)), up,
                       identity_functor(p.base))
    # the defining equation: the supine leg of K_1 commutes with psi_1
    lhs = compose_squares(out, compose_squares(d1K_component(tp, 0),
                                               psi_n(t, p, 1)))
    rhs = t.on_square(d1K_component(p, 0))
    assert lhs == rhs
    return out


def verify_transition(t, bundles, squares=None, psi_override=None):
    """The transition laws for the slice monad along t, over a corpus.

    ``psi_override`` substitutes a (deliberately wrong) component map
    bundle -> BundleSquare so mutation tests can confirm detection.
    """
    psi = psi_override or (lambda p: Psi_component(t, p))
    reports = []
    for name, p in bundles.items():
        tp = t.on_bundle(p)

        def invertible(p=p, tp=tp):
            return (psi_n(t, p, 1).up.is_invertible()
                    and psi_n(t, p, 2).up.is_invertible())

        def unit_law(p=p, tp=tp):
            lhs = compose_squares(psi(p), i_component(tp))
            rhs = t.on_square(i_component(p))
            if lhs == rhs:
                return True
            return False, _square_diff(lhs, rhs)

        def mult_law(p=p, tp=tp):
            lhs = compose_squares(psi(p), c_component(tp))
            lpsi = L_mor(psi(p))
            rhs = compose_squares(
                t.on_square(c_component(p)),
                compose_squares(psi(L_bundle(p)), lpsi))
            if lhs == rhs:
                return True
            return False, _square_diff(lhs, rhs)

        def unit_vs_psi1(p=p, tp=tp):
            return (compose_squares(psi_n(t, p, 1), t.on_square(iK_component(p)))
                    == iK_component(tp))

        def mult_vs_psi2(p=p, tp=tp):
            lhs = compose_squares(cK_component(tp), psi_n(t, p, 2))
            rhs = compose_squares(psi_n(t, p, 1), t.on_square(cK_component(p)))
            return lhs == rhs

        def psi_vs_Psi(p=p, tp=tp):
            for n in (0, 1):
                lhs = compose_squares(
                    K_square(psi(p), n),
                    compose_squares(d1K_component(tp, n), psi_n(t, p, n + 1)))
                rhs = compose_squares(psi_n(t, L_bundle(p), n),
                                      t.on_square(d1K_component(p, n)))
                if lhs != rhs:
                    return False, ["level %d" % n]
            return True

        reports.append(timed_check("psi-invertible[%s:%s]" % (t.name, name),
                                   "transition-psi-invertible", invertible))
        reports.append(timed_check("transition-unit[%s:%s]" % (t.name, name),
                                   "transition-unit-law", unit_law))
        reports.append(timed_check("transition-mult[%s:%s]" % (t.name, name),
                                   "transition-multiplication-law", mult_law))
        reports.append(timed_check("transition-psi-unit[%s:%s]" % (t.name, name),
                                   "transition-unit-vs-psi", unit_vs_psi1))
        reports.append(timed_check("transition-psi-mult[%s:%s]" % (t.name, name),
                                   "transition-mult-vs-psi", mult_vs_psi2))
        reports.append(timed_check("transition-psi-chain[%s:%s]" % (t.name, name),
                                   "transition-psi-compatibility", psi_vs_Psi))
    for name, sq in (squares or {}).items():
        def naturality(sq=sq):
            lhs = compose_squares(psi(sq.tgt), L_mor(t.on_square(sq)))
            rhs = compose_squares(t.on_square(L_mor(sq)), psi(sq.src))
            return lhs == rhs

        reports.append(timed_check("transition-naturality[%s:%s]" % (t.name, name),
                                   "transition-2-naturality", naturality))
    return reports


def _square_diff(lhs, rhs):
    out = []
    for o in lhs.up.dom.objects:
        if lhs.up.obj_map[o] != rhs.up.obj_map[o]:
            out.append("at %s" % show_name(o))
        if len(out) >= 3:
            break
    return out or ["boundary mismatch"]


# ---------------------------------------------------------------------------
# lifting and preservation


def lift_algebra(t, alg):
    """Transport a pseudoalgebra along an indexed endofunctor.

    The lifted structure map is T(structure) after the transition; the
    2-cells are T of the original ones, whiskered onto the new boundaries.
    All boundary identifications are strict and enforced by construction.
    """
    p = alg.carrier
    tp = t.on_bundle(p)
    psi_p = Psi_component(t, p)
    structure = compose_squares(t.on_square(alg.structure), psi_p)

    t_zeta = t.on_2cell(alg.zeta)
    zeta = BundleTwoCell(
        identity_square(tp),
        compose_squares(structure, i_component(tp)),
        t_zeta.up, t_zeta.down)

    t_theta = t.on_2cell(alg.theta)
    psi_lp = Psi_component(t, L_bundle(p))
    glue = compose_squares(psi_lp, L_mor(psi_p))
    theta = BundleTwoCell(
        compose_squares(structure, L_mor(structure)),
        compose_squares(structure, c_component(tp)),
        whisker_right(t_theta.up, glue.up),
        t_theta.down)
    return PseudoAlgebra(tp, structure, zeta, theta)


_MODES = ("opfibration", "fibration", "pseudo-opfibration", "pseudo-fibration")


def check_preservation(t, p, mode, label=None):
    """Experimental confirmation of the preservation theorem for one bundle.

    If p does not satisfy the mode's hypothesis the result is vacuous;
    if it does and T(p) fails the same check, that is an engine bug and is
    reported as a TheoremViolation-grade failure.
    """
    if mode not in _MODES:
        raise ValueError("unknown mode %r" % mode)
    label = label or "%s:%s:%s" % (t.name, show_name(p.total.label), mode)
    anchor = "indexed-endofunctors-preserve-%s" % mode
    if mode == "fibration":
        ok, _ = is_fibration(p)
        if not ok:
            return [vacuous("preserve[%s]" % label, anchor,
                            "hypothesis not satisfied")]
        reports = check_preservation(co_dual_endofunctor(t), op_bundle(p),
                                     "opfibration",
                                     label="%s(dual)" % label)
        return reports
    if mode == "pseudo-fibration":
        ok = is_pseudo_fibration(p)
        if not ok:
            return [vacuous("preserve[%s]" % label, anchor,
                            "hypothesis not satisfied")]
        return check_preservation(co_dual_endofunctor(t), op_bundle(p),
                                  "pseudo-opfibration",
                                  label="%s(dual)" % label)
    if mode == "pseudo-opfibration":
        if not is_pseudo_opfibration(p):
            return [vacuous("preserve[%s]" % label, anchor,
                            "hypothesis not satisfied")]

        def preserved():
            if is_pseudo_opfibration(t.on_bundle(p)):
                return True
            raise TheoremViolation("image bundle lost the property")

        return [timed_check("preserve[%s]" % label, anchor, preserved)]

    # opfibration mode: full chain with lifted-algebra witness
    ok, cl = is_opfibration(p)
    if not ok:
        return [vacuous("preserve[%s]" % label, anchor,
                        "hypothesis not satisfied")]

    def preserved():
        ok2, _ = is_opfibration(t.on_bundle(p))
        if not ok2:
            raise TheoremViolation("image bundle lost the property")
        return True

    reports = [timed_check("preserve[%s]" % label, anchor, preserved)]
    alg = cleavage_to_algebra(p, cl)
    lifted = lift_algebra(t, alg)
    reports.extend(verify_pseudoalgebra(lifted, label="lift:%s" % label))

    def normality():
        if not alg.is_normalized():
            return True
        return lifted.is_normalized()

    reports.append(timed_check("preserve-normalized[%s]" % label,
                               "lifting-preserves-normalization", normality))
    return reports
