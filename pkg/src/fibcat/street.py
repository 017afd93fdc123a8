"""Street's slice monad, extended to the arrow 2-category, and the K functors.

For a bundle p: E -> B the slice monad sends E to the comma category p/B
(triples (e, b, alpha: p e -> b)) over B.  The unit inserts identities,
the multiplication composes; both are strict thanks to the canonical
triple naming of comma apexes.  Extending along base change gives a strict
2-monad on bundles whose unit and multiplication live over identity bases.

The K functors are the iterated slice constructions applied to both the
total and the base; their d0 transformation is prone (a pullback, checked)
and their d1 transformation is supine (upstairs identity).
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    FinFunctor, NatTrans,
    BoundaryMismatch,
    compose_functors, identity_functor, identity_nat,
    op_dual, op_functor, whisker_left, whisker_right, vcompose_nat,
)
from .constructions import CommaResult, comma, iso_search
from .arrowcat import (
    Bundle, BundleSquare, BundleTwoCell,
    I_of, cc_square, compose_squares, identity_square, op_bundle,
)
from .report import Report, timed_check


@dataclass(frozen=True)
class LResult:
    bundle: Bundle          # d1: p/B -> B
    d0: FinFunctor          # p/B -> E
    lam: NatTrans           # p . d0 => d1
    source: Bundle
    comma: CommaResult


def L_obj(p):
    """The slice construction p/B over B, with projections and 2-cell."""
    cr = comma(p.proj, identity_functor(p.base))
    bundle = Bundle(cr.apex, p.base, cr.d1)
    return LResult(bundle, cr.d0, cr.lam, p, cr)


def L_bundle(p):
    return L_obj(p).bundle


def L_mor(sq):
    """Base-change action on squares: (e, b, alpha) goes to
    (up e, down b, down alpha).  The three defining equations relating the
    result to d0, d1 and the canonical 2-cells are asserted."""
    lp, lq = L_obj(sq.src), L_obj(sq.tgt)
    up = FinFunctor(
        lp.bundle.total, lq.bundle.total,
        {o: ("comma", sq.up.obj_map[o[1]], sq.down.obj_map[o[2]],
             sq.down.mor_map[o[3]])
         for o in lp.bundle.total.objects},
        {m: ("comma", sq.up.mor_map[m[1]], sq.down.mor_map[m[2]],
             sq.down.mor_map[m[3]], sq.down.mor_map[m[4]])
         for m in lp.bundle.total.morphisms},
    )
    out = BundleSquare(lp.bundle, lq.bundle, up, sq.down)
    # a) d0' . L f = up f . d0
    assert compose_functors(lq.d0, up) == compose_functors(sq.up, lp.d0)
    # b) d1' . L f = down f . d1  (this is the square commuting, re-stated)
    assert compose_functors(lq.bundle.proj, up) == compose_functors(sq.down, lp.bundle.proj)
    # c) lambda' . L f = down f . lambda
    assert whisker_right(lq.lam, up) == whisker_left(sq.down, lp.lam)
    return out


def L_2cell(alpha):
    """Action on 2-cells, componentwise from the upstairs/downstairs parts."""
    lf, lg = L_mor(alpha.src), L_mor(alpha.tgt)
    lp = L_obj(alpha.src.src)
    up = NatTrans(
        lf.up, lg.up,
        {o: ("comma", alpha.up.at(o[1]), alpha.down.at(o[2]),
             lf.up.obj_map[o][3], lg.up.obj_map[o][3])
         for o in lp.bundle.total.objects},
    )
    out = BundleTwoCell(lf, lg, up, alpha.down)
    lq = L_obj(alpha.src.tgt)
    # d) d0' . L alpha = up alpha . d0
    assert whisker_left(lq.d0, up) == whisker_right(alpha.up, lp.d0)
    # e) d1' . L alpha = down alpha . d1
    assert whisker_left(lq.bundle.proj, up) == whisker_right(alpha.down, lp.bundle.proj)
    return out


def i_component(p):
    """Monad unit at p: e goes to (e, p e, identity); over the identity base."""
    lp = L_obj(p)
    e_cat, b_cat = p.total, p.base
    up = FinFunctor(
        e_cat, lp.bundle.total,
        {e: ("comma", e, p.proj.obj_map[e], b_cat.id_of(p.proj.obj_map[e]))
         for e in e_cat.objects},
        {m: ("comma", m, p.proj.mor_map[m],
             b_cat.id_of(p.proj.obj_map[e_cat.src(m)]),
             b_cat.id_of(p.proj.obj_map[e_cat.tgt(m)]))
         for m in e_cat.morphisms},
    )
    out = BundleSquare(p, lp.bundle, up, identity_functor(b_cat))
    assert compose_functors(lp.d0, up) == identity_functor(e_cat)
    assert compose_functors(lp.bundle.proj, up) == p.proj
    # canonical 2-cell collapses on the unit
    assert whisker_right(lp.lam, up) == identity_nat(p.proj)
    return out


def c_component(p):
    """Monad multiplication at p: (e, b1, b2, alpha, alpha1) composes to
    (e, b2, alpha1 . alpha); over the identity base."""
    lp = L_obj(p)
    llp = L_obj(lp.bundle)
    b_cat = p.base
    up = FinFunctor(
        llp.bundle.total, lp.bundle.total,
        {o: ("comma", o[1][1], o[2], b_cat.compose(o[3], o[1][3]))
         for o in llp.bundle.total.objects},
        {m: ("comma", m[1][1], m[2],
             b_cat.compose(m[3], m[1][3]), b_cat.compose(m[4], m[1][4]))
         for m in llp.bundle.total.morphisms},
    )
    out = BundleSquare(llp.bundle, lp.bundle, up, identity_functor(b_cat))
    # d0 c = d0 d0 and d1 c = d1, strictly
    assert compose_functors(lp.d0, up) == compose_functors(lp.d0, llp.d0)
    assert compose_functors(lp.bundle.proj, up) == llp.bundle.proj
    # the canonical 2-cell of the composite is the pasting of the two layers
    lhs = whisker_right(lp.lam, up)
    for o in llp.bundle.total.objects:
        assert lhs.at(o) == b_cat.compose(o[3], o[1][3])
    return out


def monad_unit_square(p):
    """The unit of the 2-monad on bundles at p (same as i_component)."""
    return i_component(p)


# ---------------------------------------------------------------------------
# monad law verification


def verify_L_monad(bundles, squares=(), twocells=(), c_override=None):
    """Check the 2-monad laws for the slice monad over a corpus.

    ``c_override`` substitutes a broken multiplication (a map from bundle
    to BundleSquare) so that mutation tests can confirm the checks bite.
    """
    mult = c_override or c_component
    reports = []
    for p in bundles:
        label = _bundle_label(p)
        lp = L_obj(p)

        def left_unit(p=p, lp=lp):
            li = L_mor(i_component(p))  # L p -> L L p
            return compose_squares(mult(p), li) == identity_square(lp.bundle)

        def right_unit(p=p, lp=lp):
            il = i_component(lp.bundle)
            return compose_squares(mult(p), il) == identity_square(lp.bundle)

        def assoc(p=p, lp=lp):
            lc = L_mor(mult(p))            # L^3 p -> L^2 p
            cl = mult(lp.bundle)           # multiplication one level in
            return (compose_squares(mult(p), lc)
                    == compose_squares(mult(p), cl))

        reports.append(timed_check(
            "monad-left-unit[%s]" % label, "slice-monad-unit-law", left_unit))
        reports.append(timed_check(
            "monad-right-unit[%s]" % label, "slice-monad-unit-law", right_unit))
        reports.append(timed_check(
            "monad-associativity[%s]" % label, "slice-monad-associativity", assoc))
    for idx, sq in enumerate(squares):
        def nat_i(sq=sq):
            return (compose_squares(i_component(sq.tgt), sq)
                    == compose_squares(L_mor(sq), i_component(sq.src)))

        def nat_c(sq=sq):
            return (compose_squares(mult(sq.tgt), L_mor(L_mor(sq)))
                    == compose_squares(L_mor(sq), mult(sq.src)))

        reports.append(timed_check(
            "monad-unit-naturality[square-%d]" % idx,
            "slice-monad-base-change", nat_i))
        reports.append(timed_check(
            "monad-mult-naturality[square-%d]" % idx,
            "slice-monad-base-change", nat_c))
    for idx, al in enumerate(twocells):
        def nat_i2(al=al):
            # 2-naturality of the unit: whiskering the 2-cell with i on
            # either side agrees
            left = whisker_left(i_component(al.src.tgt).up, al.up)
            right = whisker_right(L_2cell(al).up, i_component(al.src.src).up)
            return left == right

        def nat_c2(al=al):
            left = whisker_left(mult(al.src.tgt).up, L_2cell(L_2cell(al)).up)
            right = whisker_right(L_2cell(al).up, mult(al.src.src).up)
            return left == right

        reports.append(timed_check(
            "monad-unit-2-naturality[2cell-%d]" % idx,
            "slice-monad-base-change", nat_i2))
        reports.append(timed_check(
            "monad-mult-2-naturality[2cell-%d]" % idx,
            "slice-monad-base-change", nat_c2))
    return reports


def _bundle_label(p):
    from .core import show_name
    return "%s->%s" % (show_name(p.total.label), show_name(p.base.label))


# ---------------------------------------------------------------------------
# the dual (R) side


def R_obj(p):
    """The dual slice construction B/p, computed by op-dualizing L."""
    lop = L_obj(op_bundle(p))
    bundle = Bundle(op_dual(lop.bundle.total), p.base, op_functor(lop.bundle.proj))
    d0 = op_functor(lop.d0)
    return LResult(bundle, d0, None, p, None)


def R_obj_direct(p):
    """The same construction as a comma category id_B/p, for cross-checks."""
    cr = comma(identity_functor(p.base), p.proj)
    return Bundle(cr.apex, p.base, cr.d0)


def r_agrees_with_direct(p):
    """The op-dualized and direct descriptions of B/p are isomorphic."""
    via_op = R_obj(p).bundle.total
    direct = R_obj_direct(p).total
    return iso_search(via_op, direct) is not None


# ---------------------------------------------------------------------------
# K functors


@dataclass(frozen=True)
class KResult:
    n: int
    bundle: Bundle
    cc_tower: tuple   # iterated base-change squares, cc(p) at the bottom


def _iterate_L_square(sq, n):
    tower = [sq]
    for _ in range(n):
        tower.append(L_mor(tower[-1]))
    return tower


def K_n(p, n):
    """The n-fold slice of a bundle on both levels: L^n E over L^n B."""
    if n < 0 or n > 2:
        raise BoundaryMismatch("only K_0, K_1, K_2 are supported")
    tower = _iterate_L_square(cc_square(p), n)
    top = tower[n]
    if n == 0:
        return KResult(0, p, tuple(tower))
    return KResult(n, Bundle(top.src.total, top.tgt.total, top.up), tuple(tower))


def K_square(sq, n):
    """K_n applied to a bundle square (componentwise the iterated L)."""
    src = K_n(sq.src, n).bundle
    tgt = K_n(sq.tgt, n).bundle
    up_sq = sq
    down_sq = BundleSquare(I_of(sq.src.base), I_of(sq.tgt.base), sq.down, sq.down)
    for _ in range(n):
        up_sq = L_mor(up_sq)
        down_sq = L_mor(down_sq)
    return BundleSquare(src, tgt, up_sq.up, down_sq.up)


def _L_tower_bundle(p, n):
    q = p
    for _ in range(n):
        q = L_obj(q).bundle
    return q


def d0K_component(p, n):
    """The projection K_{n+1} p -> K_n p; prone (a pullback square)."""
    src = K_n(p, n + 1).bundle
    tgt = K_n(p, n).bundle
    up = L_obj(_L_tower_bundle(p, n)).d0
    down = L_obj(_L_tower_bundle(I_of(p.base), n)).d0
    return BundleSquare(src, tgt, up, down)


def d1K_component(p, n):
    """The supine transformation K_{n+1} p -> K_n (L p): upstairs it is the
    identity, downstairs the n-fold slice of d1."""
    src = K_n(p, n + 1).bundle
    tgt = K_n(L_bundle(p), n).bundle
    up = identity_functor(src.total)
    phi_bundle = L_obj(I_of(p.base)).bundle  # Phi B over B
    d1_sq = BundleSquare(phi_bundle, I_of(p.base),
                         phi_bundle.proj, identity_functor(p.base))
    for _ in range(n):
        d1_sq = L_mor(d1_sq)
    return BundleSquare(src, tgt, up, d1_sq.up)


def iK_component(p):
    """The unit p -> K_1 p induced by the slice unit on both levels."""
    return BundleSquare(p, K_n(p, 1).bundle,
                        i_component(p).up,
                        i_component(I_of(p.base)).up)


def cK_component(p):
    """The multiplication K_2 p -> K_1 p on both levels."""
    return BundleSquare(K_n(p, 2).bundle, K_n(p, 1).bundle,
                        c_component(p).up,
                        c_component(I_of(p.base)).up)


def verify_K_lemmas(bundles):
    """The commutation lemmas tying d0, d1, i and c on the K functors."""
    from .arrowcat import is_prone, is_supine
    reports = []
    for p in bundles:
        label = _bundle_label(p)
        lp_bundle = L_bundle(p)

        def prone_check(p=p):
            return is_prone(d0K_component(p, 0)) and is_prone(d0K_component(p, 1))

        def supine_check(p=p):
            return is_supine(d1K_component(p, 0)) and is_supine(d1K_component(p, 1))

        def lemma_d1d0(p=p, lp_bundle=lp_bundle):
            lhs = compose_squares(d0K_component(lp_bundle, 0), d1K_component(p, 1))
            rhs = compose_squares(d1K_component(p, 0), d0K_component(p, 1))
            return lhs == rhs

        def lemma_a(p=p):
            # d0 . c = d0 . d0 on the K level
            lhs = compose_squares(d0K_component(p, 0), cK_component(p))
            rhs = compose_squares(d0K_component(p, 0), d0K_component(p, 1))
            return lhs == rhs

        def lemma_b(p=p, lp_bundle=lp_bundle):
            # d1 . c factors through the monad multiplication
            lhs = compose_squares(d1K_component(p, 0), cK_component(p))
            rhs = compose_squares(
                c_component(p),
                compose_squares(d1K_component(lp_bundle, 0), d1K_component(p, 1)))
            return lhs == rhs

        def lemma_c(p=p):
            return (compose_squares(d0K_component(p, 0), iK_component(p))
                    == identity_square(p))

        def lemma_d(p=p):
            return (compose_squares(d1K_component(p, 0), iK_component(p))
                    == i_component(p))

        reports.append(timed_check(
            "d0K-prone[%s]" % label, "slice-projection-pullback", prone_check))
        reports.append(timed_check(
            "d1K-supine[%s]" % label, "slice-insertion-supine", supine_check))
        reports.append(timed_check(
            "K-lemma-d1d0[%s]" % label, "K-transformation-commutation", lemma_d1d0))
        reports.append(timed_check(
            "K-lemma-a[%s]" % label, "K-multiplication-projection", lemma_a))
        reports.append(timed_check(
            "K-lemma-b[%s]" % label, "K-multiplication-insertion", lemma_b))
        reports.append(timed_check(
            "K-lemma-c[%s]" % label, "K-unit-projection", lemma_c))
        reports.append(timed_check(
            "K-lemma-d[%s]" % label, "K-unit-insertion", lemma_d))
    return reports
