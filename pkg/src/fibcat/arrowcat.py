"""The arrow 2-category of bundles.

A bundle is a functor p: E -> B regarded as an object; 1-cells are
commuting squares (an "upstairs" and a "downstairs" functor), 2-cells are
compatible pairs of natural transformations.  Prone squares are pullback
squares, supine squares have invertible upstairs part — these are the
cartesian/cocartesian morphisms for the codomain functor.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    FinCategory, FinFunctor, NatTrans,
    BoundaryMismatch, IncompatibleData, SquareDoesNotCommute, UnknownObject,
    compose_functors, identity_functor, identity_nat, invert_functor,
    op_dual, op_functor, op_nat, pick_object, vcompose_nat,
    whisker_left, whisker_right, show_name,
)
from .constructions import (
    mediate_pullback, pullback, pullback_comparison,
)


@dataclass(frozen=True)
class Bundle:
    total: FinCategory
    base: FinCategory
    proj: FinFunctor

    def __post_init__(self):
        if self.proj.dom != self.total or self.proj.cod != self.base:
            raise BoundaryMismatch("bundle projection has the wrong boundary")


@dataclass(frozen=True)
class BundleSquare:
    src: Bundle
    tgt: Bundle
    up: FinFunctor
    down: FinFunctor

    def __post_init__(self):
        if self.up.dom != self.src.total or self.up.cod != self.tgt.total:
            raise BoundaryMismatch("upstairs functor has the wrong boundary")
        if self.down.dom != self.src.base or self.down.cod != self.tgt.base:
            raise BoundaryMismatch("downstairs functor has the wrong boundary")
        if (compose_functors(self.tgt.proj, self.up)
                != compose_functors(self.down, self.src.proj)):
            raise SquareDoesNotCommute("bundle square does not commute")


@dataclass(frozen=True)
class BundleTwoCell:
    src: BundleSquare
    tgt: BundleSquare
    up: NatTrans
    down: NatTrans

    def __post_init__(self):
        if self.src.src != self.tgt.src or self.src.tgt != self.tgt.tgt:
            raise BoundaryMismatch("2-cell needs parallel squares")
        if self.up.src != self.src.up or self.up.tgt != self.tgt.up:
            raise BoundaryMismatch("upstairs 2-cell has the wrong boundary")
        if self.down.src != self.src.down or self.down.tgt != self.tgt.down:
            raise BoundaryMismatch("downstairs 2-cell has the wrong boundary")
        proj = self.src.tgt.proj
        if (whisker_left(proj, self.up)
                != whisker_right(self.down, self.src.src.proj)):
            raise BoundaryMismatch("2-cell is not compatible with projections")


# ---------------------------------------------------------------------------
# category structure on bundles


def identity_square(p):
    return BundleSquare(p, p, identity_functor(p.total), identity_functor(p.base))


def compose_squares(g, f):
    """g . f for composable bundle squares."""
    if f.tgt != g.src:
        raise BoundaryMismatch("bundle squares are not composable")
    return BundleSquare(f.src, g.tgt,
                        compose_functors(g.up, f.up),
                        compose_functors(g.down, f.down))


def identity_twocell(sq):
    return BundleTwoCell(sq, sq, identity_nat(sq.up), identity_nat(sq.down))


def vcompose_twocells(beta, alpha):
    if alpha.tgt != beta.src:
        raise BoundaryMismatch("2-cells are not vertically composable")
    return BundleTwoCell(alpha.src, beta.tgt,
                         vcompose_nat(beta.up, alpha.up),
                         vcompose_nat(beta.down, alpha.down))


def whisker_square_left(g, alpha):
    """Whisker a 2-cell alpha (between squares p -> q) with g: q -> r."""
    return BundleTwoCell(compose_squares(g, alpha.src),
                         compose_squares(g, alpha.tgt),
                         whisker_left(g.up, alpha.up),
                         whisker_left(g.down, alpha.down))


def whisker_square_right(alpha, g):
    """Whisker a 2-cell alpha (between squares q -> r) with g: p -> q."""
    return BundleTwoCell(compose_squares(alpha.src, g),
                         compose_squares(alpha.tgt, g),
                         whisker_right(alpha.up, g.up),
                         whisker_right(alpha.down, g.down))


def op_bundle(p):
    return Bundle(op_dual(p.total), op_dual(p.base), op_functor(p.proj))


def op_square(sq):
    return BundleSquare(op_bundle(sq.src), op_bundle(sq.tgt),
                        op_functor(sq.up), op_functor(sq.down))


def op_twocell(alpha):
    return BundleTwoCell(op_square(alpha.tgt), op_square(alpha.src),
                         op_nat(alpha.up), op_nat(alpha.down))


# ---------------------------------------------------------------------------
# prone / supine


def prone_comparison(sq):
    """Comparison functor from the square's total to the canonical pullback
    of (downstairs, target projection)."""
    pb = pullback(sq.down, sq.tgt.proj)
    return pb, mediate_pullback(pb, sq.src.proj, sq.up)


def is_prone(sq):
    """A square is prone iff, as a square of categories, it is a pullback."""
    _, m = prone_comparison(sq)
    return m.is_invertible()


def is_supine(sq):
    """A square is supine iff its upstairs functor is invertible."""
    return sq.up.is_invertible()


def vertical_prone_factorize(sq):
    """Factor a square as (prone part) . (vertical part).

    The prone part is the pullback square over the same downstairs functor;
    the vertical part lives over the identity on the source base.
    """
    pb = pullback(sq.down, sq.tgt.proj)
    pulled = Bundle(pb.apex, sq.src.base, pb.proj0)
    prone = BundleSquare(pulled, sq.tgt, pb.proj1, sq.down)
    m = mediate_pullback(pb, sq.src.proj, sq.up)
    vert = BundleSquare(sq.src, pulled, m, identity_functor(sq.src.base))
    assert compose_squares(prone, vert) == sq
    return vert, prone


def fibre(p, b):
    """The fibre of p over a base object b, as a category."""
    if not p.base.has_object(b):
        raise UnknownObject(show_name(b))
    pb = pullback(pick_object(p.base, b), p.proj)
    return pb.apex


def lift_2cell_prone(sq, h1, h2, alpha, beta_down):
    """Lift a 2-cell through a prone square.

    Given functors h1, h2: Z -> src total, a 2-cell alpha: up h1 => up h2
    (into the target total) and beta_down: proj h1 => proj h2 (into the
    source base) with down . beta_down = proj' . alpha, produce the unique
    beta: h1 => h2 with up . beta = alpha and proj . beta = beta_down.
    """
    pb, comp = prone_comparison(sq)
    if not comp.is_invertible():
        raise IncompatibleData("square is not prone")
    if (whisker_left(sq.down, beta_down) != whisker_left(sq.tgt.proj, alpha)):
        raise IncompatibleData("2-cell data disagree over the base")
    inv = invert_functor(comp)
    comps = {}
    z = h1.dom
    for o in z.objects:
        m = ("pb", beta_down.at(o), alpha.at(o))
        if not pb.apex.has_morphism(m):
            raise IncompatibleData("no lift component at %s" % show_name(o))
        comps[o] = inv.mor_map[m]
    return NatTrans(h1, h2, comps)


# ---------------------------------------------------------------------------
# the identity-bundle functor and its unit


def I_of(b_cat):
    """The identity bundle on a base category."""
    return Bundle(b_cat, b_cat, identity_functor(b_cat))


def cc_square(p):
    """The square (up = p, down = id): p -> I(base), the unit of I . cod."""
    return BundleSquare(p, I_of(p.base), p.proj, identity_functor(p.base))


def check_yanking(p):
    """The yanking equality for cc at p: whiskering with cod collapses to
    the identity (the downstairs of cc is an identity, and cc of an
    identity bundle is an identity square)."""
    down_ok = cc_square(p).down == identity_functor(p.base)
    unit_ok = cc_square(I_of(p.base)) == identity_square(I_of(p.base))
    return down_ok and unit_ok


def cc_naturality(sq):
    """cc is natural: cc(tgt) . f = I(down f) . cc(src)."""
    i_down = BundleSquare(I_of(sq.src.base), I_of(sq.tgt.base), sq.down, sq.down)
    return (compose_squares(cc_square(sq.tgt), sq)
            == compose_squares(i_down, cc_square(sq.src)))
