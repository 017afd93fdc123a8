import pytest

from fibcat.core import (
    IncompatibleData,
    chain_category, compose_functors, identity_functor, identity_nat,
    pick_object, terminal_category,
)
from fibcat.arrowcat import (
    Bundle, BundleSquare,
    cc_naturality, cc_square, check_yanking, compose_squares, fibre, I_of,
    identity_square, is_prone, is_supine, lift_2cell_prone, op_bundle,
    op_square, vertical_prone_factorize,
)
from fibcat.corpus import arrow_of_two


def test_square_must_commute():
    two = chain_category("2", 2)
    one = terminal_category()
    j0 = Bundle(one, two, pick_object(two, 0))
    j1 = Bundle(one, two, pick_object(two, 1))
    with pytest.raises(Exception):
        BundleSquare(j0, j1, identity_functor(one), identity_functor(two))


def test_prone_squares(squares):
    assert is_prone(squares["prone-fib1-cod"])
    assert is_prone(squares["prone-fib0-cod"])
    assert is_prone(squares["identity-cod"])


def test_collapse_square_is_not_prone(squares):
    # cod: 3 objects upstairs mapping onto the identity bundle on 2; the
    # comparison into the pullback is surjective but not injective
    assert not is_prone(squares["vertical-cod"])


def test_supine_detection(squares, bundles):
    assert is_supine(squares["identity-cod"])
    assert not is_supine(squares["prone-fib1-cod"])
    # the d1-style square upstairs-identity is supine by definition
    sq = BundleSquare(bundles["cod"], bundles["cod"],
                      identity_functor(bundles["cod"].total),
                      identity_functor(bundles["cod"].base))
    assert is_supine(sq)


def test_vertical_prone_factorization(squares):
    for name in ("prone-fib1-cod", "vertical-cod", "span2in3-id3"):
        sq = squares[name]
        vert, prone = vertical_prone_factorize(sq)
        assert is_prone(prone)
        assert vert.down == identity_functor(sq.src.base)
        assert compose_squares(prone, vert) == sq


def test_fibre_counts(bundles):
    f1 = fibre(bundles["cod"], 1)
    assert len(f1.objects) == 2 and len(f1.morphisms) == 3  # a 2-chain
    f0 = fibre(bundles["cod"], 0)
    assert len(f0.objects) == 1
    # product bundle: every fibre is the constant fibre
    fpi = fibre(bundles["pi"], 0)
    assert len(fpi.objects) == 2 and len(fpi.morphisms) == 3


def test_yanking_and_naturality(bundles, squares):
    for p in bundles.values():
        assert check_yanking(p)
    for sq in squares.values():
        assert cc_naturality(sq)


def test_op_square_involutive(squares):
    for sq in squares.values():
        assert op_square(op_square(sq)) == sq


def test_prone_lift_of_2cell(squares):
    sq = squares["prone-fib1-cod"]
    z = sq.src.total
    h = identity_functor(z)
    beta = lift_2cell_prone(sq, h, h,
                            identity_nat(sq.up),
                            identity_nat(sq.src.proj))
    assert beta == identity_nat(h)


def test_prone_lift_rejects_non_prone(squares):
    sq = squares["vertical-cod"]
    h = identity_functor(sq.src.total)
    with pytest.raises(IncompatibleData):
        lift_2cell_prone(sq, h, h, identity_nat(sq.up),
                         identity_nat(sq.src.proj))


def test_identity_bundle_square():
    two = chain_category("2", 2)
    i = I_of(two)
    assert cc_square(i) == identity_square(i)
