import pytest
from hypothesis import given, settings, strategies as st

from fibcat.core import (
    NotAPullback, PastingMismatch,
    chain_category, compose_functors, identity_functor, identity_nat,
    pick_object, terminal_category, whisker_right,
)
from fibcat.constructions import (
    comma, comma_via_spans, extract_comma, iso_search,
    is_pullback_square, mediate_comma, mediate_comma_2cell, mediate_pullback,
    phi, pullback, pullback_comparison,
)
from fibcat.corpus import arrow_of_two


def test_phi_two_counts():
    two = chain_category("2", 2)
    p = phi(two)
    # objects = morphisms of 2; morphisms = commuting squares in 2
    assert len(p.apex.objects) == 3
    assert len(p.apex.morphisms) == 6


def test_phi_two_is_three_chain():
    two = chain_category("2", 2)
    three = chain_category("3", 3)
    assert iso_search(phi(two).apex, three) is not None


def test_comma_of_point_and_identity():
    two = chain_category("2", 2)
    j0 = pick_object(two, 0)
    cr = comma(j0, identity_functor(two))
    # objects: (*, b, 0 -> b) for b = 0, 1
    assert len(cr.apex.objects) == 2
    assert len(cr.apex.morphisms) == 3


def test_comma_round_trip_extract_then_mediate():
    arr, two, dom_f, cod_f = arrow_of_two()
    cr = comma(dom_f, cod_f)
    f = identity_functor(cr.apex)
    u0, u1, sigma = extract_comma(cr, f)
    assert mediate_comma(cr, u0, u1, sigma) == f


def test_comma_round_trip_mediate_then_extract():
    two = chain_category("2", 2)
    cr = phi(two)
    u0, u1, sigma = cr.d0, cr.d1, cr.lam
    m = mediate_comma(cr, u0, u1, sigma)
    back = extract_comma(cr, m)
    assert back == (u0, u1, sigma)


def test_comma_2cell_mediation_identity():
    two = chain_category("2", 2)
    cr = phi(two)
    f = identity_functor(cr.apex)
    xi = identity_nat(cr.d0)
    eta = identity_nat(cr.d1)
    out = mediate_comma_2cell(cr, f, f, xi, eta)
    assert out == identity_nat(f)


def test_comma_2cell_mediation_between_points():
    two = chain_category("2", 2)
    cr = comma(pick_object(two, 0), identity_functor(two))
    one = terminal_category()
    from fibcat.core import FinFunctor, NatTrans
    o0 = ("comma", "*", 0, ("le", 0, 0))
    o1 = ("comma", "*", 1, ("le", 0, 1))
    f = FinFunctor(one, cr.apex, {"*": o0}, {("id", "*"): cr.apex.id_of(o0)})
    g = FinFunctor(one, cr.apex, {"*": o1}, {("id", "*"): cr.apex.id_of(o1)})
    xi = NatTrans(compose_functors(cr.d0, f), compose_functors(cr.d0, g),
                  {"*": ("id", "*")})
    eta = NatTrans(compose_functors(cr.d1, f), compose_functors(cr.d1, g),
                   {"*": ("le", 0, 1)})
    out = mediate_comma_2cell(cr, f, g, xi, eta)
    assert out.at("*") == ("comma", ("id", "*"), ("le", 0, 1),
                           ("le", 0, 0), ("le", 0, 1))


def test_pullback_universal_property():
    arr, two, dom_f, cod_f = arrow_of_two()
    j1 = pick_object(two, 1)
    pb = pullback(j1, cod_f)
    # fibre of cod over 1: the arrow and the identity at 1, a 2-chain
    assert len(pb.apex.objects) == 2
    assert len(pb.apex.morphisms) == 3
    m = mediate_pullback(pb, pb.proj0, pb.proj1)
    assert m == identity_functor(pb.apex)


def test_pullback_of_identities_is_diagonal():
    two = chain_category("2", 2)
    i = identity_functor(two)
    pb = pullback(i, i)
    assert len(pb.apex.objects) == 2
    assert is_pullback_square(i, i, pb.proj0, pb.proj1)


def test_pullback_comparison_roundtrip():
    arr, two, dom_f, cod_f = arrow_of_two()
    pb1 = pullback(pick_object(two, 1), cod_f)
    pb2 = pullback(pick_object(two, 1), cod_f)
    comp = pullback_comparison(pb1, (pb2.proj0, pb2.proj1))
    assert comp == identity_functor(pb1.apex)


def test_pullback_comparison_needs_a_pullback():
    two = chain_category("2", 2)
    i = identity_functor(two)
    with pytest.raises(NotAPullback):
        pullback_comparison((i, i), (i, i))


def test_comma_via_spans_agrees():
    two = chain_category("2", 2)
    j0 = pick_object(two, 0)
    direct = comma(j0, identity_functor(two))
    spanned = comma_via_spans(j0, identity_functor(two))
    assert iso_search(direct.apex, spanned.left.dom) is not None


@settings(max_examples=20)
@given(st.integers(min_value=1, max_value=3), st.integers(min_value=0, max_value=2))
def test_fibre_of_point_inclusion(n, k):
    k = min(k, n - 1)
    c = chain_category("c", n)
    pb = pullback(pick_object(c, k), identity_functor(c))
    assert len(pb.apex.objects) == 1  # exactly the chosen point
