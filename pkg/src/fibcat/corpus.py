"""The bundled test corpus: small categories, bundles, squares and 2-cells.

Everything here is desk-scale (at most a handful of objects) so every
universal property can be checked exhaustively.  The corpus is shared by
the test suite and by the CLI's law checks.
"""

from __future__ import annotations

from .core import (
    FinCategory, FinFunctor, NatTrans,
    chain_category, discrete_category, identity_functor, pick_object,
    terminal_category, walking_iso_category,
)
from .arrowcat import Bundle, BundleSquare, BundleTwoCell, I_of
from .constructions import pullback


def base_categories():
    """Named small categories, keyed by the names the DSL also understands."""
    one = terminal_category()
    two = chain_category("2", 2)
    three = chain_category("3", 3)
    disc2 = discrete_category("disc2", ["d0", "d1"])
    iso = walking_iso_category()
    arr2 = chain_category("arr2", 3)   # the arrow category of 2 is a 3-chain
    return {"1": one, "2": two, "3": three, "disc2": disc2,
            "iso": iso, "arr2": arr2}


def arrow_of_two():
    """The arrow category of the 2-chain together with dom/cod projections.

    Objects are the morphisms of 2 — the identity at 0, the arrow, the
    identity at 1 — which orders into a 3-chain; dom and cod read off the
    endpoints.
    """
    two = chain_category("2", 2)
    arr = chain_category("arr2", 3)
    # objects 0,1,2 of arr stand for id0, the arrow a, id1 respectively
    dom_obj = {0: 0, 1: 0, 2: 1}
    cod_obj = {0: 0, 1: 1, 2: 1}

    def induced(obj_map):
        return FinFunctor(
            arr, two, obj_map,
            {m: ("le", obj_map[m[1]], obj_map[m[2]]) for m in arr.morphisms})

    return arr, two, induced(dom_obj), induced(cod_obj)


def corpus_bundles():
    """At least ten named bundles exercising all the interesting cases."""
    cats = base_categories()
    one, two, three, disc2, iso = (cats["1"], cats["2"], cats["3"],
                                   cats["disc2"], cats["iso"])
    arr, two_, dom_f, cod_f = arrow_of_two()
    assert two_ == two

    j0 = pick_object(two, 0)      # the downward-closed point of 2
    j1 = pick_object(two, 1)      # the upward-closed point of 2
    k2 = pick_object(three, 2)    # top of the 3-chain

    prod = pullback(_bang(two), _bang(two))       # 2 x 2 over the point
    pi0 = FinFunctor(prod.apex, two,
                     {o: o[1] for o in prod.apex.objects},
                     {m: m[1] for m in prod.apex.morphisms})

    mid = FinFunctor(two, three,
                     {0: 0, 1: 2},
                     {m: ("le", {0: 0, 1: 2}[m[1]], {0: 0, 1: 2}[m[2]])
                      for m in two.morphisms})

    disc_in = FinFunctor(disc2, two, {"d0": 0, "d1": 1},
                         {("id", "d0"): ("le", 0, 0), ("id", "d1"): ("le", 1, 1)})

    iso_pt = _bang(iso)

    bundles = {
        "id1": Bundle(one, one, identity_functor(one)),
        "id2": Bundle(two, two, identity_functor(two)),
        "id3": Bundle(three, three, identity_functor(three)),
        "j0": Bundle(one, two, j0),
        "j1": Bundle(one, two, j1),
        "k2": Bundle(one, three, k2),
        "cod": Bundle(arr, two, cod_f),
        "dom": Bundle(arr, two, dom_f),
        "pi": Bundle(prod.apex, two, pi0),
        "span2in3": Bundle(two, three, mid),
        "disc2in2": Bundle(disc2, two, disc_in),
        "isopt": Bundle(iso, one, iso_pt),
    }
    return bundles


def _bang(c):
    """The unique functor into the terminal category."""
    from .core import constant_functor
    return constant_functor(c, terminal_category(), "*")


def corpus_squares():
    """A few bundle squares, including known prone and supine examples."""
    b = corpus_bundles()
    two = b["id2"].base
    one = b["id1"].base

    # prone: the fibre of cod over the top point of 2 included over j1
    cod = b["cod"]
    fib1 = pullback(pick_object(two, 1), cod.proj)
    fib1_bundle = Bundle(fib1.apex, one, _pt_proj(fib1.apex))
    prone_sq = BundleSquare(fib1_bundle, cod, fib1.proj1, pick_object(two, 1))

    # prone: same for the bottom point
    fib0 = pullback(pick_object(two, 0), cod.proj)
    fib0_bundle = Bundle(fib0.apex, one, _pt_proj(fib0.apex))
    prone_sq0 = BundleSquare(fib0_bundle, cod, fib0.proj1, pick_object(two, 0))

    # vertical square over 2: dom => cod style comparison does not commute,
    # so use the identity-on-total square from cod to the identity bundle
    collapse = BundleSquare(b["cod"], b["id2"], cod.proj,
                            identity_functor(two))

    # a base-change square into the identity bundle on 3 from id2
    mid = b["span2in3"]
    into_id3 = BundleSquare(mid, b["id3"], mid.proj, identity_functor(mid.base))

    squares = {
        "prone-fib1-cod": prone_sq,
        "prone-fib0-cod": prone_sq0,
        "vertical-cod": collapse,
        "span2in3-id3": into_id3,
        "identity-cod": _id_square(b["cod"]),
    }
    return squares


def _id_square(p):
    from .arrowcat import identity_square
    return identity_square(p)


def _pt_proj(total):
    from .core import constant_functor
    return constant_functor(total, terminal_category(), "*")


def corpus_twocells():
    """A couple of bundle 2-cells for the 2-naturality checks."""
    b = corpus_bundles()
    two = b["id2"].base
    id2 = b["id2"]

    # two parallel squares id2 -> id2: identity and the "collapse to top"
    top = FinFunctor(two, two, {0: 1, 1: 1},
                     {m: ("le", 1, 1) for m in two.morphisms})
    sq_id = _id_square(id2)
    sq_top = BundleSquare(id2, id2, top, top)
    to_top = NatTrans(identity_functor(two), top,
                      {0: ("le", 0, 1), 1: ("le", 1, 1)})
    cell = BundleTwoCell(sq_id, sq_top, to_top, to_top)

    # whisker-ready identity 2-cell on the cod bundle
    from .arrowcat import identity_twocell
    cells = {
        "collapse-to-top": cell,
        "identity-cod": identity_twocell(_id_square(b["cod"])),
    }
    return cells


def transition_bundles():
    """The sub-corpus used for the heavier transition/lifting sweeps."""
    b = corpus_bundles()
    return {k: b[k] for k in ("id1", "id2", "j0", "j1", "cod", "dom", "isopt")}
