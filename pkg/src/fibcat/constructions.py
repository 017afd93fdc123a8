"""Limits in the finite 2-category: pullbacks, comma objects, spans.

Apexes are named canonically — pullback elements are ``("pb", a, b)`` and
comma elements ``("comma", a, b, s)`` — so that repeated constructions give
strictly equal (not merely isomorphic) results wherever the underlying data
agree.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    FinCategory, FinFunctor, NatTrans,
    BoundaryMismatch, CodomainMismatch, NotAPullback, PastingMismatch,
    SquareDoesNotCommute, UnknownObject,
    compose_functors, guard_size, identity_functor, invert_functor,
    whisker_left, whisker_right, show_name,
)


# ---------------------------------------------------------------------------
# pullbacks


@dataclass(frozen=True)
class PullbackResult:
    apex: FinCategory
    proj0: FinFunctor  # apex -> dom(f)
    proj1: FinFunctor  # apex -> dom(g)
    f: FinFunctor
    g: FinFunctor

    def mediate(self, q0, q1):
        return mediate_pullback(self, q0, q1)


def pullback(f, g):
    """The pullback of the cospan f: A -> C <- B : g."""
    if f.cod != g.cod:
        raise CodomainMismatch("pullback needs a common codomain")
    a_cat, b_cat = f.dom, g.dom
    objects = [("pb", a, b)
               for a in a_cat.objects for b in b_cat.objects
               if f.obj_map[a] == g.obj_map[b]]
    morphisms = {}
    for m in a_cat.morphisms:
        for n in b_cat.morphisms:
            if f.mor_map[m] == g.mor_map[n]:
                morphisms[("pb", m, n)] = (
                    ("pb", a_cat.src(m), b_cat.src(n)),
                    ("pb", a_cat.tgt(m), b_cat.tgt(n)),
                )
    guard_size(len(objects), len(morphisms), "pullback apex")
    identity = {("pb", a, b): ("pb", a_cat.id_of(a), b_cat.id_of(b))
                for (_, a, b) in objects}
    table = {}
    for (_, m2, n2), (s2, _) in morphisms.items():
        for (_, m1, n1), (_, t1) in morphisms.items():
            if s2 == t1:
                table[(("pb", m2, n2), ("pb", m1, n1))] = (
                    "pb", a_cat.compose(m2, m1), b_cat.compose(n2, n1))
    apex = FinCategory(("pb", a_cat.label, b_cat.label), objects, morphisms,
                       identity, table)
    proj0 = FinFunctor(apex, a_cat,
                       {o: o[1] for o in objects},
                       {m: m[1] for m in morphisms})
    proj1 = FinFunctor(apex, b_cat,
                       {o: o[2] for o in objects},
                       {m: m[2] for m in morphisms})
    return PullbackResult(apex, proj0, proj1, f, g)


def mediate_pullback(pb, q0, q1):
    """The unique functor m with proj0 . m = q0 and proj1 . m = q1."""
    if q0.dom != q1.dom:
        raise BoundaryMismatch("mediating legs need a common domain")
    if q0.cod != pb.f.dom or q1.cod != pb.g.dom:
        raise BoundaryMismatch("mediating legs land in the wrong categories")
    if compose_functors(pb.f, q0) != compose_functors(pb.g, q1):
        raise SquareDoesNotCommute("legs do not agree over the cospan")
    x = q0.dom
    return FinFunctor(
        x, pb.apex,
        {o: ("pb", q0.obj_map[o], q1.obj_map[o]) for o in x.objects},
        {m: ("pb", q0.mor_map[m], q1.mor_map[m]) for m in x.morphisms},
    )


def is_pullback_square(f, g, q0, q1):
    """Whether the commuting square with legs q0, q1 over the cospan (f, g)
    is a pullback, decided by invertibility of the canonical comparison."""
    pb = pullback(f, g)
    return mediate_pullback(pb, q0, q1).is_invertible()


def pullback_comparison(p1, p2):
    """Canonical isomorphism between two pullbacks of the same cospan.

    Each argument is either a PullbackResult or a ``(q0, q1)`` pair of legs
    of a commuting square verified here to satisfy the universal property.
    Returns the iso from the first apex to the second.
    """
    legs1 = (p1.proj0, p1.proj1) if isinstance(p1, PullbackResult) else p1
    legs2 = (p2.proj0, p2.proj1) if isinstance(p2, PullbackResult) else p2
    if (legs1[0].cod != legs2[0].cod) or (legs1[1].cod != legs2[1].cod):
        raise BoundaryMismatch("squares are not over the same cospan")
    pb = p1 if isinstance(p1, PullbackResult) else p2 if isinstance(p2, PullbackResult) else None
    if pb is None:
        raise NotAPullback("at least one side must carry its cospan")
    canonical = pullback(pb.f, pb.g)
    m1 = mediate_pullback(canonical, *legs1)
    m2 = mediate_pullback(canonical, *legs2)
    if not m1.is_invertible():
        raise NotAPullback("first square is not a pullback")
    if not m2.is_invertible():
        raise NotAPullback("second square is not a pullback")
    return compose_functors(invert_functor(m2), m1)


# ---------------------------------------------------------------------------
# comma objects


@dataclass(frozen=True)
class CommaResult:
    apex: FinCategory
    d0: FinFunctor            # apex -> A
    d1: FinFunctor            # apex -> B
    lam: NatTrans             # r . d0 => s . d1
    r: FinFunctor
    s: FinFunctor


def comma(r, s):
    """The comma category r/s for r: A -> D and s: B -> D.

    Objects are triples (a, b, sigma: r a -> s b); morphisms are pairs
    (xi, eta) making the evident square in D commute.
    """
    if r.cod != s.cod:
        raise CodomainMismatch("comma needs a common codomain")
    a_cat, b_cat, d_cat = r.dom, s.dom, r.cod
    objects = []
    for a in a_cat.objects:
        for b in b_cat.objects:
            for sig in d_cat.hom(r.obj_map[a], s.obj_map[b]):
                objects.append(("comma", a, b, sig))
    morphisms = {}
    for (_, a, b, sig) in objects:
        for (_, a2, b2, sig2) in objects:
            for xi in a_cat.hom(a, a2):
                for eta in b_cat.hom(b, b2):
                    if d_cat.compose(s.mor_map[eta], sig) == d_cat.compose(sig2, r.mor_map[xi]):
                        morphisms[("comma", xi, eta, sig, sig2)] = (
                            ("comma", a, b, sig), ("comma", a2, b2, sig2))
    guard_size(len(objects), len(morphisms), "comma apex")
    identity = {o: ("comma", a_cat.id_of(o[1]), b_cat.id_of(o[2]), o[3], o[3])
                for o in objects}
    table = {}
    for m2, (s2, t2) in morphisms.items():
        for m1, (s1, t1) in morphisms.items():
            if s2 == t1:
                table[(m2, m1)] = ("comma",
                                   a_cat.compose(m2[1], m1[1]),
                                   b_cat.compose(m2[2], m1[2]),
                                   m1[3], m2[4])
    apex = FinCategory(("comma", a_cat.label, b_cat.label), objects, morphisms,
                       identity, table)
    d0 = FinFunctor(apex, a_cat,
                    {o: o[1] for o in objects}, {m: m[1] for m in morphisms})
    d1 = FinFunctor(apex, b_cat,
                    {o: o[2] for o in objects}, {m: m[2] for m in morphisms})
    lam = NatTrans(compose_functors(r, d0), compose_functors(s, d1),
                   {o: o[3] for o in objects})
    return CommaResult(apex, d0, d1, lam, r, s)


def mediate_comma(cr, u0, u1, sigma):
    """The unique f: S -> apex with d0 f = u0, d1 f = u1, lambda . f = sigma."""
    if u0.dom != u1.dom:
        raise BoundaryMismatch("span legs need a common domain")
    if (sigma.src != compose_functors(cr.r, u0)
            or sigma.tgt != compose_functors(cr.s, u1)):
        raise BoundaryMismatch("sigma has the wrong boundary")
    x = u0.dom
    obj_map = {o: ("comma", u0.obj_map[o], u1.obj_map[o], sigma.at(o))
               for o in x.objects}
    mor_map = {m: ("comma", u0.mor_map[m], u1.mor_map[m],
                   sigma.at(x.src(m)), sigma.at(x.tgt(m)))
               for m in x.morphisms}
    return FinFunctor(x, cr.apex, obj_map, mor_map)


def extract_comma(cr, f):
    """Inverse direction of the comma bijection: recover (u0, u1, sigma)."""
    u0 = compose_functors(cr.d0, f)
    u1 = compose_functors(cr.d1, f)
    sigma = whisker_right(cr.lam, f)
    return u0, u1, sigma


def mediate_comma_2cell(cr, f, f2, xi, eta):
    """The unique phi: f => f2 with d0 . phi = xi and d1 . phi = eta.

    f and f2 are functors into the apex; xi: d0 f => d0 f2 and
    eta: d1 f => d1 f2 must satisfy the comma pasting condition
    s(eta) . (lambda f) = (lambda f2) . r(xi).
    """
    if f.cod != cr.apex or f2.cod != cr.apex:
        raise BoundaryMismatch("mediating functors must land in the apex")
    if xi.src != compose_functors(cr.d0, f) or xi.tgt != compose_functors(cr.d0, f2):
        raise BoundaryMismatch("xi has the wrong boundary")
    if eta.src != compose_functors(cr.d1, f) or eta.tgt != compose_functors(cr.d1, f2):
        raise BoundaryMismatch("eta has the wrong boundary")
    from .core import vcompose_nat
    lhs = vcompose_nat(whisker_left(cr.s, eta), whisker_right(cr.lam, f))
    rhs = vcompose_nat(whisker_right(cr.lam, f2), whisker_left(cr.r, xi))
    if lhs != rhs:
        raise PastingMismatch("the comma pasting equality fails")
    x = f.dom
    comps = {}
    for o in x.objects:
        src_obj, tgt_obj = f.obj_map[o], f2.obj_map[o]
        m = ("comma", xi.at(o), eta.at(o), src_obj[3], tgt_obj[3])
        if not cr.apex.has_morphism(m):
            raise PastingMismatch(
                "no mediating 2-cell component at %s" % show_name(o))
        comps[o] = m
    return NatTrans(f, f2, comps)


def phi(a_cat):
    """Phi A: the comma object of the identity opspan on A."""
    i = identity_functor(a_cat)
    return comma(i, i)


# ---------------------------------------------------------------------------
# spans


@dataclass(frozen=True)
class Span:
    left: FinFunctor   # S -> A
    right: FinFunctor  # S -> B

    def __post_init__(self):
        if self.left.dom != self.right.dom:
            raise BoundaryMismatch("span legs need a common apex")


@dataclass(frozen=True)
class OpSpan:
    left: FinFunctor   # A -> D
    right: FinFunctor  # B -> D

    def __post_init__(self):
        if self.left.cod != self.right.cod:
            raise BoundaryMismatch("opspan legs need a common codomain")


def identity_span(a_cat):
    i = identity_functor(a_cat)
    return Span(i, i)


def span_compose(s, t):
    """Composite of spans s: A -|-> B and t: B -|-> C by pullback."""
    if s.right.cod != t.left.cod:
        raise BoundaryMismatch("middle boundary of spans does not match")
    pb = pullback(s.right, t.left)
    return Span(compose_functors(s.left, pb.proj0),
                compose_functors(t.right, pb.proj1))


def comma_via_spans(r, s):
    """The span-composition presentation s* . PhiD . r of the comma object.

    Returns the span whose apex is canonically isomorphic to comma(r, s):
    pull Phi D back along r on the left and s on the right.
    """
    phid = phi(r.cod)
    left_leg = Span(phid.d0, phid.d1)
    graph_r = Span(identity_functor(r.dom), r)   # r as a span A -|-> D
    cograph_s = Span(s, identity_functor(s.dom))  # s* as a span D -|-> B
    return span_compose(span_compose(graph_r, left_leg), cograph_s)


def iso_search(c1, c2):
    """A functor isomorphism c1 -> c2, or None.

    Brute force over object bijections compatible with hom counts; only
    intended for small cross-check categories.
    """
    if (len(c1.objects) != len(c2.objects)
            or len(c1.morphisms) != len(c2.morphisms)):
        return None
    from itertools import permutations
    objs2 = list(c2.objects)
    for perm in permutations(objs2):
        obj_map = dict(zip(c1.objects, perm))
        ok = all(
            len(c1.hom(a, b)) == len(c2.hom(obj_map[a], obj_map[b]))
            for a in c1.objects for b in c1.objects)
        if not ok:
            continue
        mor_map = _extend_iso(c1, c2, obj_map)
        if mor_map is not None:
            try:
                return FinFunctor(c1, c2, obj_map, mor_map)
            except BoundaryMismatch:
                continue
    return None


def _extend_iso(c1, c2, obj_map):
    """Try to extend an object bijection to a functorial morphism bijection."""
    from itertools import permutations, product
    hom_pairs = []
    for a in c1.objects:
        for b in c1.objects:
            h1 = c1.hom(a, b)
            h2 = c2.hom(obj_map[a], obj_map[b])
            if len(h1) != len(h2):
                return None
            if h1:
                hom_pairs.append((h1, h2))
    for choice in product(*(permutations(h2) for _, h2 in hom_pairs)):
        mor_map = {}
        for (h1, _), pairing in zip(hom_pairs, choice):
            mor_map.update(zip(h1, pairing))
        if _is_functorial(c1, c2, obj_map, mor_map):
            return mor_map
    return None


def _is_functorial(c1, c2, obj_map, mor_map):
    for x in c1.objects:
        if mor_map.get(c1.id_of(x)) != c2.id_of(obj_map[x]):
            return False
    for g in c1.morphisms:
        for f in c1.morphisms:
            if c1.src(g) == c1.tgt(f):
                if mor_map[c1.compose(g, f)] != c2.compose(mor_map[g], mor_map[f]):
                    return False
    return True
