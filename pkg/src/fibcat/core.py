"""Finite categories, functors and natural transformations.

Everything here is a plain immutable value: a category is a finite set of
objects and morphisms together with a *total* composition table, so every
law (associativity, identities, functoriality, naturality) is checked
exhaustively at construction time.

Object and morphism identifiers are structural: either a string atom or a
tagged tuple such as ``("comma", a, b, s)``.  Constructed categories name
their elements canonically from the data that produced them, which is what
makes the strict monad equations later on hold as genuine equalities of
maps rather than up-to-isomorphism bookkeeping.
"""

from __future__ import annotations

import os


# ---------------------------------------------------------------------------
# errors


class FibcatError(Exception):
    """Base class for all engine errors."""


class SizeExceeded(FibcatError):
    pass


class CategoryInvalid(FibcatError):
    """A raw category description breaks a law.

    Carries ``violations``: a list of (kind, message) pairs where kind is
    one of ``MissingComposite``, ``NonAssociative``, ``IdentityLawBroken``,
    ``Arity``.
    """

    def __init__(self, name, violations):
        self.name = name
        self.violations = list(violations)
        lines = ", ".join("%s: %s" % v for v in self.violations[:5])
        more = "" if len(self.violations) <= 5 else " (+%d more)" % (len(self.violations) - 5)
        super().__init__("invalid category %r: %s%s" % (name, lines, more))


class DomainMismatch(FibcatError):
    pass


class CodomainMismatch(FibcatError):
    pass


class BoundaryMismatch(FibcatError):
    pass


class UnknownObject(FibcatError):
    pass


class SquareDoesNotCommute(FibcatError):
    pass


class NotAPullback(FibcatError):
    pass


class PastingMismatch(FibcatError):
    pass


class IncompatibleData(FibcatError):
    pass


class InvalidCleavage(FibcatError):
    pass


class NotProne(FibcatError):
    pass


class TheoremViolation(FibcatError):
    """A machine check contradicting a proved statement: an engine bug."""


# ---------------------------------------------------------------------------
# size guard

DEFAULT_MAX_OBJECTS = 64
DEFAULT_MAX_MORPHISMS = 512


def size_limits():
    """Current (max_objects, max_morphisms) guard.

    ``FIBCAT_SIZE_LIMIT`` overrides: either ``"O"`` (object limit, morphism
    limit scaled 8x) or ``"O:M"``.
    """
    raw = os.environ.get("FIBCAT_SIZE_LIMIT")
    if not raw:
        return DEFAULT_MAX_OBJECTS, DEFAULT_MAX_MORPHISMS
    if ":" in raw:
        o, m = raw.split(":", 1)
        return int(o), int(m)
    return int(raw), 8 * int(raw)


def guard_size(n_objects, n_morphisms, what="category"):
    max_o, max_m = size_limits()
    if n_objects > max_o or n_morphisms > max_m:
        raise SizeExceeded(
            "%s has %d objects / %d morphisms, over the guard %d/%d "
            "(set FIBCAT_SIZE_LIMIT to raise it)"
            % (what, n_objects, n_morphisms, max_o, max_m)
        )


# ---------------------------------------------------------------------------
# structural names


def name_key(n):
    """Deterministic total order key over structural identifiers."""
    if isinstance(n, tuple):
        return (1, tuple(name_key(x) for x in n))
    return (0, str(n))


def show_name(n):
    """Human-readable rendering of a structural identifier."""
    if isinstance(n, tuple):
        return "%s(%s)" % (n[0], ",".join(show_name(x) for x in n[1:]))
    return str(n)


# ---------------------------------------------------------------------------
# categories


class FinCategory:
    """A finite category with a total composition table.

    ``morphisms`` maps each morphism name to its (src, tgt) pair,
    ``identity`` maps each object to its identity morphism, and ``table``
    maps each composable pair ``(g, f)`` (with src g = tgt f) to ``g . f``.
    All laws are verified eagerly; instances are immutable afterwards.
    """

    __slots__ = ("label", "_objects", "_mor", "_identity", "_table",
                 "_obj_sorted", "_mor_sorted", "_key", "_hash")

    def __init__(self, label, objects, morphisms, identity, table):
        objects = frozenset(objects)
        morphisms = dict(morphisms)
        identity = dict(identity)
        table = dict(table)
        violations = _category_violations(objects, morphisms, identity, table)
        if violations:
            raise CategoryInvalid(label, violations)
        guard_size(len(objects), len(morphisms), "category %r" % (label,))
        self.label = label
        self._objects = objects
        self._mor = morphisms
        self._identity = identity
        self._table = table
        self._obj_sorted = tuple(sorted(objects, key=name_key))
        self._mor_sorted = tuple(sorted(morphisms, key=name_key))
        self._key = (
            self._obj_sorted,
            tuple((m, morphisms[m]) for m in self._mor_sorted),
            tuple(sorted(identity.items(), key=lambda kv: name_key(kv[0]))),
            tuple(sorted(table.items(), key=lambda kv: (name_key(kv[0][0]), name_key(kv[0][1])))),
        )
        self._hash = hash(self._key)

    # -- basic accessors ----------------------------------------------------

    @property
    def objects(self):
        return self._obj_sorted

    @property
    def morphisms(self):
        return self._mor_sorted

    def has_object(self, x):
        return x in self._objects

    def has_morphism(self, m):
        return m in self._mor

    def src(self, m):
        return self._mor[m][0]

    def tgt(self, m):
        return self._mor[m][1]

    def id_of(self, x):
        return self._identity[x]

    def is_identity(self, m):
        x = self._mor[m][0]
        return self._identity.get(x) == m

    def compose(self, g, f):
        """Composite g . f (g after f)."""
        try:
            return self._table[(g, f)]
        except KeyError:
            raise DomainMismatch(
                "cannot compose %s after %s in %r"
                % (show_name(g), show_name(f), self.label)
            ) from None

    def hom(self, a, b):
        return tuple(m for m in self._mor_sorted if self._mor[m] == (a, b))

    def inverse(self, m):
        """The two-sided inverse of m, or None."""
        a, b = self._mor[m]
        for n in self.hom(b, a):
            if (self._table[(n, m)] == self._identity[a]
                    and self._table[(m, n)] == self._identity[b]):
                return n
        return None

    def is_iso(self, m):
        return self.inverse(m) is not None

    # -- structural equality -------------------------------------------------

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FinCategory):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "FinCategory(%r, %d objects, %d morphisms)" % (
            self.label, len(self._objects), len(self._mor))


def _category_violations(objects, morphisms, identity, table):
    out = []
    for m, st in morphisms.items():
        if not (isinstance(st, tuple) and len(st) == 2):
            out.append(("Arity", "morphism %s needs a (src, tgt) pair" % show_name(m)))
            continue
        s, t = st
        if s not in objects or t not in objects:
            out.append(("Arity", "morphism %s has endpoints outside the object set" % show_name(m)))
    if out:
        return out
    for x in objects:
        i = identity.get(x)
        if i is None or i not in morphisms:
            out.append(("IdentityLawBroken", "object %s has no identity morphism" % show_name(x)))
        elif morphisms[i] != (x, x):
            out.append(("IdentityLawBroken", "identity of %s is not an endomorphism" % show_name(x)))
    if out:
        return out
    composable = set()
    for g, (gs, gt) in morphisms.items():
        for f, (fs, ft) in morphisms.items():
            if gs == ft:
                composable.add((g, f))
    for pair in table:
        if pair not in composable:
            out.append(("MissingComposite",
                        "table entry for non-composable pair (%s, %s)"
                        % (show_name(pair[0]), show_name(pair[1]))))
    for pair in composable:
        g, f = pair
        h = table.get(pair)
        if h is None:
            out.append(("MissingComposite",
                        "no composite for (%s, %s)" % (show_name(g), show_name(f))))
            continue
        if h not in morphisms or morphisms[h] != (morphisms[f][0], morphisms[g][1]):
            out.append(("Arity", "composite of (%s, %s) has wrong endpoints"
                        % (show_name(g), show_name(f))))
    if out:
        return out
    for m, (s, t) in morphisms.items():
        if table[(m, identity[s])] != m or table[(identity[t], m)] != m:
            out.append(("IdentityLawBroken", "identity laws fail at %s" % show_name(m)))
    for g, f in composable:
        for h, (hs, ht) in morphisms.items():
            if hs == morphisms[g][1]:
                if table[(table[(h, g)], f)] != table[(h, table[(g, f)])]:
                    out.append(("NonAssociative",
                                "(%s.%s).%s != %s.(%s.%s)"
                                % tuple(show_name(n) for n in (h, g, f, h, g, f))))
    return out


def validate_category(label, objects, morphisms, identity, table):
    """Validate a raw description; raises CategoryInvalid listing violations."""
    return FinCategory(label, objects, morphisms, identity, table)


def category_violations(objects, morphisms, identity, table):
    """Law violations of a raw description, without raising."""
    return _category_violations(frozenset(objects), dict(morphisms),
                                dict(identity), dict(table))


# ---------------------------------------------------------------------------
# functors


class FinFunctor:
    __slots__ = ("dom", "cod", "obj_map", "mor_map", "_hash")

    def __init__(self, dom, cod, obj_map, mor_map):
        obj_map = dict(obj_map)
        mor_map = dict(mor_map)
        for x in dom.objects:
            if x not in obj_map:
                raise BoundaryMismatch("functor misses object %s" % show_name(x))
            if not cod.has_object(obj_map[x]):
                raise BoundaryMismatch("image of %s is not an object of the codomain" % show_name(x))
        for m in dom.morphisms:
            fm = mor_map.get(m)
            if fm is None:
                raise BoundaryMismatch("functor misses morphism %s" % show_name(m))
            if not cod.has_morphism(fm):
                raise BoundaryMismatch("image of %s is not a morphism of the codomain" % show_name(m))
            if (cod.src(fm), cod.tgt(fm)) != (obj_map[dom.src(m)], obj_map[dom.tgt(m)]):
                raise BoundaryMismatch("functor breaks src/tgt at %s" % show_name(m))
        for x in dom.objects:
            if mor_map[dom.id_of(x)] != cod.id_of(obj_map[x]):
                raise BoundaryMismatch("functor breaks identity at %s" % show_name(x))
        for g in dom.morphisms:
            for f in dom.morphisms:
                if dom.src(g) == dom.tgt(f):
                    if mor_map[dom.compose(g, f)] != cod.compose(mor_map[g], mor_map[f]):
                        raise BoundaryMismatch(
                            "functor breaks composition at (%s, %s)"
                            % (show_name(g), show_name(f)))
        self.dom = dom
        self.cod = cod
        self.obj_map = obj_map
        self.mor_map = mor_map
        self._hash = None

    def on_obj(self, x):
        return self.obj_map[x]

    def on_mor(self, m):
        return self.mor_map[m]

    def is_invertible(self):
        return (len(self.dom.objects) == len(self.cod.objects)
                and len(set(self.obj_map.values())) == len(self.cod.objects)
                and len(self.dom.morphisms) == len(self.cod.morphisms)
                and len(set(self.mor_map.values())) == len(self.cod.morphisms))

    def _key(self):
        return (self.dom, self.cod,
                tuple(sorted(self.obj_map.items(), key=lambda kv: name_key(kv[0]))),
                tuple(sorted(self.mor_map.items(), key=lambda kv: name_key(kv[0]))))

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FinFunctor):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def __repr__(self):
        return "FinFunctor(%r -> %r)" % (self.dom.label, self.cod.label)


def identity_functor(c):
    return FinFunctor(c, c, {x: x for x in c.objects}, {m: m for m in c.morphisms})


def compose_functors(g, f):
    """g . f, defined when cod(f) = dom(g)."""
    if f.cod != g.dom:
        raise DomainMismatch("functor composition boundary mismatch")
    return FinFunctor(
        f.dom, g.cod,
        {x: g.obj_map[f.obj_map[x]] for x in f.dom.objects},
        {m: g.mor_map[f.mor_map[m]] for m in f.dom.morphisms},
    )


def invert_functor(f):
    if not f.is_invertible():
        raise BoundaryMismatch("functor is not invertible")
    return FinFunctor(
        f.cod, f.dom,
        {v: k for k, v in f.obj_map.items()},
        {v: k for k, v in f.mor_map.items()},
    )


def equal_functor(f, g):
    if f.dom != g.dom or f.cod != g.cod:
        raise BoundaryMismatch("functors do not share boundary categories")
    return f == g


def constant_functor(dom, cod, x):
    """The functor collapsing dom onto the object x of cod."""
    if not cod.has_object(x):
        raise UnknownObject(show_name(x))
    return FinFunctor(dom, cod,
                      {a: x for a in dom.objects},
                      {m: cod.id_of(x) for m in dom.morphisms})


# ---------------------------------------------------------------------------
# natural transformations


class NatTrans:
    __slots__ = ("src", "tgt", "components", "_hash")

    def __init__(self, src, tgt, components):
        if src.dom != tgt.dom or src.cod != tgt.cod:
            raise BoundaryMismatch("natural transformation needs parallel functors")
        components = dict(components)
        c, d = src.dom, src.cod
        for x in c.objects:
            m = components.get(x)
            if m is None or not d.has_morphism(m):
                raise BoundaryMismatch("missing component at %s" % show_name(x))
            if (d.src(m), d.tgt(m)) != (src.obj_map[x], tgt.obj_map[x]):
                raise BoundaryMismatch("component at %s has wrong endpoints" % show_name(x))
        for m in c.morphisms:
            x, y = c.src(m), c.tgt(m)
            if d.compose(tgt.mor_map[m], components[x]) != d.compose(components[y], src.mor_map[m]):
                raise BoundaryMismatch("naturality fails at %s" % show_name(m))
        self.src = src
        self.tgt = tgt
        self.components = components
        self._hash = None

    def at(self, x):
        return self.components[x]

    def is_invertible(self):
        return all(self.src.cod.is_iso(m) for m in self.components.values())

    def is_identity(self):
        return self.src == self.tgt and all(
            self.src.cod.is_identity(m) for m in self.components.values())

    def _key(self):
        return (self.src, self.tgt,
                tuple(sorted(self.components.items(), key=lambda kv: name_key(kv[0]))))

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, NatTrans):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def __repr__(self):
        return "NatTrans(%r => %r)" % (self.src, self.tgt)


def identity_nat(f):
    return NatTrans(f, f, {x: f.cod.id_of(f.obj_map[x]) for x in f.dom.objects})


def vcompose_nat(beta, alpha):
    """beta . alpha vertically: alpha: F => G, beta: G => H gives F => H."""
    if alpha.tgt != beta.src:
        raise BoundaryMismatch("vertical composition boundary mismatch")
    d = alpha.src.cod
    return NatTrans(alpha.src, beta.tgt,
                    {x: d.compose(beta.at(x), alpha.at(x))
                     for x in alpha.src.dom.objects})


def whisker_left(f, alpha):
    """f . alpha: for alpha: G => H (functors X -> Y) and f: Y -> Z."""
    if alpha.src.cod != f.dom:
        raise BoundaryMismatch("left whiskering boundary mismatch")
    return NatTrans(compose_functors(f, alpha.src), compose_functors(f, alpha.tgt),
                    {x: f.mor_map[alpha.at(x)] for x in alpha.src.dom.objects})


def whisker_right(alpha, f):
    """alpha . f: for alpha: G => H (functors Y -> Z) and f: X -> Y."""
    if f.cod != alpha.src.dom:
        raise BoundaryMismatch("right whiskering boundary mismatch")
    return NatTrans(compose_functors(alpha.src, f), compose_functors(alpha.tgt, f),
                    {x: alpha.at(f.obj_map[x]) for x in f.dom.objects})


def hcompose_nat(beta, alpha):
    """Horizontal composite beta * alpha, for alpha: F=>G (X->Y), beta: H=>K (Y->Z)."""
    return vcompose_nat(whisker_right(beta, alpha.tgt), whisker_left(beta.src, alpha))


def equal_nat(a, b):
    if a.src.dom != b.src.dom or a.src.cod != b.src.cod:
        raise BoundaryMismatch("transformations do not share boundary categories")
    return a == b


def invert_nat(alpha):
    d = alpha.src.cod
    comps = {}
    for x, m in alpha.components.items():
        inv = d.inverse(m)
        if inv is None:
            raise BoundaryMismatch("component at %s is not invertible" % show_name(x))
        comps[x] = inv
    return NatTrans(alpha.tgt, alpha.src, comps)


# ---------------------------------------------------------------------------
# op-duality


def op_dual(c):
    """The opposite category; names are kept, so the dual is involutive."""
    label = c.label[1] if isinstance(c.label, tuple) and c.label[0] == "op" else ("op", c.label)
    return FinCategory(
        label,
        c.objects,
        {m: (c.tgt(m), c.src(m)) for m in c.morphisms},
        {x: c.id_of(x) for x in c.objects},
        {(g, f): c.compose(f, g)
         for g in c.morphisms for f in c.morphisms if c.src(f) == c.tgt(g)},
    )


def op_functor(f):
    return FinFunctor(op_dual(f.dom), op_dual(f.cod), f.obj_map, f.mor_map)


def op_nat(alpha):
    """Dualize a 2-cell; source and target swap."""
    return NatTrans(op_functor(alpha.tgt), op_functor(alpha.src), alpha.components)


# ---------------------------------------------------------------------------
# small builders


def terminal_category():
    return FinCategory("1", ["*"], {("id", "*"): ("*", "*")},
                       {"*": ("id", "*")}, {((("id", "*")), ("id", "*")): ("id", "*")})


def pick_object(c, x):
    """The functor 1 -> c selecting the object x."""
    return constant_functor(terminal_category(), c, x)


def chain_category(label, n):
    """The poset 0 <= 1 <= ... <= n-1 as a category (n objects)."""
    objects = list(range(n))
    morphisms = {}
    for i in objects:
        for j in objects:
            if i <= j:
                morphisms[("le", i, j)] = (i, j)
    identity = {i: ("le", i, i) for i in objects}
    table = {}
    for g, (gs, gt) in morphisms.items():
        for f, (fs, ft) in morphisms.items():
            if gs == ft:
                table[(g, f)] = ("le", fs, gt)
    return FinCategory(label, objects, morphisms, identity, table)


def discrete_category(label, objects):
    objects = list(objects)
    morphisms = {("id", x): (x, x) for x in objects}
    identity = {x: ("id", x) for x in objects}
    table = {(("id", x), ("id", x)): ("id", x) for x in objects}
    return FinCategory(label, objects, morphisms, identity, table)


def walking_iso_category(label="iso"):
    """Two objects x, y with mutually inverse morphisms between them."""
    objects = ["x", "y"]
    morphisms = {
        ("id", "x"): ("x", "x"), ("id", "y"): ("y", "y"),
        "u": ("x", "y"), "v": ("y", "x"),
    }
    identity = {"x": ("id", "x"), "y": ("id", "y")}
    # exactly one morphism between any ordered pair of objects, so the
    # composite is determined by its endpoints
    table = {}
    for g, (gs, gt) in morphisms.items():
        for f, (fs, ft) in morphisms.items():
            if gs != ft:
                continue
            # unique morphism fs -> gt in this category
            if fs == gt:
                table[(g, f)] = identity[fs]
            else:
                table[(g, f)] = "u" if (fs, gt) == ("x", "y") else "v"
    return FinCategory(label, objects, morphisms, identity, table)
