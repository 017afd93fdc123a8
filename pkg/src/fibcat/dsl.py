"""The .cat description format: a small line-oriented language for finite
categories, functors, natural transformations, bundles, squares and check
suites.

Composition tables are explicit unless a category carries the ``poset``
flag, in which case composites are inferred only when unique; silent
guessing is never done.  Parsing is deterministic and the pretty-printer
round-trips (parse . print = identity on the AST, spans excluded).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import FinCategory, FinFunctor, NatTrans, FibcatError
from .arrowcat import Bundle, BundleSquare


class ParseError(FibcatError):
    def __init__(self, message, span=None):
        self.span = span
        if span is not None:
            message = "%d:%d: %s" % (span[0], span[1], message)
        super().__init__(message)


class UnknownReference(ParseError):
    pass


class DuplicateName(ParseError):
    pass


# ---------------------------------------------------------------------------
# AST


@dataclass
class CategoryDecl:
    name: str
    poset: bool
    objects: list
    arrows: list        # (name, src, tgt)
    composes: list      # (g, f, h) meaning g . f = h
    span: tuple = field(default=None, compare=False)


@dataclass
class FunctorDecl:
    name: str
    dom: str
    cod: str
    entries: list       # (lhs, rhs) where each side is a str or ("id", obj)
    span: tuple = field(default=None, compare=False)


@dataclass
class NatDecl:
    name: str
    src: str
    tgt: str
    entries: list       # (obj, morphism ref)
    span: tuple = field(default=None, compare=False)


@dataclass
class BundleDecl:
    name: str
    functor: str
    span: tuple = field(default=None, compare=False)


@dataclass
class SquareDecl:
    name: str
    src: str
    tgt: str
    up: str
    down: str
    span: tuple = field(default=None, compare=False)


@dataclass
class SuiteDecl:
    name: str
    items: list         # lists of words, e.g. ["check", "opfibration", "J"]
    span: tuple = field(default=None, compare=False)


@dataclass
class Document:
    declarations: list


# ---------------------------------------------------------------------------
# tokenizer


_SYMBOLS = ("|->", "->", "=>", "{", "}", ";", ":", "=", "(", ")", ".")


def _tokenize(text):
    tokens = []
    line = 1
    col = 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        matched = None
        for sym in _SYMBOLS:
            if text.startswith(sym, i):
                matched = sym
                break
        if matched:
            tokens.append(("sym", matched, (line, col)))
            i += len(matched)
            col += len(matched)
            continue
        j = i
        while j < n and (text[j].isalnum() or text[j] in "_*'-"):
            # a '-' only belongs to the word if it is not starting '->'
            if text[j] == "-" and text.startswith("->", j):
                break
            j += 1
        if j == i:
            raise ParseError("unexpected character %r" % ch, (line, col))
        tokens.append(("word", text[i:j], (line, col)))
        col += j - i
        i = j
    tokens.append(("eof", "", (line, col)))
    return tokens


class _Cursor:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        if tok[0] != "eof":
            self.pos += 1
        return tok

    def expect(self, kind, value=None):
        tok = self.next()
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value if value is not None else kind
            raise ParseError("expected %r, found %r" % (want, tok[1]), tok[2])
        return tok

    def word(self):
        return self.expect("word")[1]

    def at_sym(self, value):
        tok = self.peek()
        return tok[0] == "sym" and tok[1] == value

    def eat_sym(self, value):
        if self.at_sym(value):
            self.next()
            return True
        return False


# ---------------------------------------------------------------------------
# parser


def parse(text):
    cur = _Cursor(_tokenize(text))
    decls = []
    seen = {}
    while cur.peek()[0] != "eof":
        tok = cur.next()
        if tok[0] != "word":
            raise ParseError("expected a declaration keyword", tok[2])
        kw = tok[1]
        if kw == "category":
            decl = _parse_category(cur, tok[2])
        elif kw == "functor":
            decl = _parse_functor(cur, tok[2])
        elif kw == "nat":
            decl = _parse_nat(cur, tok[2])
        elif kw == "bundle":
            decl = _parse_bundle(cur, tok[2])
        elif kw == "square":
            decl = _parse_square(cur, tok[2])
        elif kw == "suite":
            decl = _parse_suite(cur, tok[2])
        else:
            raise ParseError("unknown declaration %r" % kw, tok[2])
        key = (type(decl).__name__, decl.name)
        if key in seen:
            raise DuplicateName("duplicate %s %r" % (key[0], decl.name), decl.span)
        seen[key] = decl
        decls.append(decl)
    return Document(decls)


def _morphism_ref(cur):
    """An arrow name, or ``id(obj)`` for an identity."""
    name = cur.word()
    if name == "id" and cur.eat_sym("("):
        obj = cur.word()
        cur.expect("sym", ")")
        return ("id", obj)
    return name


def _parse_category(cur, span):
    name = cur.word()
    cur.expect("sym", "{")
    poset = False
    objects = []
    arrows = []
    composes = []
    while not cur.eat_sym("}"):
        head = cur.word()
        if head == "poset":
            poset = True
        elif head == "objects":
            while cur.peek()[0] == "word":
                objects.append(cur.word())
        elif head == "arrow":
            a = cur.word()
            cur.expect("sym", ":")
            src = cur.word()
            cur.expect("sym", "->")
            tgt = cur.word()
            arrows.append((a, src, tgt))
        elif head == "compose":
            g = _morphism_ref(cur)
            cur.expect("sym", ".")
            f = _morphism_ref(cur)
            cur.expect("sym", "=")
            h = _morphism_ref(cur)
            composes.append((g, f, h))
        else:
            raise ParseError("unknown category item %r" % head, cur.peek()[2])
        cur.eat_sym(";")
    return CategoryDecl(name, poset, objects, arrows, composes, span)


def _parse_functor(cur, span):
    name = cur.word()
    cur.expect("sym", ":")
    dom = cur.word()
    cur.expect("sym", "->")
    cod = cur.word()
    cur.expect("sym", "{")
    entries = []
    while not cur.eat_sym("}"):
        lhs = _morphism_ref(cur)
        cur.expect("sym", "|->")
        rhs = _morphism_ref(cur)
        entries.append((lhs, rhs))
        cur.eat_sym(";")
    return FunctorDecl(name, dom, cod, entries, span)


def _parse_nat(cur, span):
    name = cur.word()
    cur.expect("sym", ":")
    src = cur.word()
    cur.expect("sym", "=>")
    tgt = cur.word()
    cur.expect("sym", "{")
    entries = []
    while not cur.eat_sym("}"):
        cur.expect("word", "at")
        obj = cur.word()
        cur.expect("sym", "|->")
        mor = _morphism_ref(cur)
        entries.append((obj, mor))
        cur.eat_sym(";")
    return NatDecl(name, src, tgt, entries, span)


def _parse_bundle(cur, span):
    name = cur.word()
    cur.expect("sym", "=")
    functor = cur.word()
    cur.eat_sym(";")
    return BundleDecl(name, functor, span)


def _parse_square(cur, span):
    name = cur.word()
    cur.expect("sym", ":")
    src = cur.word()
    cur.expect("sym", "->")
    tgt = cur.word()
    cur.expect("sym", "{")
    up = down = None
    while not cur.eat_sym("}"):
        head = cur.word()
        cur.expect("sym", "=")
        value = cur.word()
        if head == "up":
            up = value
        elif head == "down":
            down = value
        else:
            raise ParseError("unknown square item %r" % head, cur.peek()[2])
        cur.eat_sym(";")
    if up is None or down is None:
        raise ParseError("square %r needs both up and down" % name, span)
    return SquareDecl(name, src, tgt, up, down, span)


def _parse_suite(cur, span):
    name = cur.word()
    cur.expect("sym", "{")
    items = []
    while not cur.eat_sym("}"):
        words = []
        while cur.peek()[0] == "word":
            w = cur.word()
            # functor specs like fiber_power:2 re-join around the colon
            while cur.at_sym(":") and cur.tokens[cur.pos + 1][0] == "word":
                cur.next()
                w = "%s:%s" % (w, cur.word())
            words.append(w)
        if not words:
            raise ParseError("empty suite item", cur.peek()[2])
        cur.expect("sym", ";")
        items.append(words)
    return SuiteDecl(name, items, span)


# ---------------------------------------------------------------------------
# pretty-printer


def _show_mor(ref):
    if isinstance(ref, tuple):
        return "id(%s)" % ref[1]
    return ref


def print_document(doc):
    out = []
    for d in doc.declarations:
        if isinstance(d, CategoryDecl):
            out.append("category %s {" % d.name)
            if d.poset:
                out.append("  poset;")
            if d.objects:
                out.append("  objects %s;" % " ".join(d.objects))
            for (a, s, t) in d.arrows:
                out.append("  arrow %s: %s -> %s;" % (a, s, t))
            for (g, f, h) in d.composes:
                out.append("  compose %s . %s = %s;"
                           % (_show_mor(g), _show_mor(f), _show_mor(h)))
            out.append("}")
        elif isinstance(d, FunctorDecl):
            out.append("functor %s: %s -> %s {" % (d.name, d.dom, d.cod))
            for (lhs, rhs) in d.entries:
                out.append("  %s |-> %s;" % (_show_mor(lhs), _show_mor(rhs)))
            out.append("}")
        elif isinstance(d, NatDecl):
            out.append("nat %s: %s => %s {" % (d.name, d.src, d.tgt))
            for (obj, mor) in d.entries:
                out.append("  at %s |-> %s;" % (obj, _show_mor(mor)))
            out.append("}")
        elif isinstance(d, BundleDecl):
            out.append("bundle %s = %s;" % (d.name, d.functor))
        elif isinstance(d, SquareDecl):
            out.append("square %s: %s -> %s {" % (d.name, d.src, d.tgt))
            out.append("  up = %s;" % d.up)
            out.append("  down = %s;" % d.down)
            out.append("}")
        elif isinstance(d, SuiteDecl):
            out.append("suite %s {" % d.name)
            for words in d.items:
                out.append("  %s;" % " ".join(words))
            out.append("}")
        else:
            raise TypeError("unknown declaration %r" % (d,))
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# elaboration into actual structures


@dataclass
class Context:
    categories: dict
    functors: dict
    nats: dict
    bundles: dict
    squares: dict
    suites: dict


def elaborate(doc):
    """Build the real categories, functors, etc. out of a parsed document."""
    ctx = Context({}, {}, {}, {}, {}, {})
    for d in doc.declarations:
        if isinstance(d, CategoryDecl):
            ctx.categories[d.name] = _build_category(d)
        elif isinstance(d, FunctorDecl):
            ctx.functors[d.name] = _build_functor(d, ctx)
        elif isinstance(d, NatDecl):
            ctx.nats[d.name] = _build_nat(d, ctx)
        elif isinstance(d, BundleDecl):
            f = _lookup(ctx.functors, d.functor, "functor", d.span)
            ctx.bundles[d.name] = Bundle(f.dom, f.cod, f)
        elif isinstance(d, SquareDecl):
            src = _lookup(ctx.bundles, d.src, "bundle", d.span)
            tgt = _lookup(ctx.bundles, d.tgt, "bundle", d.span)
            up = _lookup(ctx.functors, d.up, "functor", d.span)
            down = _lookup(ctx.functors, d.down, "functor", d.span)
            ctx.squares[d.name] = BundleSquare(src, tgt, up, down)
        elif isinstance(d, SuiteDecl):
            ctx.suites[d.name] = d.items
    return ctx


def _lookup(table, name, kind, span):
    if name not in table:
        raise UnknownReference("unknown %s %r" % (kind, name), span)
    return table[name]


def _resolve_mor(cat_decl, ref, morphisms, span):
    if isinstance(ref, tuple):      # ("id", obj)
        if ref[1] not in cat_decl.objects:
            raise UnknownReference("unknown object %r" % ref[1], span)
        return ref
    if ref not in morphisms:
        raise UnknownReference("unknown arrow %r" % ref, span)
    return ref


def _build_category(d):
    objects = list(d.objects)
    if len(set(objects)) != len(objects):
        raise DuplicateName("repeated object in category %r" % d.name, d.span)
    morphisms = {("id", o): (o, o) for o in objects}
    for (a, s, t) in d.arrows:
        if a in morphisms:
            raise DuplicateName("repeated arrow %r" % a, d.span)
        if s not in objects or t not in objects:
            raise UnknownReference("arrow %r uses an unknown object" % a, d.span)
        morphisms[a] = (s, t)
    if d.poset:
        pairs = sorted(morphisms.values())
        if len(set(pairs)) != len(pairs):
            raise ParseError(
                "category %r: parallel arrows contradict the poset flag"
                % d.name, d.span)
    identity = {o: ("id", o) for o in objects}

    def hom(x, y):
        return [m for m, (s, t) in morphisms.items() if s == x and t == y]

    table = {}
    for (g, f, h) in d.composes:
        g = _resolve_mor(d, g, morphisms, d.span)
        f = _resolve_mor(d, f, morphisms, d.span)
        h = _resolve_mor(d, h, morphisms, d.span)
        table[(g, f)] = h
    for g, (gs, gt) in morphisms.items():
        for f, (fs, ft) in morphisms.items():
            if ft != gs or (g, f) in table:
                continue
            if f == ("id", fs):
                table[(g, f)] = g
            elif g == ("id", gs):
                table[(g, f)] = f
            elif d.poset:
                cands = hom(fs, gt)
                if len(cands) != 1:
                    raise ParseError(
                        "category %r: composite %s . %s is not determined "
                        "by the poset flag" % (d.name, _show_mor(g), _show_mor(f)),
                        d.span)
                table[(g, f)] = cands[0]
            else:
                raise ParseError(
                    "category %r: missing composite %s . %s (explicit "
                    "compose required without poset)"
                    % (d.name, _show_mor(g), _show_mor(f)), d.span)
    return FinCategory(d.name, objects, morphisms, identity, table)


def _build_functor(d, ctx):
    dom = _lookup(ctx.categories, d.dom, "category", d.span)
    cod = _lookup(ctx.categories, d.cod, "category", d.span)
    obj_map = {}
    mor_map = {}
    for (lhs, rhs) in d.entries:
        if not isinstance(lhs, tuple) and dom.has_object(lhs):
            if isinstance(rhs, tuple) or not cod.has_object(rhs):
                raise UnknownReference(
                    "object %r must map to an object" % lhs, d.span)
            obj_map[lhs] = rhs
        elif dom.has_morphism(lhs):
            if not cod.has_morphism(rhs):
                raise UnknownReference("unknown arrow %r" % (rhs,), d.span)
            mor_map[lhs] = rhs
        else:
            raise UnknownReference("unknown name %s" % _show_mor(lhs), d.span)
    for o in dom.objects:
        if o not in obj_map:
            raise ParseError(
                "functor %r: object %r is not mapped" % (d.name, o), d.span)
    for m in dom.morphisms:
        if m in mor_map:
            continue
        src_i = obj_map[dom.src(m)]
        tgt_i = obj_map[dom.tgt(m)]
        cands = cod.hom(src_i, tgt_i)
        if dom.is_identity(m):
            mor_map[m] = cod.id_of(src_i)
        elif len(cands) == 1:
            mor_map[m] = cands[0]
        else:
            raise ParseError(
                "functor %r: image of arrow %s is ambiguous, map it "
                "explicitly" % (d.name, _show_mor(m)), d.span)
    return FinFunctor(dom, cod, obj_map, mor_map)


def _build_nat(d, ctx):
    f = _lookup(ctx.functors, d.src, "functor", d.span)
    g = _lookup(ctx.functors, d.tgt, "functor", d.span)
    comps = {}
    for (obj, mor) in d.entries:
        if not f.dom.has_object(obj):
            raise UnknownReference("unknown object %r" % obj, d.span)
        if not f.cod.has_morphism(mor):
            raise UnknownReference("unknown arrow %s" % _show_mor(mor), d.span)
        comps[obj] = mor
    for o in f.dom.objects:
        if o in comps:
            continue
        cands = f.cod.hom(f.obj_map[o], g.obj_map[o])
        if len(cands) != 1:
            raise ParseError(
                "nat %r: component at %r is ambiguous" % (d.name, o), d.span)
        comps[o] = cands[0]
    return NatTrans(f, g, comps)


def parse_file(path):
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())
