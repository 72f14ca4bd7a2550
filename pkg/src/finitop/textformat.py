"""Line-oriented text format for spaces, maps, configurations and algebras.

::

    # comment
    space V3
    points p m z
    order p<m p<z

    map f : V3 -> discrete2
    send p->a m->a z->b

    map g : cofinite -> discrete2
    send 0->a 1->a
    default b

    config C
    x1 X1
    x2 point
    y Y4
    phi incl
    psi ret

    algebra A blocks 2 3
    algebra B blocks c1:2 c2:2

Names match ``[^\\s<>:]+`` and may not contain ``->``. A space written
``S*T`` denotes the product of ``S`` and ``T``; its points are ``(s,t)``.
Order chains ``a<b<c`` are allowed and the relation is closed transitively.
References may point forward. Built-in names (``cofinite``, ``point``,
``sierpinski``, ``chain2``, ``chain3``, ``discrete2``, ``V3``, ``empty`` and
the configuration ``CFG0``) resolve unless a declaration shadows them.
"""

import re
from dataclasses import dataclass, field

from .cofinite import COFINITE, COFULL, CofiniteMap, CofiniteSpace, SymbolicSet
from .corpus import named_spaces
from .cstar import BlockAlgebra, BlockIdeal
from .errors import InvalidInput, ParseError, UnknownReference
from .poset import FinitePoset, SpaceMap, product
from .retraction import RetractionConfig, cfg0

NAME_RE = re.compile(r"[^\s<>:]+")
CONFIG_KEYS = ("x1", "x2", "y", "phi", "psi")
_MAP_HEAD = re.compile(r"map (\S+?) ?: ?(\S+?) ?-> ?(\S+)")


@dataclass
class _Tok:
    text: str
    line: int
    col: int


@dataclass
class _Stanza:
    kind: str
    name: _Tok
    head: list
    body: list = field(default_factory=list)


def _tokens(line, lineno):
    return [_Tok(m.group(), lineno, m.start() + 1) for m in re.finditer(r"\S+", line)]


class Workspace:
    """Named spaces, maps, configurations and algebras from parsed text."""

    def __init__(self):
        self.spaces = {}
        self.maps = {}
        self.configs = {}
        self.algebras = {}
        self._builtin_spaces = None

    def _builtins(self):
        if self._builtin_spaces is None:
            spaces = dict(named_spaces())
            c0 = cfg0()
            spaces.setdefault(c0.x1.name, c0.x1)
            spaces.setdefault(c0.y.name, c0.y)
            self._builtin_spaces = spaces
        return self._builtin_spaces

    def space(self, name):
        """Resolve a space name, a product ``S*T`` or ``cofinite``. Raises KeyError."""
        if name in self.spaces:
            return self.spaces[name]
        if name == "cofinite":
            return COFINITE
        if name in self._builtins():
            return self._builtins()[name]
        if "*" in name:
            for i, ch in enumerate(name):
                if ch != "*":
                    continue
                left, right = name[:i], name[i + 1:]
                try:
                    a, b = self.space(left), self.space(right)
                except KeyError:
                    continue
                if isinstance(a, CofiniteSpace) or isinstance(b, CofiniteSpace):
                    raise KeyError(name)
                return product(a, b, name=name)
        raise KeyError(name)

    def map(self, name):
        if name in self.maps:
            return self.maps[name]
        c0 = cfg0()
        builtin = {c0.phi.name: c0.phi, c0.psi.name: c0.psi}
        return builtin[name]

    def config(self, name):
        if name in self.configs:
            return self.configs[name]
        if name == "CFG0":
            return cfg0()
        raise KeyError(name)

    def algebra(self, name):
        """Resolve an algebra name or a tensor ``A*B``. Raises KeyError."""
        if name in self.algebras:
            return self.algebras[name]
        for i, ch in enumerate(name):
            if ch != "*":
                continue
            try:
                a, b = self.algebra(name[:i]), self.algebra(name[i + 1:])
            except KeyError:
                continue
            return a.tensor(b, name=name)
        raise KeyError(name)


class _Parser:
    def __init__(self, text, source, workspace):
        self.text = text
        self.source = source
        self.ws = workspace

    def error(self, msg, tok=None, cls=ParseError):
        if tok is None:
            return cls(msg, source=self.source)
        return cls(msg, tok.line, tok.col, self.source)

    def name(self, tok):
        if not NAME_RE.fullmatch(tok.text) or "->" in tok.text:
            raise self.error(f"invalid name {tok.text!r}", tok)
        return tok.text

    def stanzas(self):
        out = []
        current = None
        for lineno, raw in enumerate(self.text.splitlines(), start=1):
            line = raw.split("#", 1)[0]
            toks = _tokens(line, lineno)
            if not toks:
                continue
            word = toks[0].text
            if word in ("space", "map", "config", "algebra"):
                if len(toks) < 2:
                    raise self.error(f"'{word}' needs a name", toks[0])
                name = toks[1]
                if word == "map":
                    m = _MAP_HEAD.fullmatch(" ".join(t.text for t in toks))
                    if m:
                        name = _Tok(m.group(1), name.line, name.col)
                current = _Stanza(word, name, toks)
                out.append(current)
                if word == "algebra":
                    current = None
                continue
            if current is None:
                raise self.error(f"unexpected {word!r} outside a declaration", toks[0])
            current.body.append(toks)
        return out

    def run(self):
        stanzas = self.stanzas()
        seen = {}
        for st in stanzas:
            kind = st.kind
            name = self.name(st.name)
            if (kind, name) in seen:
                raise self.error(f"duplicate {kind} {name!r}", st.name)
            seen[(kind, name)] = st
        for st in stanzas:
            if st.kind == "space":
                self.ws.spaces[st.name.text] = self.build_space(st)
            elif st.kind == "algebra":
                self.ws.algebras[st.name.text] = self.build_algebra(st)
        for st in stanzas:
            if st.kind == "map":
                self.ws.maps[st.name.text] = self.build_map(st)
        for st in stanzas:
            if st.kind == "config":
                self.ws.configs[st.name.text] = self.build_config(st)
        return self.ws

    # stanza builders

    def build_space(self, st):
        if len(st.head) != 2:
            raise self.error("expected 'space NAME'", st.head[2])
        points, point_toks, pairs = [], {}, []
        order_toks = []
        for toks in st.body:
            word = toks[0].text
            if word == "points":
                for t in toks[1:]:
                    p = self.name(t)
                    if p in point_toks:
                        raise self.error(f"duplicate point {p!r}", t)
                    point_toks[p] = t
                    points.append(p)
            elif word == "order":
                order_toks.extend(toks[1:])
            else:
                raise self.error(f"unexpected {word!r} in space {st.name.text}", toks[0])
        for t in order_toks:
            parts = t.text.split("<")
            if len(parts) < 2 or any(not p for p in parts):
                raise self.error(f"expected a<b, got {t.text!r}", t)
            for p in parts:
                if p not in point_toks:
                    raise self.error(f"unknown point {p!r}", t, UnknownReference)
            pairs.extend(zip(parts, parts[1:]))
        try:
            return FinitePoset.from_relations(points, pairs, name=st.name.text)
        except InvalidInput as exc:
            raise self.error(str(exc), order_toks[0] if order_toks else st.name) from None

    def build_algebra(self, st):
        toks = st.head
        if len(toks) < 4 or toks[2].text != "blocks":
            raise self.error("expected 'algebra NAME blocks SIZE...'", toks[0])
        blocks = []
        for i, t in enumerate(toks[3:]):
            label, _, size = t.text.rpartition(":")
            label = label or f"b{i + 1}"
            if not size.isdigit():
                raise self.error(f"block size must be a positive integer, got {t.text!r}", t)
            blocks.append((label, int(size)))
        try:
            return BlockAlgebra(tuple(blocks), name=st.name.text)
        except InvalidInput as exc:
            raise self.error(str(exc), st.name) from None

    def resolve_space(self, tok):
        try:
            return self.ws.space(tok.text)
        except KeyError:
            raise self.error(f"unknown space {tok.text!r}", tok, UnknownReference) from None

    def build_map(self, st):
        toks = st.head
        m = _MAP_HEAD.fullmatch(" ".join(t.text for t in toks))
        if not m:
            raise self.error("expected 'map NAME : SRC -> DST'", toks[0])
        first = toks[0]
        src_tok = _Tok(m.group(2), first.line, first.col)
        dst_tok = _Tok(m.group(3), first.line, first.col)
        src, dst = self.resolve_space(src_tok), self.resolve_space(dst_tok)
        if isinstance(dst, CofiniteSpace):
            raise self.error("maps into the cofinite space are not supported", dst_tok)
        table, default = {}, None
        for line in st.body:
            word = line[0].text
            if word == "send":
                for t in line[1:]:
                    a, sep, b = t.text.partition("->")
                    if not sep or not a or not b:
                        raise self.error(f"expected a->x, got {t.text!r}", t)
                    if b not in dst.index:
                        raise self.error(f"unknown point {b!r} of {dst_tok.text}", t, UnknownReference)
                    if isinstance(src, CofiniteSpace):
                        if not a.isdigit():
                            raise self.error(f"points of cofinite are naturals, got {a!r}", t)
                        a = int(a)
                    elif a not in src.index:
                        raise self.error(f"unknown point {a!r} of {src_tok.text}", t, UnknownReference)
                    if a in table:
                        raise self.error(f"point {a!r} sent twice", t)
                    table[a] = b
            elif word == "default" and isinstance(src, CofiniteSpace):
                if len(line) != 2:
                    raise self.error("expected 'default POINT'", line[0])
                if line[1].text not in dst.index:
                    raise self.error(f"unknown point {line[1].text!r}", line[1], UnknownReference)
                default = line[1].text
            else:
                raise self.error(f"unexpected {word!r} in map {st.name.text}", line[0])
        try:
            if isinstance(src, CofiniteSpace):
                if default is None:
                    raise InvalidInput("a map out of cofinite needs a 'default' line")
                return CofiniteMap(dst, table, default, name=st.name.text)
            return SpaceMap(src, dst, table, name=st.name.text)
        except InvalidInput as exc:
            raise self.error(str(exc), st.name) from None

    def build_config(self, st):
        if len(st.head) != 2:
            raise self.error("expected 'config NAME'", st.head[2])
        parts = {}
        for line in st.body:
            key = line[0].text
            if key not in CONFIG_KEYS:
                raise self.error(f"unexpected {key!r} in config {st.name.text}", line[0])
            if key in parts:
                raise self.error(f"{key} given twice", line[0])
            if len(line) != 2:
                raise self.error(f"expected '{key} NAME'", line[0])
            parts[key] = line[1]
        missing = [k for k in CONFIG_KEYS if k not in parts]
        if missing:
            raise self.error(f"config {st.name.text} is missing {', '.join(missing)}", st.name)
        x1, x2, y = (self.resolve_space(parts[k]) for k in ("x1", "x2", "y"))
        maps = {}
        for k in ("phi", "psi"):
            try:
                maps[k] = self.ws.map(parts[k].text)
            except KeyError:
                raise self.error(f"unknown map {parts[k].text!r}", parts[k], UnknownReference) from None
        try:
            return RetractionConfig(x1, x2, y, maps["phi"], maps["psi"], name=st.name.text)
        except InvalidInput as exc:
            raise self.error(str(exc), st.name) from None


def parse(text, source=None, workspace=None):
    """Parse ``text`` into ``workspace`` (a new one by default) and return it."""
    return _Parser(text, source, workspace or Workspace()).run()


def parse_files(paths, workspace=None):
    ws = workspace or Workspace()
    for path in paths:
        with open(path, encoding="utf-8") as fh:
            parse(fh.read(), source=str(path), workspace=ws)
    return ws


# literals used on the command line

def _split_top(body):
    parts, depth, cur = [], 0, ""
    for ch in body:
        if ch in "({":
            depth += 1
        elif ch in ")}":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    if cur or parts:
        parts.append(cur)
    return [p.strip() for p in parts]


def _braced(text):
    text = text.strip()
    if not (text.startswith("{") and text.endswith("}")):
        raise InvalidInput(f"expected a set like {{a,b}}, got {text!r}")
    return _split_top(text[1:-1]) if text[1:-1].strip() else []


def parse_set(space, text):
    """A point set literal: ``{a,b}`` for finite spaces; also ``N\\{1,2}`` or ``COFULL`` for cofinite."""
    if isinstance(space, CofiniteSpace):
        text = text.strip()
        if text == "COFULL":
            return COFULL
        cofinite = text.startswith("N\\")
        items = _braced(text[2:] if cofinite else text)
        if not all(x.isdigit() for x in items):
            raise InvalidInput(f"points of cofinite are naturals: {text!r}")
        nums = [int(x) for x in items]
        return SymbolicSet.cofinite(nums) if cofinite else SymbolicSet.finite(nums)
    return space.subset(_braced(text))


def parse_ideal(algebra, text):
    """An ideal literal ``hull{b1,b2}``."""
    text = text.strip()
    if not text.startswith("hull"):
        raise InvalidInput(f"expected an ideal like hull{{b1,b2}}, got {text!r}")
    return BlockIdeal(algebra, frozenset(_braced(text[4:])))


# emission

def emit_space(space, name=None):
    name = name or space.name
    if not name:
        raise InvalidInput("emitting a space needs a name")
    lines = [f"space {name}", "points " + " ".join(space.elements)]
    covers = space.covers()
    if covers:
        lines.append("order " + " ".join(f"{a}<{b}" for a, b in covers))
    return "\n".join(lines) + "\n"


def emit_map(f, name=None, source_name=None, target_name=None):
    name = name or f.name
    tgt = target_name or f.target.name
    if isinstance(f, CofiniteMap):
        lines = [f"map {name} : cofinite -> {tgt}"]
        if f.table:
            lines.append("send " + " ".join(f"{k}->{v}" for k, v in sorted(f.table.items())))
        lines.append(f"default {f.default}")
        return "\n".join(lines) + "\n"
    src = source_name or f.source.name
    lines = [f"map {name} : {src} -> {tgt}"]
    if f.source.n:
        lines.append("send " + " ".join(f"{x}->{f(x)}" for x in f.source.elements))
    return "\n".join(lines) + "\n"


def emit_config(c, name=None):
    name = name or c.name
    x1n, x2n, yn = c.x1.name, c.x2.name, c.y.name
    prod_name = f"{x1n}*{x2n}"
    phin = c.phi.name or f"{name}_phi"
    psin = c.psi.name or f"{name}_psi"
    chunks = []
    seen = set()
    for s in (c.x1, c.x2, c.y):
        if s.name not in seen:
            seen.add(s.name)
            chunks.append(emit_space(s))
    chunks.append(emit_map(c.phi, phin, prod_name, yn))
    chunks.append(emit_map(c.psi, psin, yn, prod_name))
    chunks.append(
        "\n".join([f"config {name}", f"x1 {x1n}", f"x2 {x2n}", f"y {yn}",
                   f"phi {phin}", f"psi {psin}"]) + "\n"
    )
    return "\n".join(chunks)


def emit_algebra(a, name=None):
    body = " ".join(f"{b}:{n}" for b, n in a.blocks)
    return f"algebra {name or a.name} blocks {body}\n"


def emit_workspace(ws):
    chunks = [emit_space(s, n) for n, s in ws.spaces.items()]
    for n, f in ws.maps.items():
        src = "cofinite" if isinstance(f, CofiniteMap) else _space_ref(ws, f.source)
        chunks.append(emit_map(f, n, src, _space_ref(ws, f.target)))
    for n, c in ws.configs.items():
        chunks.append("\n".join([
            f"config {n}", f"x1 {_space_ref(ws, c.x1)}", f"x2 {_space_ref(ws, c.x2)}",
            f"y {_space_ref(ws, c.y)}", f"phi {_map_ref(ws, c.phi)}", f"psi {_map_ref(ws, c.psi)}",
        ]) + "\n")
    chunks.extend(emit_algebra(a, n) for n, a in ws.algebras.items())
    return "\n".join(chunks)


def _space_ref(ws, space):
    for n, s in ws.spaces.items():
        if s is space:
            return n
    return space.name


def _map_ref(ws, f):
    for n, g in ws.maps.items():
        if g is f:
            return n
    return f.name


__all__ = [
    "Workspace", "parse", "parse_files", "parse_set", "parse_ideal",
    "emit_space", "emit_map", "emit_config", "emit_algebra", "emit_workspace",
]
