"""Presentation DSL.

Grammar (recursive descent, parentheses for nesting, ``#`` comments)::

    spec     := group | subgroup | hnn | amalgam
    group    := "free" rank=N [names=a,b]
              | "abelian" rank=N [names=...]
              | "dihedral" q=N|inf [names=a,b]
              | "cayley" (file=PATH | corpus=NAME) [gens=i,j,...] [names=...]
    subgroup := "subgroup" [of=(group)] (gens="w1, w2" | gmn m=M n=N)
    hnn      := "hnn" base=(group) A=(subgroup) B=(subgroup) phi="u -> v, ..." [stable=t]
    amalgam  := "amalgam" left=(group) right=(group) C_left=(subgroup)
                C_right=(subgroup) iso="u -> v, ..."

Values are integers, bare words, comma lists, double-quoted strings or a
parenthesized nested spec.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

from .amalgam import AmalgamPresentation
from .corpus import load_entry
from .errors import GirthlabError, ParseError, ValidationError
from .finite import CayleyTable
from .hnn import HnnPresentation
from .oracles import DihedralGroup, FiniteGroup, FreeAbelianGroup, FreeGroup, GroupOracle
from .subgroups import SubgroupHandle, gmn, make_subgroup
from .words import Word

_TOKEN = re.compile(
    r"""(?P<ws>[ \t\r]+|\#[^\n]*)
      | (?P<nl>\n)
      | (?P<string>"(?:[^"\\\n]|\\.)*")
      | (?P<punct>[()=,])
      | (?P<word>[^\s()=,"\#]+)
      | (?P<bad>.)""",
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    value: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    out = []
    line, start = 1, 0
    for m in _TOKEN.finditer(text):
        kind = m.lastgroup
        col = m.start() - start + 1
        if kind == "nl":
            line += 1
            start = m.end()
            continue
        if kind == "ws":
            continue
        if kind == "bad":
            if m.group() == '"':
                raise ParseError("unterminated string", line, col, '"')
            raise ParseError(f"unexpected character {m.group()!r}", line, col)
        value = m.group()
        if kind == "string":
            value = bytes(value[1:-1], "utf-8").decode("unicode_escape")
        out.append(Token(kind, value, line, col))
    out.append(Token("eof", "", line, len(text) - start + 1))
    return out


@dataclass
class Value:
    kind: str  # "scalar", "list", "string", "spec"
    value: object
    token: Token


@dataclass
class Node:
    head: Token
    args: dict
    keys: dict = field(default_factory=dict)  # key name -> its token, for error positions

    @property
    def name(self) -> str:
        return self.head.value


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self) -> Token:
        return self.tokens[self.i]

    def take(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expect(self, kind: str, value: Optional[str] = None, what: Optional[str] = None) -> Token:
        t = self.peek()
        if t.kind != kind or (value is not None and t.value != value):
            got = "end of input" if t.kind == "eof" else repr(t.value)
            raise ParseError(f"unexpected {got}", t.line, t.column, what or repr(value or kind))
        return self.take()

    def spec(self) -> Node:
        head = self.expect("word", what="a spec keyword (free, abelian, dihedral, cayley, subgroup, hnn, amalgam)")
        args: dict = {}
        keys: dict = {}
        while self.peek().kind == "word":
            key = self.take()
            keys[key.value] = key
            if head.value == "subgroup" and key.value == "gmn" and self.peek().value != "=":
                args["gmn"] = Value("scalar", "gmn", key)
                continue
            self.expect("punct", "=", "'='")
            if key.value in args:
                raise ParseError(f"duplicate key {key.value!r}", key.line, key.column)
            args[key.value] = self.value()
        return Node(head, args, keys)

    def value(self) -> Value:
        t = self.peek()
        if t.kind == "string":
            return Value("string", self.take().value, t)
        if t.kind == "punct" and t.value == "(":
            self.take()
            inner = self.spec()
            self.expect("punct", ")", "')'")
            return Value("spec", inner, t)
        if t.kind == "word":
            items = [self.take().value]
            while self.peek().kind == "punct" and self.peek().value == ",":
                self.take()
                items.append(self.expect("word", what="a list item").value)
            if len(items) == 1:
                return Value("scalar", items[0], t)
            return Value("list", items, t)
        got = "end of input" if t.kind == "eof" else repr(t.value)
        raise ParseError(f"unexpected {got}", t.line, t.column, "a value")

    def parse(self) -> Node:
        node = self.spec()
        t = self.peek()
        if t.kind != "eof":
            raise ParseError(f"unexpected {t.value!r} after spec", t.line, t.column, "end of input")
        return node


def parse_tree(text: str) -> Node:
    return _Parser(text).parse()


# -- building objects ------------------------------------------------------------------


def _err(v, message, expected=None):
    tok = v.token if isinstance(v, Value) else v.head
    return ParseError(message, tok.line, tok.column, expected)


def _keys(node: Node, required: set, optional: set = frozenset()):
    for k in node.args:
        if k not in required | set(optional):
            tok = node.keys.get(k, node.head)
            allowed = "one of " + ", ".join(sorted(required | set(optional)))
            raise ParseError(f"unknown key {k!r} for {node.name}", tok.line, tok.column, allowed)
    for k in sorted(required):
        if k not in node.args:
            raise ParseError(f"{node.name} needs {k}=", node.head.line, node.head.column, f"{k}=")


def _int(v: Value, name: str, minimum: Optional[int] = None) -> int:
    if v.kind != "scalar":
        raise _err(v, f"{name} must be an integer", "integer")
    try:
        n = int(v.value)
    except ValueError:
        raise _err(v, f"{name} must be an integer, got {v.value!r}", "integer") from None
    if minimum is not None and n < minimum:
        raise _err(v, f"{name} must be >= {minimum}", f"integer >= {minimum}")
    return n


def _names(node: Node) -> Optional[list[str]]:
    v = node.args.get("names")
    if v is None:
        return None
    if v.kind == "string":
        return [s.strip() for s in v.value.replace(",", " ").split()]
    if v.kind == "scalar":
        return [v.value]
    if v.kind == "list":
        return list(v.value)
    raise _err(v, "names must be a comma list", "a,b,...")


def _spec_arg(node: Node, key: str) -> Node:
    v = node.args[key]
    if v.kind != "spec":
        raise _err(v, f"{key} must be a parenthesized spec", "'('")
    return v.value


def _split_words(v: Value) -> list[str]:
    if v.kind == "string":
        parts = [p.strip() for p in v.value.split(",")]
        return [p for p in parts if p]
    if v.kind == "scalar":
        return [v.value]
    if v.kind == "list":
        return list(v.value)
    raise _err(v, "expected a quoted list of words", '"w1, w2"')


def _parse_word(G, text: str, v: Value) -> Word:
    try:
        return G.parse(text)
    except ParseError as exc:
        raise ParseError(f"in word {text!r}: {exc}", v.token.line, v.token.column) from None
    except GirthlabError as exc:
        raise _err(v, f"in word {text!r}: {exc}") from None


def build_group(node: Node) -> GroupOracle:
    kind = node.name
    if kind in ("free", "abelian"):
        _keys(node, {"rank"}, {"names"})
        rank = _int(node.args["rank"], "rank", 0)
        cls = FreeGroup if kind == "free" else FreeAbelianGroup
        return cls(rank, _names(node))
    if kind == "dihedral":
        _keys(node, {"q"}, {"names"})
        v = node.args["q"]
        q = None if v.kind == "scalar" and v.value in ("inf", "infinity") else _int(v, "q", 2)
        names = _names(node) or ["a", "b"]
        return DihedralGroup(q, names)
    if kind == "cayley":
        _keys(node, set(), {"file", "corpus", "gens", "names"})
        has_file, has_corpus = "file" in node.args, "corpus" in node.args
        if has_file == has_corpus:
            raise ParseError("cayley needs exactly one of file= or corpus=", node.head.line, node.head.column, "file= or corpus=")
        gens = None
        if "gens" in node.args:
            g = node.args["gens"]
            items = _split_words(g) if g.kind == "string" else ([g.value] if g.kind == "scalar" else g.value)
            try:
                gens = [int(x) for x in items]
            except ValueError:
                raise _err(g, "gens must be element indices", "i,j,...") from None
        if has_file:
            table = CayleyTable.load(node.args["file"].value)
            label = f'file="{node.args["file"].value}"'
            if gens is None:
                raise ParseError("cayley file= needs gens=", node.head.line, node.head.column, "gens=")
        else:
            entry = load_entry(node.args["corpus"].value)
            table, label = entry.table, f"corpus={entry.name}"
            gens = list(entry.gens) if gens is None else gens
        return FiniteGroup(table, gens, names=_names(node), label=label)
    raise ParseError(f"unknown group kind {kind!r}", node.head.line, node.head.column, "free, abelian, dihedral or cayley")


def build_subgroup(node: Node, ambient: Optional[GroupOracle] = None) -> SubgroupHandle:
    if node.name != "subgroup":
        raise ParseError(f"expected a subgroup spec, got {node.name!r}", node.head.line, node.head.column, "subgroup")
    if "gmn" in node.args:
        _keys(node, {"gmn", "m", "n"}, {"of"})
    else:
        _keys(node, {"gens"}, {"of"})
    if "of" in node.args:
        ambient = build_group(_spec_arg(node, "of"))
    if ambient is None:
        raise ParseError("a standalone subgroup needs of=(group)", node.head.line, node.head.column, "of=")
    if "gmn" in node.args:
        if not isinstance(ambient, DihedralGroup):
            raise _err(node.args["gmn"], "gmn subgroups live in dihedral groups")
        return gmn(ambient, _int(node.args["m"], "m", 0), _int(node.args["n"], "n", 0))
    v = node.args["gens"]
    words = [_parse_word(ambient, w, v) for w in _split_words(v)]
    return make_subgroup(ambient, words)


def _parse_map(G_src, G_dst, v: Value) -> dict:
    if v.kind != "string":
        raise _err(v, "map must be a quoted string", '"u -> v, ..."')
    out = {}
    for part in v.value.split(","):
        part = part.strip()
        if not part:
            continue
        if "->" not in part:
            raise _err(v, f"map entry {part!r} has no '->'", "u -> v")
        lhs, rhs = (s.strip() for s in part.split("->", 1))
        key = _parse_word(G_src, lhs, v)
        if key in out:
            raise _err(v, f"map given twice on {lhs!r}")
        out[key] = _parse_word(G_dst, rhs, v)
    return out


def build_hnn(node: Node) -> HnnPresentation:
    _keys(node, {"base", "A", "B", "phi"}, {"stable"})
    base = build_group(_spec_arg(node, "base"))
    A = build_subgroup(_spec_arg(node, "A"), base)
    B = build_subgroup(_spec_arg(node, "B"), base)
    phi = _parse_map(base, base, node.args["phi"])
    stable = node.args["stable"].value if "stable" in node.args else "t"
    return HnnPresentation(base, A, B, phi, stable=stable)


def build_amalgam(node: Node) -> AmalgamPresentation:
    _keys(node, {"left", "right", "C_left", "C_right", "iso"})
    left = build_group(_spec_arg(node, "left"))
    right = build_group(_spec_arg(node, "right"))
    CL = build_subgroup(_spec_arg(node, "C_left"), left)
    CR = build_subgroup(_spec_arg(node, "C_right"), right)
    iso = _parse_map(left, right, node.args["iso"])
    return AmalgamPresentation(left, right, CL, CR, iso)


def build(node: Node):
    if node.name == "hnn":
        return build_hnn(node)
    if node.name == "amalgam":
        return build_amalgam(node)
    if node.name == "subgroup":
        return build_subgroup(node)
    return build_group(node)


def parse_spec(text: str):
    """Parse a spec into a group oracle, subgroup handle, HNN or amalgam presentation."""
    node = parse_tree(text)
    try:
        return build(node)
    except (ParseError, ValidationError):
        raise
    except ValueError as exc:
        raise ValidationError(str(exc)) from None
