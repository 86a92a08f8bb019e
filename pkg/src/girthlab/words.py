"""Alphabets and freely reduced words.

A :class:`Word` is always freely reduced; the only place an unreduced letter
sequence exists is inside :func:`free_reduce`.
"""
from __future__ import annotations

import re
from itertools import product
from typing import Iterable, Iterator, NamedTuple, Sequence

from .errors import ParseError, UnknownSymbol


class GeneratorSymbol(NamedTuple):
    id: int
    name: str


class Letter(NamedTuple):
    symbol: GeneratorSymbol
    sign: int

    def inverse(self) -> "Letter":
        return Letter(self.symbol, -self.sign)

    def sort_key(self):
        # +1 sorts before -1
        return (self.symbol.id, 0 if self.sign == 1 else 1)

    def __str__(self):
        return self.symbol.name if self.sign == 1 else f"{self.symbol.name}^-1"


def free_reduce(raw: Iterable[Letter]) -> "Word":
    out: list[Letter] = []
    for letter in raw:
        if letter.sign not in (1, -1):
            raise ValueError(f"bad sign {letter.sign!r}")
        if out and out[-1].symbol == letter.symbol and out[-1].sign == -letter.sign:
            out.pop()
        else:
            out.append(letter)
    return Word._trusted(tuple(out))


class Word:
    """Freely reduced word over signed generator symbols."""

    __slots__ = ("letters", "_hash")

    def __init__(self, letters: Iterable[Letter] = ()):
        self.letters = free_reduce(letters).letters
        self._hash = None

    @classmethod
    def _trusted(cls, letters: tuple) -> "Word":
        w = object.__new__(cls)
        w.letters = letters
        w._hash = None
        return w

    @classmethod
    def identity(cls) -> "Word":
        return _EMPTY

    def __len__(self):
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return Word._trusted(self.letters[item])
        return self.letters[item]

    def __bool__(self):
        return bool(self.letters)

    def __eq__(self, other):
        if isinstance(other, Word):
            return self.letters == other.letters
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.letters)
        return self._hash

    def __mul__(self, other: "Word") -> "Word":
        a, b = self.letters, other.letters
        i = 0
        n = min(len(a), len(b))
        while i < n:
            x, y = a[-1 - i], b[i]
            if x.symbol == y.symbol and x.sign == -y.sign:
                i += 1
            else:
                break
        return Word._trusted(a[: len(a) - i] + b[i:])

    def inverse(self) -> "Word":
        return Word._trusted(tuple(Letter(l.symbol, -l.sign) for l in reversed(self.letters)))

    __invert__ = inverse

    def __pow__(self, n: int) -> "Word":
        if n < 0:
            return self.inverse() ** (-n)
        out = _EMPTY
        for _ in range(n):
            out = out * self
        return out

    def sort_key(self):
        return (len(self.letters), tuple(l.sort_key() for l in self.letters))

    def symbols(self) -> set:
        return {l.symbol for l in self.letters}

    def substitute(self, images: dict) -> "Word":
        """Replace every symbol by the word ``images[symbol]`` and reduce."""
        out = _EMPTY
        for letter in self.letters:
            img = images[letter.symbol]
            out = out * (img if letter.sign == 1 else img.inverse())
        return out

    def __str__(self):
        return " ".join(str(l) for l in self.letters)

    def __repr__(self):
        return f"Word({str(self)!r})"


_EMPTY = Word._trusted(())


def cyclic_reduce(w: Word) -> tuple[Word, Word]:
    """Split ``w`` as ``conjugator * core * conjugator^-1`` with a cyclically reduced core."""
    letters = w.letters
    i, j = 0, len(letters) - 1
    while i < j and letters[i].symbol == letters[j].symbol and letters[i].sign == -letters[j].sign:
        i += 1
        j -= 1
    return Word._trusted(letters[i : j + 1]), Word._trusted(letters[:i])


def is_cyclically_reduced(w: Word) -> bool:
    if len(w) < 2:
        return True
    first, last = w.letters[0], w.letters[-1]
    return not (first.symbol == last.symbol and first.sign == -last.sign)


class Alphabet:
    """An ordered set of generator symbols with name lookup and word parsing."""

    def __init__(self, names: Sequence[str]):
        names = list(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate generator names in {names}")
        for n in names:
            if not n or not _NAME.fullmatch(n):
                raise ValueError(f"bad generator name {n!r}")
        self.symbols = tuple(GeneratorSymbol(i, n) for i, n in enumerate(names))
        self._by_name = {s.name: s for s in self.symbols}

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __contains__(self, symbol):
        return symbol in self._by_name.values()

    def __eq__(self, other):
        return isinstance(other, Alphabet) and self.symbols == other.symbols

    def __hash__(self):
        return hash(self.symbols)

    def __repr__(self):
        return f"Alphabet({[s.name for s in self.symbols]})"

    @property
    def names(self) -> list[str]:
        return [s.name for s in self.symbols]

    def __getitem__(self, name: str) -> GeneratorSymbol:
        try:
            return self._by_name[name]
        except KeyError:
            raise UnknownSymbol(f"unknown generator {name!r}; alphabet is {self.names}") from None

    def extend(self, *names: str) -> "Alphabet":
        return Alphabet(self.names + list(names))

    def letters(self) -> list[Letter]:
        """All letters in enumeration order: (symbol id, +1 before -1)."""
        return [Letter(s, sign) for s in self.symbols for sign in (1, -1)]

    def gen(self, name: str, power: int = 1) -> Word:
        sym = self[name]
        sign = 1 if power >= 0 else -1
        return Word._trusted((Letter(sym, sign),) * abs(power))

    def parse(self, text: str) -> Word:
        return parse_word(text, self)

    def check(self, w: Word) -> Word:
        for letter in w.letters:
            if self._by_name.get(letter.symbol.name) != letter.symbol:
                raise UnknownSymbol(f"symbol {letter.symbol.name!r} not in alphabet {self.names}")
        return w


_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[()^])|(?P<int>[+-]?\d+))")


def parse_word(text: str, alphabet: Alphabet) -> Word:
    """Parse ``"a b^-1 (a b)^3"``; ``1`` or an empty string is the identity."""
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", 1, pos + 1)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind) + 1))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1

    def power(i):
        if i < len(tokens) and tokens[i][1] == "^":
            if i + 1 >= len(tokens) or tokens[i + 1][0] != "int":
                col = tokens[i][2]
                raise ParseError("exponent must be an integer", 1, col, "integer")
            return int(tokens[i + 1][1]), i + 2
        return 1, i

    def seq(i, closing):
        out = _EMPTY
        while i < len(tokens):
            kind, value, col = tokens[i]
            if value == ")":
                if not closing:
                    raise ParseError("unbalanced ')'", 1, col)
                return out, i + 1
            if kind == "name":
                sym = alphabet[value]
                n, i = power(i + 1)
                out = out * Word._trusted((Letter(sym, 1 if n >= 0 else -1),) * abs(n))
            elif value == "(":
                inner, i = seq(i + 1, True)
                n, i = power(i)
                out = out * inner ** n
            elif kind == "int" and value == "1":
                i += 1
            else:
                raise ParseError(f"unexpected token {value!r}", 1, col, "generator name or '('")
        if closing:
            raise ParseError("missing ')'", 1, len(text) + 1, "')'")
        return out, i

    word, _ = seq(0, False)
    return word


def enumerate_reduced(alphabet: Alphabet | Sequence[GeneratorSymbol], max_len: int) -> Iterator[Word]:
    """Yield every freely reduced word of length 1..max_len, shortest first.

    Within one length, words come in lexicographic order on letters, where a
    letter is ordered by (symbol id, sign) with +1 before -1.
    """
    if max_len < 0:
        raise ValueError("max_len must be non-negative")
    symbols = sorted(alphabet, key=lambda s: s.id)
    letters = [Letter(s, sign) for s in symbols for sign in (1, -1)]

    def extend(prefix: tuple, remaining: int):
        if remaining == 0:
            yield Word._trusted(prefix)
            return
        last = prefix[-1] if prefix else None
        for letter in letters:
            if last is not None and last.symbol == letter.symbol and last.sign == -letter.sign:
                continue
            yield from extend(prefix + (letter,), remaining - 1)

    for length in range(1, max_len + 1):
        yield from extend((), length)


def count_reduced(k: int, length: int) -> int:
    """Number of freely reduced words of exactly ``length`` over ``k`` symbols."""
    if length == 0:
        return 1
    return 2 * k * (2 * k - 1) ** (length - 1)


def all_words_brute(alphabet: Alphabet, length: int) -> list[Word]:
    # reference enumeration used by tests and the corpus runner
    out = []
    for combo in product(alphabet.letters(), repeat=length):
        w = free_reduce(combo)
        if len(w) == length:
            out.append(w)
    return out
