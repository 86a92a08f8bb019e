"""Word-problem oracles for the base groups.

Each oracle maps words to canonical elements (``normal_form``) and supports
multiplication on those elements, which is what the HNN, amalgam and girth
machinery is built on.

=================  ===========================================
kind               element representation
=================  ===========================================
free               reduced :class:`~girthlab.words.Word`
abelian            exponent vector (tuple of ints)
dihedral           :class:`DihedralNormal`
cayley             element index (int) into a :class:`CayleyTable`
=================  ===========================================
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import UnknownSymbol, Unsupported, ValidationError
from .finite import CayleyTable
from .words import Alphabet, Letter, Word

DEFAULT_NAMES = "abcdefghijklmnopqrsuvwxyz"  # no 't': reserved for stable letters


def default_names(rank: int) -> list[str]:
    if rank <= len(DEFAULT_NAMES):
        return list(DEFAULT_NAMES[:rank])
    return [f"x{i + 1}" for i in range(rank)]


class GroupOracle:
    """Identity decision and normal forms for one group.

    Subclasses provide ``identity``, ``multiply``, ``inverse``,
    ``_letter_element`` and ``to_word``.
    """

    kind = "abstract"
    alphabet: Alphabet

    def __init__(self, alphabet: Alphabet):
        self.alphabet = alphabet
        self._gen_cache = {}
        for sym in alphabet:
            self._gen_cache[Letter(sym, 1)] = self._letter_element(sym, 1)
            self._gen_cache[Letter(sym, -1)] = self._letter_element(sym, -1)

    def letter_element(self, letter: Letter):
        try:
            return self._gen_cache[letter]
        except KeyError:
            raise UnknownSymbol(
                f"symbol {letter.symbol.name!r} is not in alphabet {self.alphabet.names}"
            ) from None

    def evaluate(self, word: Word):
        x = self.identity
        for letter in word:
            x = self.multiply(x, self.letter_element(letter))
        return x

    def normal_form(self, word: Word):
        return self.evaluate(word)

    def is_identity(self, word: Word) -> bool:
        return self.is_identity_element(self.evaluate(word))

    def is_identity_element(self, x) -> bool:
        return x == self.identity

    def element(self, x):
        """Coerce a word or a string to an element; elements pass through."""
        if isinstance(x, str):
            return self.evaluate(self.alphabet.parse(x))
        if isinstance(x, Word):
            return self.evaluate(x)
        return x

    def equal(self, x, y) -> bool:
        return self.element(x) == self.element(y)

    def parse(self, text: str) -> Word:
        return self.alphabet.parse(text)

    def power(self, x, k: int):
        if k < 0:
            x, k = self.inverse(x), -k
        out = self.identity
        for _ in range(k):
            out = self.multiply(out, x)
        return out

    def format(self, x) -> str:
        w = self.to_word(x)
        return str(w) if w else "1"

    def describe(self) -> str:
        raise NotImplementedError

    def __repr__(self):
        return f"<{type(self).__name__} {self.describe()}>"

    is_finite = False


class FreeGroup(GroupOracle):
    kind = "free"

    def __init__(self, rank: int, names: Optional[Sequence[str]] = None):
        if rank < 0:
            raise ValidationError("rank must be non-negative")
        names = list(names) if names else default_names(rank)
        if len(names) != rank:
            raise ValidationError(f"free rank={rank} needs {rank} names, got {names}")
        self.rank = rank
        super().__init__(Alphabet(names))

    identity = Word.identity()

    def _letter_element(self, sym, sign):
        return Word._trusted((Letter(sym, sign),))

    def multiply(self, x: Word, y: Word) -> Word:
        return x * y

    def inverse(self, x: Word) -> Word:
        return x.inverse()

    def evaluate(self, word: Word) -> Word:
        return self.alphabet.check(word)

    def to_word(self, x: Word) -> Word:
        return x

    def describe(self):
        return f"free rank={self.rank} names={','.join(self.alphabet.names)}"


class FreeAbelianGroup(GroupOracle):
    kind = "abelian"

    def __init__(self, rank: int, names: Optional[Sequence[str]] = None):
        if rank < 0:
            raise ValidationError("rank must be non-negative")
        names = list(names) if names else default_names(rank)
        if len(names) != rank:
            raise ValidationError(f"abelian rank={rank} needs {rank} names, got {names}")
        self.rank = rank
        self.identity = (0,) * rank
        super().__init__(Alphabet(names))

    def _letter_element(self, sym, sign):
        v = [0] * self.rank
        v[sym.id] = sign
        return tuple(v)

    def multiply(self, x, y):
        return tuple(p + q for p, q in zip(x, y))

    def inverse(self, x):
        return tuple(-p for p in x)

    def evaluate(self, word: Word):
        v = [0] * self.rank
        for letter in word:
            self.letter_element(letter)
            v[letter.symbol.id] += letter.sign
        return tuple(v)

    def to_word(self, x) -> Word:
        out = Word.identity()
        for sym, e in zip(self.alphabet, x):
            out = out * self.alphabet.gen(sym.name, e)
        return out

    def describe(self):
        return f"abelian rank={self.rank} names={','.join(self.alphabet.names)}"


@dataclass(frozen=True, order=True)
class DihedralNormal:
    """The element ``(ab)^translation * a^flip``."""

    translation: int
    flip: int

    def __str__(self):
        return f"(ab)^{self.translation}" + (" a" if self.flip else "")


class DihedralGroup(GroupOracle):
    """``D_q = <a, b | a^2 = b^2 = (ab)^q = 1>``; ``q=None`` is the infinite dihedral group."""

    kind = "dihedral"

    def __init__(self, q: Optional[int] = None, names: Sequence[str] = ("a", "b")):
        if q is not None and q < 2:
            raise ValidationError("dihedral q must be >= 2 or inf")
        if len(names) != 2:
            raise ValidationError("dihedral group uses exactly two generator names")
        self.q = q
        self.identity = DihedralNormal(0, 0)
        super().__init__(Alphabet(names))

    @property
    def is_finite(self):
        return self.q is not None

    @property
    def order(self):
        return None if self.q is None else 2 * self.q

    def _mod(self, k: int) -> int:
        return k if self.q is None else k % self.q

    def _letter_element(self, sym, sign):
        # a = (0, 1) and b = (ab)^-1 a = (-1, 1)
        return DihedralNormal(self._mod(0 if sym.id == 0 else -1), 1)

    def make(self, translation: int, flip: int) -> DihedralNormal:
        return DihedralNormal(self._mod(translation), flip & 1)

    def multiply(self, x: DihedralNormal, y: DihedralNormal) -> DihedralNormal:
        k = x.translation - y.translation if x.flip else x.translation + y.translation
        return DihedralNormal(self._mod(k), x.flip ^ y.flip)

    def inverse(self, x: DihedralNormal) -> DihedralNormal:
        if x.flip:
            return x
        return DihedralNormal(self._mod(-x.translation), 0)

    def elements(self):
        if self.q is None:
            raise Unsupported("D_inf has infinitely many elements")
        return [DihedralNormal(k, f) for f in (0, 1) for k in range(self.q)]

    def _word_length(self, k: int, flip: int) -> int:
        if not flip:
            return 2 * abs(k)
        return 2 * k + 1 if k >= 0 else 2 * abs(k) - 1

    def to_word(self, x: DihedralNormal) -> Word:
        k = x.translation
        if self.q is not None:
            alt = k - self.q
            if self._word_length(alt, x.flip) < self._word_length(k, x.flip):
                k = alt
        a, b = self.alphabet.gen(self.alphabet.names[0]), self.alphabet.gen(self.alphabet.names[1])
        if not x.flip:
            return (a * b) ** k if k >= 0 else (b * a) ** (-k)
        if k >= 0:
            return (a * b) ** k * a
        return (b * a) ** (-k - 1) * b

    def describe(self):
        q = "inf" if self.q is None else str(self.q)
        return f"dihedral q={q} names={','.join(self.alphabet.names)}"


class FiniteGroup(GroupOracle):
    """Group given by a Cayley table together with chosen generators."""

    kind = "cayley"
    is_finite = True

    def __init__(self, table: CayleyTable, gens: Sequence[int], names=None, label=None):
        gens = list(gens)
        if any(not 0 <= g < table.order for g in gens):
            raise ValidationError(f"generator index out of range for order {table.order}")
        names = list(names) if names else default_names(len(gens))
        if len(names) != len(gens):
            raise ValidationError(f"{len(gens)} generators but {len(names)} names")
        self.table = table
        self.gens = gens
        self.label = label
        self.identity = 0
        self.order = table.order
        if not table.generates(gens):
            raise ValidationError(
                f"generators {gens} do not generate the group of order {table.order}"
            )
        super().__init__(Alphabet(names))
        self._words = self._shortest_words()

    def _letter_element(self, sym, sign):
        g = self.gens[sym.id]
        return g if sign == 1 else self.table.inverse[g]

    def _shortest_words(self):
        words = {0: Word.identity()}
        queue = deque([0])
        letters = self.alphabet.letters()
        while queue:
            x = queue.popleft()
            for letter in letters:
                y = self.table.product[x][self._gen_cache[letter]]
                if y not in words:
                    words[y] = words[x] * Word._trusted((letter,))
                    queue.append(y)
        return words

    def multiply(self, x: int, y: int) -> int:
        return self.table.product[x][y]

    def inverse(self, x: int) -> int:
        return self.table.inverse[x]

    def evaluate(self, word: Word) -> int:
        p = self.table.product
        x = 0
        for letter in word:
            x = p[x][self.letter_element(letter)]
        return x

    def elements(self):
        return list(range(self.order))

    def to_word(self, x: int) -> Word:
        return self._words[x]

    def describe(self):
        src = self.label or f"order={self.order}"
        return f"cayley {src} gens={','.join(map(str, self.gens))} names={','.join(self.alphabet.names)}"


def klein_four_quotient_exists(G: GroupOracle) -> bool:
    """Whether ``G`` surjects onto Z/2 x Z/2."""
    if isinstance(G, FiniteGroup):
        n = len(G.table.verbal_klein_subgroup())
        return G.order // n >= 4
    if isinstance(G, DihedralGroup):
        return G.q is None or G.q % 2 == 0
    if isinstance(G, (FreeGroup, FreeAbelianGroup)):
        return G.rank >= 2
    raise Unsupported(f"no Klein-quotient test for {G!r}")

