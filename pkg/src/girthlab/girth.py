"""girth(G, S): exact search, lower-bound certificates and law upper bounds.

Relations are freely reduced words over an abstract alphabet with one
symbol per element of ``S``.  A relation of length ``l`` exists iff a
cyclically reduced one does (conjugate it), so only cyclically reduced words
are evaluated.  Words of a fixed length are searched depth first in
length-lex order with the running product kept per depth, so the first hit
is the lex-least shortest cyclically reduced relation.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import DuplicateElement, PreconditionViolated, SubstitutionCollapsed, ValidationError
from .oracles import GroupOracle
from .subgroups import make_subgroup
from .words import Alphabet, Word, count_reduced

EVALUATION_BUDGET = 10**6

EXACT, LOWER, UPPER = "Exact", "LowerBound", "UpperBound"


@dataclass
class GirthQuery:
    target: object
    S: list
    max_len: Optional[int] = None
    names: Optional[Sequence[str]] = None

    def __post_init__(self):
        T = self.target
        given = list(self.S)
        if not given:
            raise ValidationError("S must be nonempty")
        self.S = [T.element(x) for x in given]
        for i, x in enumerate(self.S):
            if T.is_identity_element(x):
                raise ValidationError(f"element {i + 1} of S is the identity")
            for j in range(i):
                if T.is_identity_element(T.multiply(x, T.inverse(self.S[j]))):
                    raise DuplicateElement(f"elements {j + 1} and {i + 1} of S are equal")
        self.words = [T.to_word(x) for x in self.S]
        self.alphabet = Alphabet(list(self.names) if self.names else abstract_names(self.words))
        if len(self.alphabet) != len(self.S):
            raise ValidationError("need one abstract name per element of S")
        if self.max_len is None:
            self.max_len = default_cap(len(self.S))
        if self.max_len < 1:
            raise ValidationError("max_len must be >= 1")

    def evaluate(self, w: Word):
        T = self.target
        x = T.identity
        for letter in w:
            g = self.S[letter.symbol.id]
            x = T.multiply(x, g if letter.sign == 1 else T.inverse(g))
        return x

    def serialize(self) -> dict:
        T = self.target
        return {
            "target": T.describe(),
            "S": [str(w) or "1" for w in self.words],
            "alphabet": self.alphabet.names,
            "max_len": self.max_len,
        }

    def fingerprint(self) -> str:
        blob = json.dumps(self.serialize(), sort_keys=True).encode()
        return "sha256:" + hashlib.sha256(blob).hexdigest()

    def generation(self) -> str:
        """'verified', 'fails' or 'assumed' (no decision procedure for this target)."""
        T = self.target
        if not isinstance(T, GroupOracle):
            return "assumed"
        try:
            H = make_subgroup(T, self.words)
        except ValidationError:
            return "assumed"
        return "fails" if H.is_proper() else "verified"


def abstract_names(words: Sequence[Word]) -> list[str]:
    """Reuse generator names when every element is a distinct single generator."""
    names = []
    for w in words:
        if len(w) == 1 and w.letters[0].sign == 1:
            names.append(w.letters[0].symbol.name)
        else:
            break
    if len(names) == len(words) and len(set(names)) == len(names):
        return names
    return [f"s{i + 1}" for i in range(len(words))]


def default_cap(k: int, budget: int = EVALUATION_BUDGET) -> int:
    """Largest cap whose freely reduced word count stays within ``budget``."""
    total, cap = 0, 0
    while True:
        total += count_reduced(k, cap + 1)
        if total > budget:
            return max(cap, 1)
        cap += 1
        if cap >= 64:
            return cap


@dataclass
class GirthCertificate:
    kind: str
    value: int
    witness: Optional[Word] = None
    words_checked: int = 0
    evaluated: int = 0
    fingerprint: str = ""
    metadata: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "value": self.value,
            "witness": None if self.witness is None else (str(self.witness) or "1"),
            "words_checked": self.words_checked,
            "evaluated": self.evaluated,
            "fingerprint": self.fingerprint,
            "metadata": self.metadata,
        }

    def __str__(self):
        w = f", {self.witness}" if self.witness is not None else ""
        return f"{self.kind}({self.value}{w})"


@dataclass(frozen=True)
class LawDoesNotHold:
    law: str
    substituted: Word

    def to_dict(self) -> dict:
        return {"kind": "LawDoesNotHold", "law": self.law, "substituted": str(self.substituted)}

    def __str__(self):
        return f"LawDoesNotHold({self.law}: {self.substituted})"


class _Search:
    """Length-``L`` cyclically reduced words, depth first, with prefix products."""

    def __init__(self, q: GirthQuery):
        self.q = q
        T = q.target
        self.letters = q.alphabet.letters()
        self.values = [q.S[l.symbol.id] if l.sign == 1 else T.inverse(q.S[l.symbol.id]) for l in self.letters]
        index = {l: i for i, l in enumerate(self.letters)}
        self.inv = [index[l.inverse()] for l in self.letters]
        self.evaluated = 0

    def run(self, length: int) -> Optional[list[int]]:
        T = self.q.target
        letters, values, inv = self.letters, self.values, self.inv
        n = len(letters)
        path = [0] * length
        prods = [T.identity] * (length + 1)

        def dfs(depth: int) -> bool:
            prev = path[depth - 1] if depth else -1
            last = depth == length - 1
            for i in range(n):
                if depth and i == inv[prev]:
                    continue
                if last and length > 1 and i == inv[path[0]]:
                    continue
                path[depth] = i
                x = T.multiply(prods[depth], values[i])
                if last:
                    self.evaluated += 1
                    if T.is_identity_element(x):
                        return True
                else:
                    prods[depth + 1] = x
                    if dfs(depth + 1):
                        return True
            return False

        return list(path) if dfs(0) else None

    def word(self, path: list[int]) -> Word:
        return Word._trusted(tuple(self.letters[i] for i in path))


def _convention(q: GirthQuery) -> dict:
    return {
        "relation": "freely reduced word over the abstract alphabet of S",
        "search": "cyclically reduced words only; conjugation preserves relations",
        "alphabet": q.alphabet.names,
        "S": [str(w) or "1" for w in q.words],
    }


def girth_exact(q: GirthQuery) -> GirthCertificate:
    search = _Search(q)
    meta = _convention(q)
    meta["generation"] = q.generation()
    checked = 0
    for length in range(1, q.max_len + 1):
        hit = search.run(length)
        if hit is not None:
            return GirthCertificate(EXACT, length, search.word(hit), checked, search.evaluated, q.fingerprint(), meta)
        checked += count_reduced(len(q.S), length)
    meta["cap"] = q.max_len
    return GirthCertificate(LOWER, q.max_len + 1, None, checked, search.evaluated, q.fingerprint(), meta)


def certify_no_short_relation(target, S, r: int, cap: Optional[int] = None, names=None) -> GirthCertificate:
    """Verify that no freely reduced word of length <= cap over ``S`` is a relation.

    The certified bound is ``cap + 1``; the requested ``r`` is recorded and
    ``truncated`` says whether the check stopped short of ``r - 1``.
    """
    if r < 1:
        raise PreconditionViolated("r must be >= 1")
    if cap is None:
        cap = min(r - 1, default_cap(len(S))) or 1
    q = GirthQuery(target, S, cap, names)
    cert = girth_exact(q)
    cert.metadata["requested_r"] = r
    cert.metadata["truncated"] = cap + 1 < r
    return cert


# -- laws ---------------------------------------------------------------------------

LAW_VARIABLES = Alphabet(["x", "y", "z", "w"])


def _v(name: str) -> Word:
    return LAW_VARIABLES.gen(name)


def commutator(u: Word, v: Word) -> Word:
    return u * v * u.inverse() * v.inverse()


def law_abelian() -> Word:
    return commutator(_v("x"), _v("y"))


def law_metabelian() -> Word:
    return commutator(commutator(_v("x"), _v("y")), commutator(_v("z"), _v("w")))


def law_nilpotent2() -> Word:
    return commutator(commutator(_v("x"), _v("y")), _v("z"))


def law_burnside(n: int) -> Word:
    return _v("x") ** n


def get_law(name: str) -> Word:
    name = name.strip()
    if name == "abelian":
        return law_abelian()
    if name == "metabelian":
        return law_metabelian()
    if name in ("nilpotent2", "nilpotent"):
        return law_nilpotent2()
    if name.startswith("burnside"):
        try:
            return law_burnside(int(name[len("burnside"):].lstrip(":=")))
        except ValueError:
            raise ValidationError(f"burnside law needs an exponent, e.g. burnside3, got {name!r}") from None
    return LAW_VARIABLES.parse(name)


def law_upper_bound(target, S, law, assignment: Optional[Sequence] = None, names=None):
    """Substitute ``S`` into ``law`` and verify the result is a relation.

    ``law`` is a word over the variables ``x, y, z, w`` (or a library name).
    ``assignment`` gives a word over the abstract alphabet of ``S`` for each
    variable used; by default the i-th variable becomes the i-th symbol.
    Returns an UpperBound certificate or :class:`LawDoesNotHold`.
    """
    if isinstance(law, str):
        law_name, law = law, get_law(law)
    else:
        law_name = str(law)
    q = GirthQuery(target, S, 1, names)
    used = sorted(law.symbols(), key=lambda s: s.id)
    n_vars = used[-1].id + 1 if used else 0
    if assignment is None:
        if n_vars > len(q.alphabet):
            raise PreconditionViolated(
                f"law uses {n_vars} variables but S has only {len(q.alphabet)} elements"
            )
        images = {LAW_VARIABLES.symbols[i]: q.alphabet.gen(q.alphabet.names[i]) for i in range(n_vars)}
    else:
        if len(assignment) < n_vars:
            raise PreconditionViolated(f"law uses {n_vars} variables, assignment gives {len(assignment)}")
        images = {}
        for i, a in enumerate(assignment[:n_vars]):
            w = a if isinstance(a, Word) else q.alphabet.parse(a)
            images[LAW_VARIABLES.symbols[i]] = q.alphabet.check(w)
        if len({images[s] for s in used}) < len(used):
            raise PreconditionViolated("law variables must be instantiated with distinct words")
    letters = []
    for letter in law:
        img = images[letter.symbol]
        letters.extend(img if letter.sign == 1 else img.inverse())
    word = Word(letters)
    if not word:
        raise SubstitutionCollapsed(f"law {law_name} collapses to the empty word under substitution")
    if not target.is_identity_element(q.evaluate(word)):
        return LawDoesNotHold(law_name, word)
    q.max_len = len(word)
    meta = _convention(q)
    meta["law"] = law_name
    return GirthCertificate(UPPER, len(word), word, 0, 1, q.fingerprint(), meta)


def is_relation(target, S, word: Word | str, names=None) -> bool:
    q = GirthQuery(target, S, 1, names)
    w = q.alphabet.parse(word) if isinstance(word, str) else q.alphabet.check(word)
    return bool(w) and target.is_identity_element(q.evaluate(w))

