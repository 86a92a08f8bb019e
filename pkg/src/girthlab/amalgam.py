"""Amalgamated free products ``A *_C B`` over supported factor groups.

Elements are stacks of syllables tagged ``LEFT`` or ``RIGHT``.  The stack is
kept in normal form: syllables alternate sides and none lies in ``C``; a
single syllable from ``C`` is allowed only when it is the whole element.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import NoPairFound, PreconditionViolated, ValidationError
from .oracles import GroupOracle
from .subgroups import SubgroupHandle, check_isomorphism, make_subgroup
from .words import Alphabet, Letter, Word, enumerate_reduced, free_reduce

LEFT, RIGHT = 0, 1
PAIR_SEARCH_LENGTH = 4


@dataclass(frozen=True)
class AmalgamElement:
    """Syllables ``((side, element), ...)``."""

    syllables: tuple

    def __len__(self):
        return len(self.syllables)


class AmalgamPresentation:
    """``left *_C right`` with ``C`` given inside each factor.

    ``iso`` lists the image in ``right`` of each declared generator of
    ``C_left`` (or maps generator words to image words).
    """

    def __init__(
        self,
        left: GroupOracle,
        right: GroupOracle,
        C_left: SubgroupHandle,
        C_right: SubgroupHandle,
        iso,
        validate: bool = True,
    ):
        if C_left.ambient is not left or C_right.ambient is not right:
            raise ValidationError("C_left and C_right must be subgroups of the left and right factors")
        clash = set(left.alphabet.names) & set(right.alphabet.names)
        if clash:
            raise ValidationError(f"factor alphabets must be disjoint, shared: {sorted(clash)}")
        self.left, self.right = left, right
        self.factors = (left, right)
        self.C = (C_left, C_right)
        self.alphabet = Alphabet(list(left.alphabet.names) + list(right.alphabet.names))
        self._side_of = {}
        for sym in self.alphabet:
            side = LEFT if sym.name in left.alphabet.names else RIGHT
            self._side_of[sym.name] = (side, self.factors[side].alphabet[sym.name])
        self.iso_images = self._align_iso(iso)
        for gw, img in zip(C_left.gen_words, self.iso_images):
            if not C_right.contains(img):
                raise ValidationError(f"iso({gw}) = {right.format(img)} does not lie in C_right")
        self._C_images = make_subgroup(right, [right.to_word(x) for x in self.iso_images])
        if validate:
            for gw in C_right.gen_words:
                if not self._C_images.member(gw):
                    raise ValidationError(f"iso images do not generate C_right: {gw} is missed")
            check_isomorphism(C_left, right, self.iso_images, self._C_images)
        self.identity = AmalgamElement(())

    def _align_iso(self, iso) -> list:
        left, right, C = self.left, self.right, self.C[LEFT]
        if isinstance(iso, dict):
            images: list = [None] * len(C.gens)
            for key, value in iso.items():
                x = left.element(key)
                hits = [i for i, g in enumerate(C.gens) if g == x]
                if not hits:
                    raise ValidationError(f"iso is given on {key}, which is not a declared generator of C_left")
                for i in hits:
                    images[i] = right.element(value)
            if any(v is None for v in images):
                raise ValidationError("iso must give an image for every generator of C_left")
            return images
        images = [right.element(v) for v in iso]
        if len(images) != len(C.gens):
            raise ValidationError(f"iso needs {len(C.gens)} images, got {len(images)}")
        return images

    @property
    def is_proper(self) -> bool:
        return self.C[LEFT].is_proper() and self.C[RIGHT].is_proper()

    def index(self, side: int) -> Optional[int]:
        """``[factor : C]`` for finite factors, else None."""
        H = self.C[side]
        if hasattr(H, "index"):
            return H.index()
        return None

    # -- transport across C ---------------------------------------------------

    def transport(self, side: int, x):
        """Image of ``x`` in ``C_side`` on the other side."""
        if side == LEFT:
            w = self.C[LEFT].express_element(x)
            R = self.right
            return w.evaluate(self.iso_images, R.multiply, R.inverse, R.identity)
        w = self._C_images.express_element(x)
        L = self.left
        return w.evaluate(self.C[LEFT].gens, L.multiply, L.inverse, L.identity)

    # -- elements ---------------------------------------------------------------

    def from_word(self, word: Word) -> AmalgamElement:
        out = []
        for letter in self.alphabet.check(word):
            side, sym = self._side_of[letter.symbol.name]
            out.append((side, self.factors[side].letter_element(Letter(sym, letter.sign))))
        return self.normalize(AmalgamElement(tuple(out)))

    def parse(self, text: str) -> Word:
        return self.alphabet.parse(text)

    def element(self, x) -> AmalgamElement:
        if isinstance(x, str):
            x = self.parse(x)
        if isinstance(x, Word):
            return self.from_word(x)
        if isinstance(x, AmalgamElement):
            return self.normalize(x)
        raise ValidationError(f"cannot coerce {x!r} to an amalgam element")

    def factor_element(self, side: int, x) -> AmalgamElement:
        return self.normalize(AmalgamElement(((side, self.factors[side].element(x)),)))

    def _push(self, stack: list, side: int, g):
        G = self.factors[side]
        while True:
            if G.is_identity_element(g):
                return
            if not stack:
                stack.append((side, g))
                return
            top_side, top = stack[-1]
            if top_side == side:
                stack.pop()
                g = G.multiply(top, g)
                continue
            if self.C[side].contains(g):
                # move g across and absorb it into the neighbour
                stack.pop()
                side, G = top_side, self.factors[top_side]
                g = G.multiply(top, self.transport(1 - top_side, g))
                continue
            if len(stack) == 1 and self.C[top_side].contains(top):
                stack.pop()
                g = G.multiply(self.transport(top_side, top), g)
                continue
            stack.append((side, g))
            return

    def normalize(self, e: AmalgamElement) -> AmalgamElement:
        stack: list = []
        for side, g in e.syllables:
            self._push(stack, side, g)
        return AmalgamElement(tuple(stack))

    def multiply(self, x: AmalgamElement, y: AmalgamElement) -> AmalgamElement:
        stack = list(x.syllables)
        for side, g in y.syllables:
            self._push(stack, side, g)
        return AmalgamElement(tuple(stack))

    def inverse(self, x: AmalgamElement) -> AmalgamElement:
        return AmalgamElement(tuple((s, self.factors[s].inverse(g)) for s, g in reversed(x.syllables)))

    def is_identity_element(self, x: AmalgamElement) -> bool:
        return not self.normalize(x).syllables

    def is_identity(self, x) -> bool:
        return self.is_identity_element(self.element(x))

    def to_word(self, x: AmalgamElement) -> Word:
        letters = []
        for side, g in x.syllables:
            for letter in self.factors[side].to_word(g):
                letters.append(Letter(self.alphabet[letter.symbol.name], letter.sign))
        return free_reduce(letters)

    def format(self, x: AmalgamElement) -> str:
        w = self.to_word(x)
        return str(w) if w else "1"

    def describe(self) -> str:
        iso = ", ".join(f"{a} -> {self.right.format(b)}" for a, b in zip(self.C[LEFT].gen_words, self.iso_images))
        cl = ", ".join(str(w) for w in self.C[LEFT].gen_words)
        cr = ", ".join(str(w) for w in self.C[RIGHT].gen_words)
        return (
            f"amalgam left=({self.left.describe()}) right=({self.right.describe()}) "
            f'C_left=(subgroup gens="{cl}") C_right=(subgroup gens="{cr}") iso="{iso}"'
        )

    def __repr__(self):
        return f"<AmalgamPresentation {self.describe()}>"


def amalgam_is_identity(P: AmalgamPresentation, e) -> bool:
    if not isinstance(e, AmalgamElement):
        e = P.element(e)
    return P.is_identity_element(e)


def check_involution_lemma(G: GroupOracle, H: SubgroupHandle) -> bool:
    """If every ``x`` outside ``H`` squares into ``H`` then ``H`` is normal."""
    if not G.is_finite:
        raise PreconditionViolated("the involution lemma check needs a finite group")
    elements = G.elements()
    hypothesis = all(H.contains(G.multiply(x, x)) for x in elements if not H.contains(x))
    if not hypothesis:
        return True
    return all(
        H.contains(G.multiply(G.multiply(g, h), G.inverse(g)))
        for g in elements
        for h in elements
        if H.contains(h)
    )


def lemma53_conditions(A: GroupOracle, C: SubgroupHandle, a1, a2) -> list[tuple[str, bool]]:
    """The eight non-membership conditions, each as ``(expression, holds)``."""
    m, inv = A.multiply, A.inverse
    i1, i2 = inv(a1), inv(a2)
    checks = [
        ("a1", a1),
        ("a2", a2),
        ("a1^-1 a2", m(i1, a2)),
        ("a2 a1^-1", m(a2, i1)),
        ("a1^-1 a2 a1", m(m(i1, a2), a1)),
        ("a1 a2 a1^-1", m(m(a1, a2), i1)),
        ("a2^-1 a1 a2", m(m(i2, a1), a2)),
        ("a2 a1 a2^-1", m(m(a2, a1), i2)),
    ]
    return [(name, not C.contains(x)) for name, x in checks]


def lemma53_holds(A: GroupOracle, C: SubgroupHandle, a1, a2) -> bool:
    return a1 != a2 and all(ok for _, ok in lemma53_conditions(A, C, a1, a2))


def _candidates(A: GroupOracle) -> list:
    if A.is_finite:
        return list(A.elements())
    seen, out = set(), []
    for w in enumerate_reduced(A.alphabet, PAIR_SEARCH_LENGTH):
        x = A.element(w)
        if x not in seen:
            seen.add(x)
            out.append(x)
    return out


def find_lemma53_pair(A: GroupOracle, C: SubgroupHandle):
    """Distinct ``a1, a2`` with none of the eight derived elements in ``C``.

    Tries ``(x, x^2)`` first; when every ``x`` outside ``C`` squares into
    ``C`` the subgroup is normal and a search over pairs finds distinct
    nontrivial cosets with nontrivial quotient.
    """
    if A.is_finite and hasattr(C, "index") and C.index() < 3:
        raise NoPairFound(f"index of C in A is {C.index()} < 3")
    cands = _candidates(A)
    outside = [x for x in cands if not C.contains(x)]
    for x in outside:
        x2 = A.multiply(x, x)
        if lemma53_holds(A, C, x, x2):
            return x, x2
    for a1, a2 in itertools.permutations(outside, 2):
        if lemma53_holds(A, C, a1, a2):
            return a1, a2
    raise NoPairFound("no pair satisfies the eight conditions in the searched range")


# -- the witness generating set ---------------------------------------------------


def _xyz_alphabet() -> Alphabet:
    return Alphabet(["X", "Y", "Z"])


def witness_words(count: int, r: int, p: Optional[int] = None):
    """Words ``U_1..U_count`` and ``V_1..V_count`` over ``X, Y, Z``.

    ``U_i = xi w_i xi`` and ``V_j = (eta w_j eta)^-1`` where ``w_i`` spells
    ``i - 1`` in binary over ``{xi, eta}`` with ``p - 2`` digits, ``xi = XY``
    and ``eta = ZY``.  ``p`` starts at ``2r + 1`` and grows until the family
    is large enough and every ``U_i^e V_j^d`` keeps more than ``3p/2`` letters.
    Returns ``(p, U, V)``.
    """
    al = _xyz_alphabet()
    X, Y, Z = (al.gen(n) for n in "XYZ")
    xi, eta = X * Y, Z * Y
    p = p or 2 * r + 1
    while True:
        if 2 ** (p - 2) >= count:
            U, V = [], []
            for i in range(count):
                bits = format(i, f"0{p - 2}b")
                mid = Word.identity()
                for b in bits:
                    mid = mid * (eta if b == "1" else xi)
                U.append(xi * mid * xi)
                V.append((eta * mid * eta).inverse())
            if _witness_conditions_hold(U, V, p, r):
                return p, U, V
        p += 1


def _witness_conditions_hold(U, V, p, r) -> bool:
    if p <= 2 * r:
        return False
    for u in U:
        if len(u) != 2 * p or u.letters[-1].symbol.name != "Y" or u.letters[-1].sign != 1:
            return False
    for v in V:
        if len(v) != 2 * p or v.letters[0].symbol.name != "Y" or v.letters[0].sign != -1:
            return False
    for u in U:
        for v in V:
            for e in (1, -1):
                for d in (1, -1):
                    if 2 * len(u ** e * v ** d) <= 3 * p:
                        return False
    return True


def build_amalgam_witness(
    P: AmalgamPresentation,
    S1: Sequence,
    S2: Sequence,
    r: int,
    first: str = "left",
    p: Optional[int] = None,
) -> list[AmalgamElement]:
    """``{U_i a_i V_i} + {U_(n+j) a1 b_j a1 V_(n+j)} + {uv, wv}``.

    ``S1`` generates the factor named by ``first`` (the one where ``C`` has
    index at least 3) and ``S2`` the other factor.  The first two elements of
    ``S1`` play the roles of ``a1, a2``; ``u = a1 b1 a1^-1``,
    ``v = a2 b1 a2^-1`` and ``w = a1 a2 b1 a2^-1 a1^-1`` are substituted for
    ``X, Y, Z``.
    """
    if first not in ("left", "right"):
        raise ValidationError("first must be 'left' or 'right'")
    if r < 1:
        raise PreconditionViolated("r must be >= 1")
    sa = LEFT if first == "left" else RIGHT
    sb = 1 - sa
    A, B = P.factors[sa], P.factors[sb]
    CA, CB = P.C[sa], P.C[sb]
    S1 = [A.element(x) for x in S1]
    S2 = [B.element(x) for x in S2]
    if len(S1) < 2:
        raise PreconditionViolated("S1 needs at least two elements a1, a2")
    if not S2:
        raise PreconditionViolated("S2 must be nonempty")
    for i, x in enumerate(S1, 1):
        if CA.contains(x):
            raise PreconditionViolated(f"S1 element {i} ({A.format(x)}) lies in C")
    for j, x in enumerate(S2, 1):
        if CB.contains(x):
            raise PreconditionViolated(f"S2 element {j} ({B.format(x)}) lies in C")
    for name, ok in lemma53_conditions(A, CA, S1[0], S1[1]):
        if not ok:
            raise PreconditionViolated(f"condition fails: {name} lies in C")
    if S1[0] == S1[1]:
        raise PreconditionViolated("a1 and a2 must be distinct")
    if make_subgroup(A, [A.to_word(x) for x in S1]).is_proper():
        raise PreconditionViolated("S1 does not generate its factor")
    if make_subgroup(B, [B.to_word(x) for x in S2]).is_proper():
        raise PreconditionViolated("S2 does not generate its factor")

    def el(side, x):
        return P.normalize(AmalgamElement(((side, x),)))

    a1, a2, b1 = el(sa, S1[0]), el(sa, S1[1]), el(sb, S2[0])
    mul, inv = P.multiply, P.inverse

    def prod(*xs):
        out = P.identity
        for x in xs:
            out = mul(out, x)
        return out

    u = prod(a1, b1, inv(a1))
    v = prod(a2, b1, inv(a2))
    w = prod(a1, a2, b1, inv(a2), inv(a1))
    n, m = len(S1), len(S2)
    _, U, V = witness_words(n + m, r, p)
    images = [u, v, w]

    def subst(word):
        out = P.identity
        for letter in word:
            g = images[letter.symbol.id]
            out = mul(out, g if letter.sign == 1 else inv(g))
        return out

    out = [prod(subst(U[i]), el(sa, S1[i]), subst(V[i])) for i in range(n)]
    out += [prod(subst(U[n + j]), a1, el(sb, S2[j]), a1, subst(V[n + j])) for j in range(m)]
    out += [mul(u, v), mul(w, v)]
    return out

