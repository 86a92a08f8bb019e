"""HNN extensions ``<G, t | t^-1 a t = phi(a), a in A>`` and Britton reduction."""
from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import (
    GeneratorInSubgroup,
    IdentityGenerator,
    NotAscending,
    NotMember,
    PhiInverseUnavailable,
    PreconditionViolated,
    ValidationError,
)
from .oracles import DihedralGroup, GroupOracle
from .subgroups import SubgroupHandle, check_isomorphism, make_subgroup
from .words import Letter, Word


class Classification(enum.Enum):
    PROPER = "Proper"
    SEMI_PROPER = "SemiProper"
    FULL = "Full"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class HnnElement:
    """``bases[0] t^exps[0] bases[1] ... t^exps[-1] bases[-1]`` with base elements in normal form."""

    bases: tuple
    exps: tuple

    @property
    def syllables(self) -> tuple:
        out = [self.bases[0]]
        for e, g in zip(self.exps, self.bases[1:]):
            out += [e, g]
        return tuple(out)

    @property
    def t_length(self) -> int:
        return len(self.exps)


class HnnPresentation:
    """An HNN extension of a supported base group.

    ``phi`` gives the image of each declared generator of ``A`` (a list in the
    same order, or a mapping keyed by the generator words).  The presentation
    is validated on construction: images lie in ``B``, generate ``B``, and
    the induced map is an isomorphism ``A -> B``.
    """

    def __init__(
        self,
        base: GroupOracle,
        A: SubgroupHandle,
        B: SubgroupHandle,
        phi,
        stable: str = "t",
        validate: bool = True,
    ):
        if A.ambient is not base or B.ambient is not base:
            raise ValidationError("A and B must be subgroups of the base group")
        self.base = base
        self.A = A
        self.B = B
        self.stable_name = stable
        try:
            self.alphabet = base.alphabet.extend(stable)
        except ValueError as exc:
            raise ValidationError(str(exc)) from None
        self.t = self.alphabet[stable]
        self.phi_images = self._align_phi(phi)
        self.phi_words = [base.to_word(x) for x in self.phi_images]
        for gw, img in zip(A.gen_words, self.phi_images):
            if not B.contains(img):
                raise ValidationError(
                    f"phi({gw}) = {base.format(img)} does not lie in B = {B.describe()}"
                )
        self._B_images = make_subgroup(base, self.phi_words) if self.phi_words else None
        if validate:
            self._validate_isomorphism()
        self.identity = HnnElement((base.identity,), ())

    def _align_phi(self, phi) -> list:
        base = self.base
        if isinstance(phi, dict):
            images = [None] * len(self.A.gens)
            for key, value in phi.items():
                x = base.element(key)
                hits = [i for i, g in enumerate(self.A.gens) if g == x]
                if not hits:
                    raise ValidationError(f"phi is given on {key}, which is not a declared generator of A")
                for i in hits:
                    images[i] = base.element(value)
            missing = [str(self.A.gen_words[i]) for i, v in enumerate(images) if v is None]
            if missing:
                raise ValidationError(f"phi has no image for generator(s) {missing}")
            return images
        images = [base.element(v) for v in phi]
        if len(images) != len(self.A.gens):
            raise ValidationError(f"phi needs {len(self.A.gens)} images, got {len(images)}")
        return images

    def _validate_isomorphism(self):
        base, A, B = self.base, self.A, self.B
        Bi = self._B_images
        for gw in B.gen_words:
            if Bi is None:
                if not base.is_identity(gw):
                    raise ValidationError("phi images do not generate B")
            elif not Bi.member(gw):
                raise ValidationError(f"phi images do not generate B: {gw} is missed")
        check_isomorphism(A, base, self.phi_images, Bi)

    # -- the structural isomorphism --------------------------------------------

    def phi(self, x):
        x = self.base.element(x)
        witness = self.A.express_element(x)
        return witness.evaluate(self.phi_images, self.base.multiply, self.base.inverse, self.base.identity)

    def phi_inverse(self, x):
        x = self.base.element(x)
        if self._B_images is None:
            if self.base.is_identity_element(x):
                return self.base.identity
            raise NotMember("B is trivial")
        try:
            witness = self._B_images.express_element(x)
        except NotMember:
            raise
        except Exception as exc:  # pragma: no cover - defensive
            raise PhiInverseUnavailable(str(exc)) from exc
        return witness.evaluate(self.A.gens, self.base.multiply, self.base.inverse, self.base.identity)

    # -- elements ----------------------------------------------------------------

    def from_word(self, word: Word) -> HnnElement:
        """Split a word over base letters and ``t`` into syllables (no reduction)."""
        base = self.base
        bases, exps = [], []
        cur = base.identity
        for letter in self.alphabet.check(word):
            if letter.symbol == self.t:
                bases.append(cur)
                exps.append(letter.sign)
                cur = base.identity
            else:
                cur = base.multiply(cur, base.letter_element(Letter(base.alphabet[letter.symbol.name], letter.sign)))
        bases.append(cur)
        return HnnElement(tuple(bases), tuple(exps))

    def element(self, x) -> HnnElement:
        """Coerce words or strings to Britton-reduced elements."""
        if isinstance(x, str):
            x = self.alphabet.parse(x)
        if isinstance(x, Word):
            x = self.from_word(x)
        if isinstance(x, HnnElement):
            return self.reduce(x)
        return HnnElement((self.base.element(x),), ())

    def parse(self, text: str) -> Word:
        return self.alphabet.parse(text)

    def to_word(self, e: HnnElement) -> Word:
        out = self.base.to_word(e.bases[0])
        tw = Word._trusted((Letter(self.t, 1),))
        for eps, g in zip(e.exps, e.bases[1:]):
            out = out * (tw if eps == 1 else tw.inverse()) * self.base.to_word(g)
        return self._lift(out)

    def _lift(self, w: Word) -> Word:
        # base symbols and HNN symbols share names and ids
        return Word._trusted(tuple(Letter(self.alphabet[l.symbol.name], l.sign) for l in w))

    def format(self, e: HnnElement) -> str:
        w = self.to_word(e)
        return str(w) if w else "1"

    def _push(self, bases: list, exps: list, e: HnnElement):
        """Append ``e`` to the reduced stack (bases, exps) in place."""
        base = self.base
        bases[-1] = base.multiply(bases[-1], e.bases[0])
        for eps, g in zip(e.exps, e.bases[1:]):
            if exps and exps[-1] == -eps:
                mid = bases[-1]
                if eps == 1 and self.A.contains(mid):
                    exps.pop()
                    bases.pop()
                    bases[-1] = base.multiply(bases[-1], self.phi(mid))
                    bases[-1] = base.multiply(bases[-1], g)
                    continue
                if eps == -1 and self.B.contains(mid):
                    exps.pop()
                    bases.pop()
                    bases[-1] = base.multiply(bases[-1], self._phi_inv_checked(mid))
                    bases[-1] = base.multiply(bases[-1], g)
                    continue
            exps.append(eps)
            bases.append(g)

    def _phi_inv_checked(self, x):
        try:
            return self.phi_inverse(x)
        except NotMember as exc:
            raise PhiInverseUnavailable(f"cannot apply phi^-1 to {self.base.format(x)}: {exc}") from exc

    def reduce(self, e: HnnElement) -> HnnElement:
        bases, exps = [self.base.identity], []
        self._push(bases, exps, e)
        return HnnElement(tuple(bases), tuple(exps))

    def multiply(self, x: HnnElement, y: HnnElement) -> HnnElement:
        bases, exps = list(x.bases), list(x.exps)
        self._push(bases, exps, y)
        return HnnElement(tuple(bases), tuple(exps))

    def inverse(self, x: HnnElement) -> HnnElement:
        inv = self.base.inverse
        return HnnElement(tuple(inv(g) for g in reversed(x.bases)), tuple(-e for e in reversed(x.exps)))

    def is_identity_element(self, x: HnnElement) -> bool:
        x = self.reduce(x)
        return not x.exps and self.base.is_identity_element(x.bases[0])

    def is_identity(self, x) -> bool:
        return self.is_identity_element(self.element(x))

    def t_power(self, k: int) -> HnnElement:
        one = self.base.identity
        sign = 1 if k >= 0 else -1
        return HnnElement((one,) * (abs(k) + 1), (sign,) * abs(k))

    def describe(self) -> str:
        phi = ", ".join(f"{a} -> {b}" for a, b in zip(self.A.gen_words, self.phi_words))
        return (
            f"hnn base=({self.base.describe()}) A=({_sub_desc(self.A)}) "
            f"B=({_sub_desc(self.B)}) phi=\"{phi}\" stable={self.stable_name}"
        )

    def __repr__(self):
        return f"<HnnPresentation {self.describe()}>"


def _sub_desc(H: SubgroupHandle) -> str:
    return 'subgroup gens="' + ", ".join(str(w) or "1" for w in H.gen_words) + '"'


def classify(P: HnnPresentation) -> Classification:
    a, b = P.A.is_proper(), P.B.is_proper()
    if a and b:
        return Classification.PROPER
    if a or b:
        return Classification.SEMI_PROPER
    return Classification.FULL


def britton_reduce(P: HnnPresentation, e) -> HnnElement:
    if not isinstance(e, HnnElement):
        e = P.from_word(e if isinstance(e, Word) else P.parse(e))
    return P.reduce(e)


def is_identity_hnn(P: HnnPresentation, e) -> bool:
    r = britton_reduce(P, e)
    return not r.exps and P.base.is_identity_element(r.bases[0])


def ascending_normal_form(P: HnnPresentation, e):
    """Return ``(p, g, q)`` with ``e = t^p g t^-q``; needs ``A`` to be the whole base."""
    if P.A.is_proper():
        raise NotAscending("A is a proper subgroup; the extension is not ascending")
    base = P.base
    r = britton_reduce(P, e)
    p = sum(1 for x in r.exps if x == 1)
    q = len(r.exps) - p
    if r.exps != (1,) * p + (-1,) * q:
        raise AssertionError("Britton-reduced ascending element has a t^-1 before a t")
    h = r.bases[0]
    for g in r.bases[1 : p + 1]:
        h = base.multiply(P.phi(h), g)
    if q:
        k = r.bases[-1]
        for g in reversed(r.bases[p + 1 : -1]):
            k = base.multiply(g, P.phi(k))
        h = base.multiply(h, P.phi(k))
    while p > 0 and q > 0 and P.B.contains(h):
        h = P.phi_inverse(h)
        p -= 1
        q -= 1
    return p, h, q


# -- witness generating sets -------------------------------------------------------


def _conj(P: HnnPresentation, left: int, s, right: int) -> HnnElement:
    """``t^left s t^right`` as a reduced element."""
    x = P.multiply(P.t_power(left), HnnElement((P.base.element(s),), ()))
    return P.multiply(x, P.t_power(right))


def _check_s(P: HnnPresentation, S, avoid_A=True, avoid_B=True, label="s"):
    base = P.base
    out = []
    for i, s in enumerate(S, 1):
        x = base.element(s)
        name = f"{label}{i} = {base.format(x)}"
        if base.is_identity_element(x):
            raise IdentityGenerator(f"{name} is the identity")
        if avoid_A and P.A.contains(x):
            raise GeneratorInSubgroup(f"{name} lies in A")
        if avoid_B and P.B.contains(x):
            raise GeneratorInSubgroup(f"{name} lies in B")
        out.append(x)
    return out


def build_witness_set_31(P: HnnPresentation, S, r: int) -> list[HnnElement]:
    """``{t, t^r s1 t^-2r, t^3r s2 t^-4r, ..., t^(2n-1)r sn t^-2nr}``."""
    if r < 1:
        raise PreconditionViolated("r must be >= 1")
    xs = _check_s(P, S)
    out = [P.t_power(1)]
    for i, x in enumerate(xs, 1):
        out.append(_conj(P, (2 * i - 1) * r, x, -2 * i * r))
    return out


def build_witness_set_32(P: HnnPresentation, S, r: int) -> list[HnnElement]:
    """``{t, t^-r s1 t^2r, ..., t^-(2n-3)r s_(n-1) t^(2n-2)r, u^r s_n u^-2r}``,
    ``u = t^-(2n-3)r s_(n-1) t^(2n-2)r``; ``s_n`` may lie in ``A`` but not in ``B``."""
    n = len(S)
    if n < 2:
        raise PreconditionViolated("need n >= 2 generators")
    if r < 1:
        raise PreconditionViolated("r must be >= 1")
    head = _check_s(P, S[:-1])
    try:
        (last,) = _check_s(P, S[-1:], avoid_A=False)
    except GeneratorInSubgroup as exc:
        raise PreconditionViolated(f"s_n must avoid B: {exc}") from None
    out = [P.t_power(1)]
    for i, x in enumerate(head, 1):
        out.append(_conj(P, -(2 * i - 1) * r, x, 2 * i * r))
    u = out[-1]
    last_el = HnnElement((last,), ())
    u_r = _power(P, u, r)
    out.append(P.multiply(P.multiply(u_r, last_el), _power(P, u, -2 * r)))
    return out


def witness_32_conjugator(P: HnnPresentation, S, r: int) -> HnnElement:
    n = len(S)
    x = P.base.element(S[n - 2])
    return _conj(P, -(2 * n - 3) * r, x, (2 * n - 2) * r)


def build_witness_set_dihedral(P: HnnPresentation, r: int) -> list[HnnElement]:
    """``{t, t^r a t^-2r, t^-r b t^2r}`` for a dihedral base with ``a in A``, ``b in B``."""
    base = P.base
    if not isinstance(base, DihedralGroup):
        raise PreconditionViolated("base group must be dihedral")
    if r < 1:
        raise PreconditionViolated("r must be >= 1")
    a, b = (base.alphabet.gen(n) for n in base.alphabet.names)
    if not P.A.member(a):
        raise PreconditionViolated("a does not lie in A")
    if not P.B.member(b):
        raise PreconditionViolated("b does not lie in B")
    return [P.t_power(1), _conj(P, r, a, -2 * r), _conj(P, -r, b, 2 * r)]


def _power(P: HnnPresentation, x: HnnElement, k: int) -> HnnElement:
    if k < 0:
        x, k = P.inverse(x), -k
    out = P.identity
    for _ in range(k):
        out = P.multiply(out, x)
    return out
