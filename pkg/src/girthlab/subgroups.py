"""Subgroups with constructive membership.

Every handle answers ``contains`` on ambient elements and produces a
:class:`~girthlab.stallings.MembershipWitness` over the declared generators
``h1, h2, ...`` (in the order the user listed them).
"""
from __future__ import annotations

from collections import deque
from typing import Optional, Sequence

from .errors import NotMember, ValidationError
from .oracles import DihedralGroup, FiniteGroup, FreeAbelianGroup, FreeGroup, GroupOracle
from .stallings import MembershipWitness, StallingsAutomaton, subgroup_alphabet
from .words import Letter, Word, enumerate_reduced


class SubgroupHandle:
    kind = "abstract"

    def __init__(self, ambient: GroupOracle, gens: Sequence):
        self.ambient = ambient
        self.gen_words = [ambient.to_word(ambient.element(g)) if not isinstance(g, Word) else g for g in gens]
        for w in self.gen_words:
            ambient.alphabet.check(w)
        self.gens = [ambient.element(w) for w in self.gen_words]
        self.gen_alphabet = subgroup_alphabet(len(self.gens))

    # subclasses: contains(x), _express(x) -> Word over gen_alphabet, is_proper()

    def member(self, w) -> bool:
        return self.contains(self.ambient.element(w))

    def express_member(self, w) -> MembershipWitness:
        return self.express_element(self.ambient.element(w))

    def express_element(self, x) -> MembershipWitness:
        if not self.contains(x):
            raise NotMember(f"{self.ambient.format(x)} is not in {self.describe()}")
        return MembershipWitness(self._express(x), self.gen_alphabet)

    def evaluate(self, witness: MembershipWitness):
        G = self.ambient
        return witness.evaluate(self.gens, G.multiply, G.inverse, G.identity)

    def _hgen(self, i: int, power: int = 1) -> Word:
        sym = self.gen_alphabet.symbols[i]
        return Word._trusted((Letter(sym, 1 if power >= 0 else -1),) * abs(power))

    @property
    def is_independent(self) -> bool:
        """Whether a map defined on the declared generators is automatically well defined."""
        return False

    def describe(self) -> str:
        gens = ", ".join(str(w) or "1" for w in self.gen_words)
        return f"<{gens}> in {self.ambient.describe()}"

    def __repr__(self):
        return f"<{type(self).__name__} {self.describe()}>"


class FreeSubgroup(SubgroupHandle):
    kind = "stallings"

    def __init__(self, ambient: FreeGroup, gens):
        super().__init__(ambient, gens)
        if any(not g for g in self.gens):
            raise ValidationError("subgroup generators of a free group must be nontrivial")
        self.automaton = StallingsAutomaton(self.gens, ambient.alphabet)

    def contains(self, x: Word) -> bool:
        return self.automaton.contains(x)

    def _express(self, x: Word) -> Word:
        return self.automaton.express(x).expression

    def is_proper(self) -> bool:
        return not self.automaton.accepts_everything()

    @property
    def is_independent(self):
        return self.automaton.is_basis

    @property
    def rank(self):
        return self.automaton.rank


def _hermite(rows: list[list[int]]):
    """Integer row echelon form ``U @ rows = H`` with ``U`` unimodular.

    Returns (H, U, pivots) where the first ``len(pivots)`` rows of H are the
    nonzero ones, pivot entries positive.
    """
    k = len(rows)
    n = len(rows[0]) if rows else 0
    H = [list(r) for r in rows]
    U = [[int(i == j) for j in range(k)] for i in range(k)]
    pivots = []
    top = 0
    for col in range(n):
        while True:
            nz = [i for i in range(top, k) if H[i][col] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: (abs(H[i][col]), i))
            others = [i for i in nz if i != p]
            if not others:
                break
            for i in others:
                q = H[i][col] // H[p][col]
                H[i] = [a - q * b for a, b in zip(H[i], H[p])]
                U[i] = [a - q * b for a, b in zip(U[i], U[p])]
        nz = [i for i in range(top, k) if H[i][col] != 0]
        if not nz:
            continue
        p = nz[0]
        H[top], H[p] = H[p], H[top]
        U[top], U[p] = U[p], U[top]
        if H[top][col] < 0:
            H[top] = [-a for a in H[top]]
            U[top] = [-a for a in U[top]]
        for i in range(top):
            q = H[i][col] // H[top][col]
            if q:
                H[i] = [a - q * b for a, b in zip(H[i], H[top])]
                U[i] = [a - q * b for a, b in zip(U[i], U[top])]
        pivots.append(col)
        top += 1
    return H, U, pivots


class LatticeSubgroup(SubgroupHandle):
    """Subgroup of Z^n, membership by integer row reduction."""

    kind = "lattice"

    def __init__(self, ambient: FreeAbelianGroup, gens):
        super().__init__(ambient, gens)
        self.n = ambient.rank
        if self.gens:
            self.H, self.U, self.pivots = _hermite([list(g) for g in self.gens])
        else:
            self.H, self.U, self.pivots = [], [], []
        self.lattice_rank = len(self.pivots)

    def _solve(self, x):
        v = list(x)
        coeffs = []
        for i, col in enumerate(self.pivots):
            q, r = divmod(v[col], self.H[i][col])
            if r:
                return None
            coeffs.append(q)
            if q:
                v = [a - q * b for a, b in zip(v, self.H[i])]
        if any(v):
            return None
        return coeffs

    def contains(self, x) -> bool:
        return self._solve(x) is not None

    def coefficients(self, x) -> list[int]:
        """Integer coefficients over the declared generators."""
        coeffs = self._solve(x)
        if coeffs is None:
            raise NotMember(f"{x} is not in {self.describe()}")
        k = len(self.gens)
        return [sum(c * self.U[i][j] for i, c in enumerate(coeffs)) for j in range(k)]

    def _express(self, x) -> Word:
        out = Word.identity()
        for j, c in enumerate(self.coefficients(x)):
            out = out * self._hgen(j, c)
        return out

    def is_proper(self) -> bool:
        if self.lattice_rank < self.n:
            return True
        det = 1
        for i, col in enumerate(self.pivots):
            det *= self.H[i][col]
        return det != 1

    def index(self) -> Optional[int]:
        if self.lattice_rank < self.n:
            return None
        det = 1
        for i, col in enumerate(self.pivots):
            det *= self.H[i][col]
        return det

    @property
    def is_independent(self):
        return self.lattice_rank == len(self.gens)


def _ext_gcd(a: int, b: int):
    if b == 0:
        return (a, 1, 0) if a >= 0 else (-a, -1, 0)
    g, x, y = _ext_gcd(b, a % b)
    return g, y, x - (a // b) * y


class DihedralSubgroup(SubgroupHandle):
    """Subgroup of D_q in coordinates: rotations by multiples of ``step`` and
    optionally the reflections ``(ab)^(offset + k*step) a``.

    ``step == 0`` means no nontrivial rotations (infinite case); for finite
    ``q`` the step divides ``q`` and ``step == q`` plays that role.
    """

    kind = "dihedral"

    def __init__(self, ambient: DihedralGroup, gens):
        super().__init__(ambient, gens)
        q = ambient.q
        rotations = []  # (translation, expression)
        reflection = None  # (index, offset)
        for i, g in enumerate(self.gens):
            if g.flip == 0:
                rotations.append((g.translation, self._hgen(i)))
            elif reflection is None:
                reflection = (i, g.translation)
            else:
                j, o = reflection
                rotations.append((g.translation - o, self._hgen(i) * self._hgen(j)))
        if q is not None:
            rotations.append((q, Word.identity()))
        step, expr = 0, Word.identity()
        for value, e in rotations:
            g, s, t = _ext_gcd(step, value)
            expr = expr ** s * e ** t
            step = g
        self.step = step
        self.step_expression = expr
        self.reflection = reflection
        if reflection is not None:
            self.offset = reflection[1] % step if step else reflection[1]
        else:
            self.offset = None

    @property
    def _trivial_step(self):
        q = self.ambient.q
        return self.step == 0 or (q is not None and self.step == q)

    def contains(self, x) -> bool:
        if x.flip == 0:
            k = x.translation
            return k == 0 if self.step == 0 else k % self.step == 0
        if self.reflection is None:
            return False
        k = x.translation - self.reflection[1]
        return k == 0 if self.step == 0 else k % self.step == 0

    def _express(self, x) -> Word:
        if x.flip == 0:
            m = 0 if self.step == 0 else x.translation // self.step
            return self.step_expression ** m
        i, o = self.reflection
        m = 0 if self.step == 0 else (x.translation - o) // self.step
        return self.step_expression ** m * self._hgen(i)

    def is_proper(self) -> bool:
        return not (self.reflection is not None and self.step == 1)

    @property
    def structure(self) -> tuple:
        """``("rotation", step)``, ``("reflection", offset)`` or ``("gmn", m, n)``."""
        if self.reflection is None:
            return ("rotation", 0 if self._trivial_step else self.step)
        if self._trivial_step:
            return ("reflection", self.reflection[1] % self.ambient.q if self.ambient.q else self.reflection[1])
        m = self.offset
        return ("gmn", m, self.step - 1 - m)

    @property
    def is_independent(self):
        return False


def gmn(G: DihedralGroup, m: int, n: int) -> DihedralSubgroup:
    """``G_{m,n} = <a(ba)^m, b(ab)^n>``."""
    if m < 0 or n < 0:
        raise ValidationError("G_{m,n} needs m, n >= 0")
    a, b = G.alphabet.gen(G.alphabet.names[0]), G.alphabet.gen(G.alphabet.names[1])
    return DihedralSubgroup(G, [a * (b * a) ** m, b * (a * b) ** n])


class FiniteSubgroup(SubgroupHandle):
    """Subgroup of a Cayley-table group, closed by BFS with shortest witnesses."""

    kind = "finite"

    def __init__(self, ambient: FiniteGroup, gens):
        super().__init__(ambient, gens)
        p = ambient.table.product
        inv = ambient.table.inverse
        witness = {0: Word.identity()}
        queue = deque([0])
        steps = []
        for i, g in enumerate(self.gens):
            steps.append((g, self._hgen(i)))
            steps.append((inv[g], self._hgen(i, -1)))
        while queue:
            x = queue.popleft()
            for g, h in steps:
                y = p[x][g]
                if y not in witness:
                    witness[y] = witness[x] * h
                    queue.append(y)
        self.elements = frozenset(witness)
        self._witness = witness

    @classmethod
    def from_elements(cls, ambient: FiniteGroup, elements) -> "FiniteSubgroup":
        elements = frozenset(elements)
        if not ambient.table.is_subgroup(elements):
            raise ValidationError("element set is not a subgroup")
        return cls(ambient, ambient.table.greedy_generators(elements))

    def contains(self, x: int) -> bool:
        return x in self.elements

    def _express(self, x: int) -> Word:
        return self._witness[x]

    def is_proper(self) -> bool:
        return len(self.elements) < self.ambient.order

    def order(self) -> int:
        return len(self.elements)

    def index(self) -> int:
        return self.ambient.order // len(self.elements)

    def is_normal(self) -> bool:
        return self.ambient.table.is_normal(self.elements)


def make_subgroup(G: GroupOracle, gens) -> SubgroupHandle:
    """Build the handle matching the ambient oracle's kind."""
    if isinstance(G, FreeGroup):
        return FreeSubgroup(G, gens)
    if isinstance(G, FreeAbelianGroup):
        return LatticeSubgroup(G, gens)
    if isinstance(G, DihedralGroup):
        return DihedralSubgroup(G, gens)
    if isinstance(G, FiniteGroup):
        return FiniteSubgroup(G, gens)
    raise ValidationError(f"no subgroup support for {G!r}")


def whole_group(G: GroupOracle) -> SubgroupHandle:
    return make_subgroup(G, [G.alphabet.gen(s.name) for s in G.alphabet])


def is_proper(H: SubgroupHandle) -> bool:
    return H.is_proper()


def member(H: SubgroupHandle, w) -> bool:
    return H.member(w)


def express_member(H: SubgroupHandle, w) -> MembershipWitness:
    return H.express_member(w)


def odd_word_coverage_check(K: SubgroupHandle, L: SubgroupHandle, max_len: int) -> bool:
    """Whether every reduced word of odd length <= max_len in D_q lies in K or L.

    Reduced words in the dihedral group alternate the two generators, so
    there are exactly two of each length.
    """
    G = K.ambient
    if not isinstance(G, DihedralGroup):
        raise ValidationError("odd word coverage is defined for dihedral ambients")
    a, b = G.alphabet.gen(G.alphabet.names[0]), G.alphabet.gen(G.alphabet.names[1])
    for length in range(1, max_len + 1, 2):
        for first, second in ((a, b), (b, a)):
            w = (first * second) ** (length // 2) * first
            x = G.element(w)
            if not (K.contains(x) or L.contains(x)):
                return False
    return True


DESK_CHECK_LENGTH = 6


def _evaluate_in(G: GroupOracle, w: Word, images: Sequence):
    x = G.identity
    for letter in w:
        g = images[letter.symbol.id]
        x = G.multiply(x, g if letter.sign == 1 else G.inverse(g))
    return x


def check_isomorphism(src: SubgroupHandle, target: GroupOracle, images: Sequence, image_subgroup=None):
    """Check that ``src.gens[i] -> images[i]`` extends to an injective homomorphism.

    Finite sources are checked exactly by a closure walk; free and free abelian
    sources and targets by independence of both generator lists; anything else
    by comparing relations among reduced words up to ``DESK_CHECK_LENGTH``.
    Raises ValidationError on failure.
    """
    G = src.ambient
    if len(images) != len(src.gens):
        raise ValidationError(f"need {len(src.gens)} images, got {len(images)}")
    if not src.gens:
        return
    if G.is_finite:
        steps = list(zip(src.gens, images))
        steps += [(G.inverse(g), target.inverse(h)) for g, h in steps]
        image = {G.identity: target.identity}
        frontier = [G.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g, h in steps:
                    y, fy = G.multiply(x, g), target.multiply(image[x], h)
                    if y in image:
                        if image[y] != fy:
                            raise ValidationError("the map does not extend to a homomorphism")
                    else:
                        image[y] = fy
                        nxt.append(y)
            frontier = nxt
        if len(set(image.values())) != len(image):
            raise ValidationError("the map is not injective")
        return
    if isinstance(G, (FreeGroup, FreeAbelianGroup)) and isinstance(target, (FreeGroup, FreeAbelianGroup)):
        if not src.is_independent:
            raise ValidationError(f"declared generators are not a basis, the map is ill defined: {src.describe()}")
        if image_subgroup is None:
            image_subgroup = make_subgroup(target, images)
        if not image_subgroup.is_independent:
            raise ValidationError("the map is not injective: the images of the basis are dependent")
        return
    for w in enumerate_reduced(src.gen_alphabet, DESK_CHECK_LENGTH):
        lhs = _evaluate_in(G, w, src.gens)
        rhs = _evaluate_in(target, w, images)
        if G.is_identity_element(lhs) != target.is_identity_element(rhs):
            raise ValidationError(f"the map does not extend to an isomorphism: relation check fails on {w}")

