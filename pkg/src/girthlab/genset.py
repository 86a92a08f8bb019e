"""Generating sets that avoid (or nearly avoid) a pair of proper subgroups.

Two routes are implemented.  The complement route takes everything outside
``A u B`` and extracts a generating subset greedily; it either succeeds or
the complement generates a proper subgroup, in which case the group maps
onto the Klein four-group.  The move route starts from any generating set
and applies the two exchange moves (``s1 -> s1 s2`` across ``A \\ B`` and
``B \\ A``, and ``s1 -> s1 s3`` with ``s3`` outside both) to push elements
out of ``A u B``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import NamedTuple, Optional

from .errors import (
    DuplicateElement,
    PreconditionViolated,
    SearchExhausted,
    SubgroupNotProper,
    Unsupported,
)
from .finite import closure_of
from .oracles import DihedralGroup, FiniteGroup, FreeAbelianGroup, GroupOracle, klein_four_quotient_exists
from .subgroups import FiniteSubgroup, SubgroupHandle, make_subgroup
from .words import enumerate_reduced

INFINITE_SEARCH_LENGTH = 6
EXHAUSTIVE_CROSS_CHECK_ORDER = 24


@dataclass(frozen=True)
class GensetProfile:
    alpha: int  # in A \ B
    beta: int  # in B \ A
    gamma: int  # in A n B
    delta: int  # outside A u B

    @property
    def size(self) -> int:
        return self.alpha + self.beta + self.gamma + self.delta

    @property
    def in_union(self) -> int:
        return self.alpha + self.beta + self.gamma

    def as_dict(self) -> dict:
        return {"alpha": self.alpha, "beta": self.beta, "gamma": self.gamma, "delta": self.delta}


@dataclass(frozen=True)
class KleinObstruction:
    """The complement of ``A u B`` generates only ``generated`` elements."""

    generated: int
    order: int

    def __str__(self):
        return f"KleinObstruction(complement generates {self.generated} of {self.order} elements)"


class MoveResult(NamedTuple):
    S: list
    delta_before: int
    delta_after: int

    @property
    def delta_increased(self) -> bool:
        return self.delta_after > self.delta_before


def _elements(G: GroupOracle, S) -> list:
    out = [G.element(x) for x in S]
    for i, x in enumerate(out):
        for y in out[:i]:
            if x == y:
                raise DuplicateElement(f"{G.format(x)} occurs twice in S")
    return out


def _where(A: SubgroupHandle, B: SubgroupHandle, x) -> str:
    a, b = A.contains(x), B.contains(x)
    if a and b:
        return "gamma"
    if a:
        return "alpha"
    if b:
        return "beta"
    return "delta"


def profile(G: GroupOracle, A: SubgroupHandle, B: SubgroupHandle, S) -> GensetProfile:
    counts = {"alpha": 0, "beta": 0, "gamma": 0, "delta": 0}
    for x in _elements(G, S):
        counts[_where(A, B, x)] += 1
    return GensetProfile(**counts)


def _replace(G: GroupOracle, S: list, old, new) -> list:
    # in place; the new element is dropped if it is trivial or already present
    keep = new not in S and not G.is_identity_element(new)
    return [new if x == old else x for x in S if x != old or keep]


def claim1_move(G: GroupOracle, A: SubgroupHandle, B: SubgroupHandle, S, s1, s2) -> MoveResult:
    """Replace ``s1 in A \\ B`` by ``s1 s2`` for ``s2 in B \\ A``."""
    S = _elements(G, S)
    s1, s2 = G.element(s1), G.element(s2)
    if s1 not in S or s2 not in S:
        raise PreconditionViolated("s1 and s2 must both belong to S")
    if _where(A, B, s1) != "alpha":
        raise PreconditionViolated(f"s1 = {G.format(s1)} is not in A \\ B")
    if _where(A, B, s2) != "beta":
        raise PreconditionViolated(f"s2 = {G.format(s2)} is not in B \\ A")
    before = profile(G, A, B, S).delta
    out = _replace(G, S, s1, G.multiply(s1, s2))
    return MoveResult(out, before, profile(G, A, B, out).delta)


def claim2_move(G: GroupOracle, A: SubgroupHandle, B: SubgroupHandle, S, s1, s3) -> MoveResult:
    """Replace ``s1 in A`` by ``s1 s3`` for ``s3`` outside ``A u B``."""
    S = _elements(G, S)
    s1, s3 = G.element(s1), G.element(s3)
    if s1 not in S or s3 not in S:
        raise PreconditionViolated("s1 and s3 must both belong to S")
    if not (A.contains(s1) or B.contains(s1)):
        raise PreconditionViolated(f"s1 = {G.format(s1)} lies outside A u B")
    if _where(A, B, s3) != "delta":
        raise PreconditionViolated(f"s3 = {G.format(s3)} is not outside A u B")
    before = profile(G, A, B, S).delta
    out = _replace(G, S, s1, G.multiply(s1, s3))
    return MoveResult(out, before, profile(G, A, B, out).delta)


# -- finite groups ---------------------------------------------------------------------


def _element_order(G: GroupOracle, x) -> int:
    if isinstance(G, FiniteGroup):
        return G.table.element_order(x)
    k, y = 1, x
    while not G.is_identity_element(y):
        y = G.multiply(y, x)
        k += 1
    return k


def _closure_size(G: GroupOracle, gens) -> int:
    if isinstance(G, FiniteGroup):
        return len(G.table.closure(gens))
    return len(closure_of(list(gens), G.multiply, G.identity))


def _generates(G: GroupOracle, gens) -> bool:
    return _closure_size(G, gens) == len(G.elements())


def _greedy(G: GroupOracle, pool, start=()) -> Optional[list]:
    """Extend ``start`` by elements of ``pool`` (largest order first) until it generates."""
    n = len(G.elements())
    keyed = sorted(pool, key=lambda x: (-_element_order(G, x), _sort_key(x)))
    gens = list(start)
    if _closure_size(G, gens) == n:
        return gens
    for x in keyed:
        if x in gens:
            continue
        size = _closure_size(G, gens)
        if _closure_size(G, gens + [x]) > size:
            gens.append(x)
            if _closure_size(G, gens) == n:
                return gens
    return None


def _sort_key(x):
    return x if isinstance(x, int) else repr(x)


def _require_proper(A: SubgroupHandle, B: SubgroupHandle):
    for name, H in (("A", A), ("B", B)):
        if not H.is_proper():
            raise SubgroupNotProper(f"{name} = {H.describe()} is the whole group")


def find_avoiding_genset(G: GroupOracle, A: SubgroupHandle, B: SubgroupHandle):
    """A generating set inside ``G \\ (A u B)``, or a :class:`KleinObstruction`.

    For the infinite dihedral group and ``Z^2`` a bounded search over pairs of
    short words is used instead; it raises SearchExhausted when it finds nothing.
    """
    _require_proper(A, B)
    if not G.is_finite:
        pair = _pair_search(G, A, B, max_in_union=0)
        if pair is None:
            raise SearchExhausted("no avoiding pair among words of length <= 6")
        return pair
    elements = list(G.elements())
    complement = [x for x in elements if not (A.contains(x) or B.contains(x))]
    S = _greedy(G, complement)
    if S is not None:
        return S
    obstruction = KleinObstruction(_closure_size(G, complement), len(elements))
    if not klein_four_quotient_exists(G):
        raise AssertionError(
            f"complement of A u B fails to generate but {G.describe()} has no Klein four quotient"
        )
    return obstruction


def is_nearly_avoiding(p: GensetProfile) -> bool:
    return p.in_union <= 1 and min(p.alpha, p.beta) == 0


def _hill_climb(G: GroupOracle, A: SubgroupHandle, B: SubgroupHandle, S: list) -> Optional[list]:
    n = len(G.elements())
    for _ in range(n * n):
        p = profile(G, A, B, S)
        if is_nearly_avoiding(p):
            return S
        by = {k: [x for x in S if _where(A, B, x) == k] for k in ("alpha", "beta", "gamma", "delta")}
        if by["alpha"] and by["beta"]:
            S = claim1_move(G, A, B, S, by["alpha"][0], by["beta"][0]).S
            continue
        moved = False
        for s1 in by["alpha"] + by["beta"] + by["gamma"]:
            for s3 in by["delta"]:
                r = claim2_move(G, A, B, S, s1, s3)
                if r.delta_increased:
                    S, moved = r.S, True
                    break
            if moved:
                break
        if not moved:
            return None
    return None


def find_nearly_avoiding_genset(G: GroupOracle, A: SubgroupHandle, B: SubgroupHandle) -> list:
    """A generating set with at most one element in ``A u B`` and ``min(alpha, beta) = 0``."""
    _require_proper(A, B)
    if not G.is_finite:
        if isinstance(G, DihedralGroup) or (isinstance(G, FreeAbelianGroup) and G.rank == 2):
            pair = _pair_search(G, A, B, max_in_union=1)
            if pair is None:
                raise SearchExhausted("no nearly avoiding pair among words of length <= 6")
            return pair
        raise Unsupported(f"no nearly-avoiding search for {G.describe()}")
    first = find_avoiding_genset(G, A, B)
    if not isinstance(first, KleinObstruction):
        return first
    elements = list(G.elements())
    start = _greedy(G, [x for x in elements if not G.is_identity_element(x)])
    S = _hill_climb(G, A, B, list(start))
    if S is not None:
        return S
    complement = [x for x in elements if not (A.contains(x) or B.contains(x))]
    for x in sorted((x for x in elements if not G.is_identity_element(x)), key=_sort_key):
        if A.contains(x) or B.contains(x):
            S = _greedy(G, complement, start=[x])
            if S is not None:
                return S
    raise SearchExhausted("no generating set with at most one element in A u B")


def _pair_search(G: GroupOracle, A: SubgroupHandle, B: SubgroupHandle, max_in_union: int):
    seen, cands = set(), []
    for w in enumerate_reduced(G.alphabet, INFINITE_SEARCH_LENGTH):
        x = G.element(w)
        if x not in seen and not G.is_identity_element(x):
            seen.add(x)
            cands.append((w, x))
    for allowed in range(max_in_union + 1):
        for (w1, x1), (w2, x2) in itertools.combinations(cands, 2):
            S = [x1, x2]
            p = profile(G, A, B, S)
            if p.in_union != allowed or min(p.alpha, p.beta) != 0:
                continue
            if not make_subgroup(G, [w1, w2]).is_proper():
                return S
    return None


def has_property_P(G: GroupOracle, cross_check: Optional[bool] = None) -> bool:
    """No Klein four quotient; for small groups confirmed over all subgroup pairs."""
    if not G.is_finite:
        raise Unsupported("property (P) is decided for finite groups only")
    answer = not klein_four_quotient_exists(G)
    if cross_check is None:
        cross_check = isinstance(G, FiniteGroup) and G.order <= EXHAUSTIVE_CROSS_CHECK_ORDER
    if cross_check:
        exhaustive = property_P_exhaustive(G)
        if exhaustive != answer:
            raise AssertionError(f"Klein criterion and exhaustive sweep disagree on {G.describe()}")
    return answer


def proper_subgroups(G: FiniteGroup) -> list[FiniteSubgroup]:
    return [FiniteSubgroup.from_elements(G, H) for H in G.table.all_subgroups() if len(H) < G.order]


def property_P_exhaustive(G: FiniteGroup) -> bool:
    """Whether every pair of proper subgroups admits an avoiding generating set."""
    subs = proper_subgroups(G)
    for A, B in itertools.combinations_with_replacement(subs, 2):
        if isinstance(find_avoiding_genset(G, A, B), KleinObstruction):
            return False
    return True
