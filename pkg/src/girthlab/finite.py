"""Cayley tables and subgroup arithmetic for small finite groups.

Elements are the integers ``0 .. order-1`` with ``0`` the identity. Subgroups
are handled as ``frozenset`` of element indices.
"""
from __future__ import annotations

from collections import deque
from pathlib import Path

import numpy as np

from .errors import ValidationError

ASSOCIATIVITY_CHECK_LIMIT = 128


class CayleyTable:
    """Multiplication table of a finite group, identity at index 0."""

    def __init__(self, product, check=True):
        table = np.asarray(product, dtype=np.int64)
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
            raise ValidationError("Cayley table must be a non-empty square array")
        self.order = int(table.shape[0])
        self.array = table
        self.product = table.tolist()
        if check:
            self._validate()
        self.inverse = [row.index(0) for row in self.product]

    def _validate(self):
        n, t = self.order, self.array
        if t.min() < 0 or t.max() >= n:
            raise ValidationError("Cayley table entries out of range")
        idx = np.arange(n)
        if not (np.array_equal(t[0], idx) and np.array_equal(t[:, 0], idx)):
            raise ValidationError("index 0 is not a two-sided identity")
        for row in t:
            if len(set(row.tolist())) != n:
                raise ValidationError("Cayley table rows are not permutations")
        for col in t.T:
            if len(set(col.tolist())) != n:
                raise ValidationError("Cayley table columns are not permutations")
        if n <= ASSOCIATIVITY_CHECK_LIMIT:
            # (xy)z == x(yz) for all triples, vectorised
            left = t[t]  # left[x, y, z] = t[t[x, y], z]
            right = t[idx[:, None, None], t[None, :, :]]  # t[x, t[y, z]]
            if not np.array_equal(left, right):
                raise ValidationError("Cayley table is not associative")
        for g in range(n):
            h = int(np.flatnonzero(t[g] == 0)[0])
            if t[h, g] != 0:
                raise ValidationError(f"inverse of {g} is not two-sided")

    def mul(self, x: int, y: int) -> int:
        return self.product[x][y]

    def power(self, x: int, k: int) -> int:
        if k < 0:
            x, k = self.inverse[x], -k
        out = 0
        for _ in range(k):
            out = self.product[out][x]
        return out

    def element_order(self, x: int) -> int:
        k, y = 1, x
        while y != 0:
            y = self.product[y][x]
            k += 1
        return k

    def elements(self):
        return range(self.order)

    # -- subgroup arithmetic ------------------------------------------------

    def closure(self, gens) -> frozenset:
        seen = {0}
        queue = deque([0])
        gens = list(set(gens))
        while queue:
            x = queue.popleft()
            row = self.product[x]
            for g in gens:
                y = row[g]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return frozenset(seen)

    def generates(self, gens) -> bool:
        return len(self.closure(gens)) == self.order

    def is_subgroup(self, elements) -> bool:
        s = set(elements)
        if 0 not in s:
            return False
        return all(self.product[x][y] in s for x in s for y in s)

    def is_normal(self, subgroup) -> bool:
        inv = self.inverse
        return all(
            self.product[self.product[g][h]][inv[g]] in subgroup
            for g in range(self.order)
            for h in subgroup
        )

    def cyclic_subgroups(self) -> set:
        return {self.closure([x]) for x in range(self.order)}

    def all_subgroups(self) -> list[frozenset]:
        """Every subgroup, sorted by (size, sorted elements)."""
        cyclic = self.cyclic_subgroups()
        found = set(cyclic)
        frontier = list(cyclic)
        while frontier:
            new = []
            for h in frontier:
                for z in cyclic:
                    if z <= h:
                        continue
                    j = self.closure(h | z)
                    if j not in found:
                        found.add(j)
                        new.append(j)
            frontier = new
        return sorted(found, key=lambda h: (len(h), sorted(h)))

    def verbal_klein_subgroup(self) -> frozenset:
        """Subgroup generated by all squares and all commutators."""
        p, inv = self.product, self.inverse
        gens = {p[x][x] for x in range(self.order)}
        for x in range(self.order):
            for y in range(self.order):
                gens.add(p[p[p[x][y]][inv[x]]][inv[y]])
        return self.closure(gens)

    def greedy_generators(self, elements) -> list[int]:
        """Pick generators of the subgroup ``elements`` greedily by element order."""
        target = frozenset(elements)
        ordered = sorted((x for x in target if x != 0), key=lambda x: (-self.element_order(x), x))
        gens: list[int] = []
        current = frozenset({0})
        for x in ordered:
            if current == target:
                break
            if x not in current:
                gens.append(x)
                current = self.closure(gens)
        return gens

    # -- file format --------------------------------------------------------

    def dumps(self) -> str:
        lines = [str(self.order)]
        lines += [" ".join(str(v) for v in row) for row in self.product]
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str, source="<string>") -> "CayleyTable":
        rows = [ln.split() for ln in text.splitlines() if ln.strip()]
        if not rows:
            raise ValidationError(f"{source}: empty Cayley file")
        try:
            n = int(rows[0][0])
            body = [[int(v) for v in row] for row in rows[1:]]
        except ValueError as exc:
            raise ValidationError(f"{source}: non-integer entry ({exc})") from None
        if len(rows[0]) != 1 or len(body) != n or any(len(r) != n for r in body):
            raise ValidationError(f"{source}: expected order line then {n} rows of {n} entries")
        return cls(body)

    @classmethod
    def load(cls, path) -> "CayleyTable":
        path = Path(path)
        try:
            text = path.read_text()
        except OSError as exc:
            raise ValidationError(f"cannot read Cayley file {path}: {exc}") from None
        return cls.loads(text, source=str(path))

    def save(self, path):
        Path(path).write_text(self.dumps())


def table_from_elements(elements, mul) -> CayleyTable:
    """Build a table from a list of hashable elements (identity first) and a product."""
    index = {e: i for i, e in enumerate(elements)}
    rows = [[index[mul(x, y)] for y in elements] for x in elements]
    return CayleyTable(rows)


def closure_of(gens, mul, identity):
    """Elements generated by ``gens`` under ``mul``; identity first, then BFS order."""
    out = [identity]
    seen = {identity}
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = mul(x, g)
            if y not in seen:
                seen.add(y)
                out.append(y)
                queue.append(y)
    return out
