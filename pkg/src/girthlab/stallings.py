"""Stallings automata for finitely generated subgroups of free groups.

Folding carries, on every edge, a word in the subgroup's own generators.  The
labels satisfy ``label(e) = p(src) * letter * p(dst)^-1`` for a potential
``p`` with ``p(base) = 1``, so the labels along any closed base path multiply
to an expression for the word that path spells.  Folding two edges towards
different vertices shifts the labels around the absorbed vertex by the
difference of potentials; folding parallel edges just drops one of them.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .errors import NotMember, ValidationError
from .words import Alphabet, Letter, Word


@dataclass(frozen=True)
class MembershipWitness:
    """An expression over a subgroup's generator alphabet."""

    expression: Word
    alphabet: Alphabet

    def evaluate(self, images: Sequence, multiply, inverse, identity):
        x = identity
        for letter in self.expression:
            g = images[letter.symbol.id]
            x = multiply(x, g if letter.sign == 1 else inverse(g))
        return x

    def __str__(self):
        return str(self.expression) or "1"


def subgroup_alphabet(k: int, prefix: str = "h") -> Alphabet:
    return Alphabet([f"{prefix}{i + 1}" for i in range(k)])


class StallingsAutomaton:
    """Folded, connected, deterministic automaton with base state 0.

    Attributes
    ----------
    states : int
        Number of states.
    base : int
        Always 0 after construction.
    edges : list of (src, GeneratorSymbol, dst)
        Positive edges; the inverse edges are implicit.
    origin_rank : int
        Rank of the ambient free group.
    """

    def __init__(self, gens: Sequence[Word], ambient_alphabet: Alphabet):
        for g in gens:
            ambient_alphabet.check(g)
            if not g:
                raise ValidationError("subgroup generators must be nonempty words")
        self.gens = list(gens)
        self.ambient_alphabet = ambient_alphabet
        self.origin_rank = len(ambient_alphabet)
        self.gen_alphabet = subgroup_alphabet(len(self.gens))
        self._fold()
        self._spanning_tree()

    # -- construction ---------------------------------------------------------

    def _fold(self):
        # edge id -> [src, symbol, dst, label]
        edges: dict[int, list] = {}
        out: dict[int, dict] = {0: {}}
        counter = [0, 1]  # next edge id, next vertex id

        def add_edge(src, sym, dst, label):
            eid = counter[0]
            counter[0] += 1
            edges[eid] = [src, sym, dst, label]
            out.setdefault(src, {}).setdefault((sym, 1), set()).add(eid)
            out.setdefault(dst, {}).setdefault((sym, -1), set()).add(eid)

        def remove_edge(eid):
            src, sym, dst, _ = edges.pop(eid)
            out[src][(sym, 1)].discard(eid)
            out[dst][(sym, -1)].discard(eid)

        for i, g in enumerate(self.gens):
            hi = Word._trusted((Letter(self.gen_alphabet.symbols[i], 1),))
            v = 0
            n = len(g)
            for j, letter in enumerate(g):
                if j == n - 1:
                    w = 0
                else:
                    w = counter[1]
                    counter[1] += 1
                    out[w] = {}
                label = hi if j == n - 1 else Word.identity()
                if letter.sign == 1:
                    add_edge(v, letter.symbol, w, label)
                else:
                    add_edge(w, letter.symbol, v, label.inverse())
                v = w

        self.is_basis = True
        pending = deque(out)
        while pending:
            v = pending.popleft()
            if v not in out:
                continue
            conflict = None
            for key, ids in out[v].items():
                if len(ids) > 1:
                    conflict = key, sorted(ids)[:2]
                    break
            if conflict is None:
                continue
            (sym, sign), (e1, e2) = conflict
            s1, _, d1, l1 = edges[e1]
            s2, _, d2, l2 = edges[e2]
            if sign == 1:
                w1, w2, p1, p2 = d1, d2, l1, l2
            else:
                w1, w2, p1, p2 = s1, s2, l1.inverse(), l2.inverse()
            if w1 == w2:
                if l1 != l2:
                    self.is_basis = False
                remove_edge(e2)
            else:
                keep, drop, shift = w1, w2, p1.inverse() * p2
                if drop == 0:
                    keep, drop, shift = w2, w1, p2.inverse() * p1
                for eid in list(edges):
                    e = edges[eid]
                    if e[0] != drop and e[2] != drop:
                        continue
                    remove_edge(eid)
                    src, s, dst, lab = e
                    if src == drop:
                        src, lab = keep, shift * lab
                    if dst == drop:
                        dst, lab = keep, lab * shift.inverse()
                    add_edge(src, s, dst, lab)
                    pending.extend((src, dst))
                del out[drop]
            pending.append(v)

        # renumber states in BFS order from the base
        order = {0: 0}
        queue = deque([0])
        adjacency = {}
        for eid, (src, sym, dst, _) in edges.items():
            adjacency.setdefault(src, []).append((sym.id, 0, dst))
            adjacency.setdefault(dst, []).append((sym.id, 1, src))
        while queue:
            v = queue.popleft()
            for _, _, w in sorted(adjacency.get(v, [])):
                if w not in order:
                    order[w] = len(order)
                    queue.append(w)
        self.states = len(order)
        self.base = 0
        self._edges = sorted(
            ((order[s], sym, order[d], lab) for s, sym, d, lab in edges.values()),
            key=lambda e: (e[0], e[1].id, e[2]),
        )
        self.edges = [(s, sym, d) for s, sym, d, _ in self._edges]
        self._delta = {}
        for s, sym, d, lab in self._edges:
            self._delta[(s, sym, 1)] = (d, lab)
            self._delta[(d, sym, -1)] = (s, lab.inverse())
        if self.rank != len(self.gens):
            self.is_basis = False

    def _spanning_tree(self):
        # tree paths from the base, BFS in (state, symbol id, sign) order
        self._tree_path = {0: Word.identity()}
        tree_edges = set()
        queue = deque([0])
        while queue:
            v = queue.popleft()
            for sym in self.ambient_alphabet:
                for sign in (1, -1):
                    step = self._delta.get((v, sym, sign))
                    if step is None:
                        continue
                    w = step[0]
                    if w not in self._tree_path:
                        self._tree_path[w] = self._tree_path[v] * Word._trusted((Letter(sym, sign),))
                        tree_edges.add((v, sym, w) if sign == 1 else (w, sym, v))
                        queue.append(w)
        self._non_tree = [e for e in self.edges if e not in tree_edges]
        self.schreier_alphabet = subgroup_alphabet(len(self._non_tree), prefix="s")
        self._schreier_index = {e: i for i, e in enumerate(self._non_tree)}

    # -- queries --------------------------------------------------------------

    @property
    def rank(self) -> int:
        return len(self.edges) - self.states + 1

    def is_folded(self) -> bool:
        seen = set()
        for s, sym, d in self.edges:
            for key in ((s, sym, 1), (d, sym, -1)):
                if key in seen:
                    return False
                seen.add(key)
        return True

    def _walk(self, w: Word):
        v = 0
        for letter in w:
            step = self._delta.get((v, letter.symbol, letter.sign))
            if step is None:
                return None
            v = step[0]
        return v

    def contains(self, w: Word) -> bool:
        return self._walk(w) == 0

    def accepts_everything(self) -> bool:
        """True iff the subgroup is the whole free group."""
        return all(self.contains(Word._trusted((Letter(s, 1),))) for s in self.ambient_alphabet)

    def express(self, w: Word) -> MembershipWitness:
        """Write ``w`` in the user generators ``h1, h2, ...``."""
        v = 0
        expr = Word.identity()
        for letter in w:
            step = self._delta.get((v, letter.symbol, letter.sign))
            if step is None:
                raise NotMember(f"{w} is not in the subgroup")
            v, lab = step
            expr = expr * lab
        if v != 0:
            raise NotMember(f"{w} is not in the subgroup")
        return MembershipWitness(expr, self.gen_alphabet)

    def schreier_basis(self) -> list[Word]:
        out = []
        for s, sym, d in self._non_tree:
            out.append(self._tree_path[s] * Word._trusted((Letter(sym, 1),)) * self._tree_path[d].inverse())
        return out

    def express_schreier(self, w: Word) -> MembershipWitness:
        """Write ``w`` in the Schreier basis ``s1, s2, ...`` of the spanning tree."""
        if not self.contains(w):
            raise NotMember(f"{w} is not in the subgroup")
        v = 0
        letters = []
        for letter in w:
            d = self._delta[(v, letter.symbol, letter.sign)][0]
            edge = (v, letter.symbol, d) if letter.sign == 1 else (d, letter.symbol, v)
            idx = self._schreier_index.get(edge)
            if idx is not None:
                letters.append(Letter(self.schreier_alphabet.symbols[idx], letter.sign))
            v = d
        return MembershipWitness(Word(letters), self.schreier_alphabet)

    def schreier_translation(self) -> list[Word]:
        """Each Schreier basis element as a word in the user generators."""
        return [self.express(b).expression for b in self.schreier_basis()]

    def __repr__(self):
        return f"<StallingsAutomaton states={self.states} edges={len(self.edges)} rank={self.rank}>"


def build(subgroup_gens: Sequence[Word], ambient_alphabet: Alphabet) -> StallingsAutomaton:
    return StallingsAutomaton(subgroup_gens, ambient_alphabet)
