"""Independent cross-check oracles.

These do not share code with the girth search: the shortest relation in a
finite group is found by breadth-first search over the non-backtracking
Cayley graph, whose states are pairs (element, last letter).
"""
from __future__ import annotations

from collections import deque
from typing import Optional, Sequence


def shortest_relation_length(product, S: Sequence[int], inverse: Sequence[int], limit: Optional[int] = None) -> Optional[int]:
    """Length of the shortest freely reduced nonempty word over ``S`` equal to 0.

    ``product`` is a Cayley table (list of rows) with identity 0.  Letters
    are ``(i, sign)``; a walk may not follow a letter by its inverse.
    Returns None if nothing is found within ``limit`` steps.
    """
    letters = []
    for i, s in enumerate(S):
        letters.append(((i, 1), s))
        letters.append(((i, -1), inverse[s]))
    start = (0, None)
    dist = {start: 0}
    queue = deque([start])
    while queue:
        state = queue.popleft()
        x, last = state
        d = dist[state]
        if limit is not None and d >= limit:
            continue
        for letter, g in letters:
            if last is not None and letter == (last[0], -last[1]):
                continue
            y = product[x][g]
            if y == 0:
                return d + 1
            nxt = (y, letter)
            if nxt not in dist:
                dist[nxt] = d + 1
                queue.append(nxt)
    return None
