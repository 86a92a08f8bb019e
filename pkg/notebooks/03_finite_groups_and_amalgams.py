"""Avoiding generating sets in the finite corpus, and an amalgam witness.

A finite group G has a generating set avoiding every pair of proper
subgroups unless it maps onto the Klein four-group.  We tally this over the
bundled corpus, then build a witness set for Z/4 *_{Z/2} Z/6 (which is
SL(2, Z)) and check it with integer matrices.
"""
import itertools

from girthlab.amalgam import build_amalgam_witness
from girthlab.checks import sl2z_amalgam
from girthlab.corpus import load_corpus
from girthlab.genset import KleinObstruction, find_avoiding_genset, proper_subgroups
from girthlab.girth import certify_no_short_relation

rows = []
for e in load_corpus():
    G = e.group()
    subs = proper_subgroups(G)
    blocked = sum(
        isinstance(find_avoiding_genset(G, A, B), KleinObstruction)
        for A, B in itertools.combinations_with_replacement(subs, 2)
    )
    rows.append((e.name, e.order, len(subs), blocked))

print(f"{'group':<8}{'order':>6}{'proper':>8}{'blocked pairs':>15}")
for name, order, n, blocked in rows:
    print(f"{name:<8}{order:>6}{n:>8}{blocked:>15}")

P = sl2z_amalgam()
print()
print(P.describe())
W = build_amalgam_witness(P, ["y", "y^2"], ["x"], 2, first="right")
for x in W:
    print("   ", P.to_word(x))
print(certify_no_short_relation(P, W, 2, 2))

X = ((0, -1), (1, 0))
Y = ((0, -1), (1, 1))


def mul(p, q):
    return tuple(tuple(sum(p[i][k] * q[k][j] for k in range(2)) for j in range(2)) for i in range(2))


def power(m, n):
    out = ((1, 0), (0, 1))
    for _ in range(n % 12):
        out = mul(out, m)
    return out


print("x^2 == y^3 in SL(2, Z):", power(X, 2) == power(Y, 3))
