"""Witness generating sets with no short relations in a proper HNN extension.

F2 with A = <a>, B = <b> and t^-1 a t = b is free on {a, t}.  For each r we
build the witness set from S = {a b, b a^-1}, certify that no relation of
length up to r - 1 exists among its elements, and cross-check by substituting
b = t^-1 a t and freely reducing in F(a, t).
"""
import itertools

from girthlab.checks import free_proper_hnn
from girthlab.girth import certify_no_short_relation
from girthlab.hnn import build_witness_set_31, classify

P = free_proper_hnn()
print(P.describe(), "->", classify(P))


def image(word):
    out = []
    for l in word:
        piece = [("t", -1), ("a", 1), ("t", 1)] if l.symbol.name == "b" else [(l.symbol.name, 1)]
        if l.sign == -1:
            piece = [(n, -s) for n, s in reversed(piece)]
        for x in piece:
            if out and out[-1] == (x[0], -x[1]):
                out.pop()
            else:
                out.append(x)
    return out


for r in (2, 3, 4):
    W = build_witness_set_31(P, ["a b", "b a^-1"], r)
    cap = r - 1
    cert = certify_no_short_relation(P, W, r, cap)
    print(f"r={r}: {len(W)} elements, {cert}, {cert.words_checked} words checked")
    for x in W:
        w = P.to_word(x)
        print("   ", w, " |  free image length", len(image(w)))

# the images are free generators of a free subgroup, so pairs never commute
W = build_witness_set_31(P, ["a b", "b a^-1"], 3)
for x, y in itertools.combinations(W, 2):
    c = P.multiply(P.multiply(x, y), P.inverse(P.multiply(y, x)))
    assert not P.is_identity_element(c)
print("no two witness elements commute")
