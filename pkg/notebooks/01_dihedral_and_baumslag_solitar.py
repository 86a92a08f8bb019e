"""Girth of small presentations, checked against concrete models.

Run with ``python3 notebooks/01_dihedral_and_baumslag_solitar.py``.

The infinite dihedral group has girth 2 on {a, b}: both generators are
involutions.  The Baumslag-Solitar group BS(1,2) = <a, t | t^-1 a t = a^2>
is metabelian, so every 2-generated set satisfies a law of length 16, but
its actual girth on {a, t} is 5.  We confirm the latter with the faithful
affine representation a(x) = x + 1, t(x) = x / 2.
"""
from fractions import Fraction

from girthlab.checks import bs12
from girthlab.girth import GirthQuery, girth_exact, law_upper_bound
from girthlab.oracles import DihedralGroup


def affine(word):
    s, c = Fraction(1), Fraction(0)
    for letter in word:
        if letter.symbol.name == "a":
            c += s * letter.sign
        else:
            s = s / 2 if letter.sign == 1 else s * 2
    return s, c


D = DihedralGroup()
print("D_inf:", girth_exact(GirthQuery(D, ["a", "b"], 4)))

P = bs12()
print("BS(1,2) presentation:", P.describe())
law = law_upper_bound(P, ["a", "t"], "metabelian", ["a", "t", "a^-1", "t^-1"])
print("metabelian law:", law)
print("  law word acts as", affine(law.witness))

cert = girth_exact(GirthQuery(P, ["a", "t"], 6))
print("exact girth:", cert, f"({cert.words_checked} words, {cert.evaluated} evaluated)")
print("  witness acts as", affine(cert.witness))
