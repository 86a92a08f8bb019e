import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from girthlab.errors import GeneratorInSubgroup, NotAscending, PreconditionViolated, ValidationError
from girthlab.hnn import (
    Classification,
    HnnPresentation,
    ascending_normal_form,
    britton_reduce,
    build_witness_set_31,
    build_witness_set_32,
    build_witness_set_dihedral,
    classify,
    is_identity_hnn,
    witness_32_conjugator,
)
from girthlab.oracles import DihedralGroup, FreeGroup
from girthlab.subgroups import make_subgroup
from girthlab.words import Alphabet, Letter, Word

# -- independent oracles -------------------------------------------------------

AT = Alphabet(["a", "t"])


def free_image(w: Word) -> Word:
    """(F2, <a>, <b>, a -> b) is free on a, t with b = t^-1 a t."""
    img = {"a": AT.parse("a"), "b": AT.parse("t^-1 a t"), "t": AT.parse("t")}
    out = Word()
    for letter in w:
        g = img[letter.symbol.name]
        out = out * (g if letter.sign == 1 else g.inverse())
    return out


def mat(x, y):
    return [[sum(x[i][k] * y[k][j] for k in range(2)) for j in range(2)] for i in range(2)]


BS_MATS = {
    ("a", 1): [[1, 1], [0, 1]],
    ("a", -1): [[1, -1], [0, 1]],
    ("t", 1): [[Fraction(1, 2), 0], [0, 1]],
    ("t", -1): [[2, 0], [0, 1]],
}
I2 = [[1, 0], [0, 1]]


def bs_matrix(w: Word):
    m = I2
    for letter in w:
        m = mat(m, BS_MATS[(letter.symbol.name, letter.sign)])
    return m


# -- classification and reduction ----------------------------------------------


def test_classify(proper_hnn, bs):
    assert classify(proper_hnn) == Classification.PROPER
    assert classify(bs) == Classification.SEMI_PROPER
    F = FreeGroup(2)
    full = HnnPresentation(F, make_subgroup(F, ["a", "b"]), make_subgroup(F, ["a", "b"]), ["b", "a"])
    assert classify(full) == Classification.FULL
    assert str(Classification.SEMI_PROPER) == "SemiProper"


def test_britton_examples(bs, proper_hnn):
    assert bs.format(britton_reduce(bs, "t a^2 t^-1")) == "a"
    assert bs.format(britton_reduce(bs, "t a t^-1")) == "t a t^-1"
    assert proper_hnn.format(britton_reduce(proper_hnn, "t^-1 a^3 t")) == "b b b"


def test_identity_examples(bs, proper_hnn):
    assert is_identity_hnn(bs, "t^-1 a t a^-2")
    assert not is_identity_hnn(bs, "t")
    assert not is_identity_hnn(proper_hnn, "t")
    assert not is_identity_hnn(proper_hnn, "t^-1 b t")


def test_ascending_examples(bs):
    assert ascending_normal_form(bs, "t^-1 a t") == (0, bs.base.element("a^2"), 0)
    assert ascending_normal_form(bs, "t a t^-1") == (1, bs.base.element("a"), 1)
    F = FreeGroup(2)
    sapir = HnnPresentation(F, make_subgroup(F, ["a", "b"]), make_subgroup(F, ["a b", "b a"]), ["a b", "b a"])
    assert classify(sapir) == Classification.SEMI_PROPER
    assert ascending_normal_form(sapir, "t^-1 a b t") == (0, F.element("a b b a"), 0)


def test_ascending_needs_full_A(proper_hnn):
    with pytest.raises(NotAscending):
        ascending_normal_form(proper_hnn, "t")


def test_presentation_validation():
    F = FreeGroup(2)
    A, B = make_subgroup(F, ["a"]), make_subgroup(F, ["b"])
    with pytest.raises(ValidationError):
        HnnPresentation(F, A, B, ["a b"])  # image outside B
    with pytest.raises(ValidationError):
        HnnPresentation(F, A, B, ["b^2"])  # images do not generate B
    with pytest.raises(ValidationError):
        HnnPresentation(F, make_subgroup(F, ["a", "a^2"]), make_subgroup(F, ["b", "b^2"]), ["b", "b^2"])


def test_proper_hnn_against_free_image(proper_hnn):
    P = proper_hnn
    rng = random.Random(11)
    letters = [Letter(s, e) for s in P.alphabet for e in (1, -1)]
    for _ in range(1000):
        w = Word(rng.choice(letters) for _ in range(rng.randint(0, 14)))
        assert is_identity_hnn(P, w) == (free_image(w) == Word())
        # reduction is sound: the reduced form has the same image
        assert free_image(P.to_word(britton_reduce(P, w))) == free_image(w)


def test_bs_against_matrices(bs):
    rng = random.Random(5)
    letters = [Letter(s, e) for s in bs.alphabet for e in (1, -1)]
    for _ in range(1000):
        w = Word(rng.choice(letters) for _ in range(rng.randint(0, 14)))
        assert is_identity_hnn(bs, w) == (bs_matrix(w) == I2)
        r = britton_reduce(bs, w)
        assert bs_matrix(bs.to_word(r)) == bs_matrix(w)


@settings(max_examples=150, deadline=None)
@given(st.lists(st.tuples(st.integers(-2, 2), st.sampled_from([1, -1])), max_size=6), st.integers(-2, 2))
def test_britton_terminates_and_is_reduced(sylls, last):
    from girthlab.checks import bs12

    P = bs12()
    text = " ".join(f"a^{k} t^{e}" for k, e in sylls) + f" a^{last}"
    r = britton_reduce(P, text)
    assert r.t_length <= len(sylls)
    # no pinch left: t^-1 g t with g in A, or t g t^-1 with g in B
    for i in range(len(r.exps) - 1):
        g = r.bases[i + 1]
        if (r.exps[i], r.exps[i + 1]) == (-1, 1):
            assert not P.A.contains(g)
        if (r.exps[i], r.exps[i + 1]) == (1, -1):
            assert not P.B.contains(g)
    if r.t_length:
        assert not is_identity_hnn(P, text)


def _affine(w: Word):
    """BS(1,2) as maps x -> s x + c: a(x) = x + 1, t(x) = x / 2 (faithful)."""
    s, c = Fraction(1), Fraction(0)
    for letter in w:
        if letter.symbol.name == "a":
            c += s * letter.sign
        else:
            s = s / 2 if letter.sign == 1 else s * 2
    return s, c


def test_affine_matches_matrices(bs):
    rng = random.Random(2)
    letters = [Letter(x, e) for x in bs.alphabet for e in (1, -1)]
    for _ in range(200):
        w = Word(rng.choice(letters) for _ in range(rng.randint(0, 10)))
        m = bs_matrix(w)
        assert _affine(w) == (m[0][0], m[0][1])


def test_ascending_agrees_exhaustively(bs):
    """Identity detection via (p, g, q) agrees with Britton and the affine model,
    over all words of t-length <= 4 with base syllables a^k, |k| <= 2."""
    powers = {k: bs.parse(f"a^{k}") for k in range(-2, 3)}
    ts = {1: bs.parse("t"), -1: bs.parse("t^-1")}
    checked = 0
    for n in range(0, 5):
        for exps in itertools.product((1, -1), repeat=n):
            for ks in itertools.product(range(-2, 3), repeat=n + 1):
                w = powers[ks[0]]
                for e, k in zip(exps, ks[1:]):
                    w = w * ts[e] * powers[k]
                p, g, q = ascending_normal_form(bs, w)
                asc_id = p == 0 and q == 0 and bs.base.is_identity_element(g)
                assert asc_id == is_identity_hnn(bs, w)
                form = ts[1] ** p * bs._lift(bs.base.to_word(g)) * ts[-1] ** q
                assert _affine(form) == _affine(w)
                checked += 1
    assert checked == sum(5 ** (n + 1) * 2 ** n for n in range(5))


# -- witness sets ------------------------------------------------------------------


def same(P, x, y):
    return P.is_identity_element(P.multiply(x, P.inverse(P.element(y))))


def test_witness_31_shape(proper_hnn):
    P = proper_hnn
    W = build_witness_set_31(P, ["a b", "b a^-1"], 2)
    assert same(P, W[0], "t")
    assert same(P, W[1], "t^2 a b t^-4")
    assert same(P, W[2], "t^6 b a^-1 t^-8")
    W1 = build_witness_set_31(P, ["a b"], 3)
    assert len(W1) == 2 and same(P, W1[1], "t^3 a b t^-6")
    with pytest.raises(GeneratorInSubgroup):
        build_witness_set_31(P, ["a"], 2)


def test_witness_31_generates(proper_hnn):
    P = proper_hnn
    S = ["a b", "b a^-1"]
    r = 3
    W = build_witness_set_31(P, S, r)
    for i, s in enumerate(S, 1):
        back = P.multiply(P.multiply(P.element(f"t^{-(2 * i - 1) * r}"), W[i]), P.element(f"t^{2 * i * r}"))
        assert same(P, back, s)


def test_witness_32_shape(proper_hnn):
    P = proper_hnn
    W = build_witness_set_32(P, ["a b", "a"], 2)
    u = P.element("t^-2 a b t^4")
    assert same(P, W[1], "t^-2 a b t^4")
    expect = P.multiply(P.multiply(P.multiply(u, u), P.element("a")), P.inverse(P.multiply(P.multiply(u, u), P.multiply(u, u))))
    assert P.is_identity_element(P.multiply(W[2], P.inverse(expect)))
    u3 = witness_32_conjugator(P, ["a b", "b a^-1", "a"], 1)
    assert same(P, u3, "t^-3 b a^-1 t^4")
    with pytest.raises(PreconditionViolated):
        build_witness_set_32(P, ["a b", "b"], 2)


def test_witness_dihedral(dhnn):
    P = dhnn
    W = build_witness_set_dihedral(P, 2)
    assert [same(P, x, y) for x, y in zip(W, ["t", "t^2 a t^-4", "t^-2 b t^4"])] == [True] * 3
    W1 = build_witness_set_dihedral(P, 1)
    assert same(P, W1[1], "t a t^-2") and same(P, W1[2], "t^-1 b t^2")
    D = DihedralGroup()
    swapped = HnnPresentation(D, make_subgroup(D, ["b", "a b a"]), make_subgroup(D, ["a", "b a b"]), {"b": "b a b", "a b a": "a"})
    with pytest.raises(PreconditionViolated):
        build_witness_set_dihedral(swapped, 2)


def test_dihedral_hnn_relations(dhnn):
    P = dhnn
    assert is_identity_hnn(P, "t^-1 a t a b a")
    assert is_identity_hnn(P, "t b t^-1 b a b")
