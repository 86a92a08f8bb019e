import itertools

import pytest

from girthlab.corpus import load_corpus, load_entry
from girthlab.errors import PreconditionViolated, SubgroupNotProper
from girthlab.genset import (
    KleinObstruction,
    claim1_move,
    claim2_move,
    find_avoiding_genset,
    find_nearly_avoiding_genset,
    has_property_P,
    profile,
    proper_subgroups,
)
from girthlab.oracles import klein_four_quotient_exists
from girthlab.subgroups import make_subgroup


def closure(table, gens):
    seen, frontier = {0}, [0]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = table.product[x][g]
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


@pytest.fixture
def KL(Dinf):
    return make_subgroup(Dinf, ["a", "b a b"]), make_subgroup(Dinf, ["b", "a b a"])


def test_profile_examples(Dinf, KL, S3, Z2):
    K, L = KL
    assert profile(Dinf, K, L, ["a", "b"]).as_dict() == {"alpha": 1, "beta": 1, "gamma": 0, "delta": 0}
    A, B = make_subgroup(S3, ["b"]), make_subgroup(S3, ["a b a^-1"])
    assert profile(S3, A, B, ["a", "a^-1 b a"]).delta == 2
    p = profile(Z2, make_subgroup(Z2, ["b^-1"]), make_subgroup(Z2, ["a b^-1"]), ["a", "b"])
    assert (p.alpha, p.delta) == (1, 1)


def test_claim1(Dinf, KL):
    K, L = KL
    res = claim1_move(Dinf, K, L, ["a", "b"], "a", "b")
    assert [Dinf.format(x) for x in res.S] == ["a b", "b"]
    assert res.delta_increased
    assert make_subgroup(Dinf, res.S).is_proper() is False
    with pytest.raises(PreconditionViolated):
        claim1_move(Dinf, K, L, ["a", "b"], "b", "a")


def test_claim1_preserves_generation_on_corpus():
    for name in ("S3", "D4", "D6", "A4", "C2xC4"):
        G = load_entry(name).group()
        subs = proper_subgroups(G)
        for A, B in itertools.product(subs, repeat=2):
            gens = list(G.gens)
            s1 = next((x for x in gens if A.contains(x) and not B.contains(x)), None)
            s2 = next((x for x in gens if B.contains(x) and not A.contains(x)), None)
            if s1 is None or s2 is None:
                continue
            res = claim1_move(G, A, B, gens, s1, s2)
            assert closure(G.table, res.S) == set(range(G.order))


def test_claim2_keeps_generation(S3):
    A, B = make_subgroup(S3, ["b"]), make_subgroup(S3, ["a b a^-1"])
    gens = [S3.element("b"), S3.element("a")]
    res = claim2_move(S3, A, B, gens, gens[0], gens[1])
    assert closure(S3.table, res.S) == set(range(6))


def test_find_avoiding_examples(S3, V4):
    A, B = make_subgroup(S3, ["b"]), make_subgroup(S3, ["a b a^-1"])
    S = find_avoiding_genset(S3, A, B)
    assert closure(S3.table, S) == set(range(6))
    assert not any(A.contains(x) or B.contains(x) for x in S)
    res = find_avoiding_genset(V4, make_subgroup(V4, ["a"]), make_subgroup(V4, ["b"]))
    assert isinstance(res, KleinObstruction)
    C5 = load_entry("C5").group()
    triv = make_subgroup(C5, [])
    S = find_avoiding_genset(C5, triv, triv)
    assert len(S) == 1


def test_requires_proper(S3):
    with pytest.raises(SubgroupNotProper):
        find_avoiding_genset(S3, make_subgroup(S3, ["a", "b"]), make_subgroup(S3, ["b"]))


def test_nearly_avoiding_infinite(Dinf, KL, Z2):
    K, L = KL
    S = find_nearly_avoiding_genset(Dinf, K, L)
    assert [Dinf.format(x) for x in S] == ["a", "a b"]
    assert profile(Dinf, K, L, S).as_dict() == {"alpha": 1, "beta": 0, "gamma": 0, "delta": 1}
    A, B = make_subgroup(Z2, ["b^-1"]), make_subgroup(Z2, ["a b^-1"])
    S = find_nearly_avoiding_genset(Z2, A, B)
    assert [Z2.format(x) for x in S] == ["a", "a b"]
    assert profile(Z2, A, B, S).delta == 2
    assert not make_subgroup(Z2, S).is_proper()


def test_property_P_examples(S3):
    assert has_property_P(S3)
    assert not has_property_P(load_entry("D4").group())
    assert has_property_P(load_entry("C7").group())


def test_corpus_sweep_outputs():
    """Every avoiding set generates and avoids; every nearly avoiding set meets both conditions."""
    for e in load_corpus():
        G = e.group()
        whole = set(range(G.order))
        for A, B in itertools.combinations_with_replacement(proper_subgroups(G), 2):
            res = find_avoiding_genset(G, A, B)
            if isinstance(res, KleinObstruction):
                assert klein_four_quotient_exists(G)
            else:
                assert closure(G.table, res) == whole
                assert profile(G, A, B, res).delta == len(res)
            S = find_nearly_avoiding_genset(G, A, B)
            p = profile(G, A, B, S)
            assert closure(G.table, S) == whole
            assert p.in_union <= 1 and min(p.alpha, p.beta) == 0
