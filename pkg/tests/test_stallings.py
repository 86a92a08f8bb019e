import itertools
import random

import pytest

from girthlab.errors import NotMember
from girthlab.stallings import StallingsAutomaton, build
from girthlab.words import Alphabet, Word, enumerate_reduced

AB = Alphabet(["a", "b"])
P = AB.parse


def brute_members(gens, max_len, depth=6):
    """Reduced words of length <= max_len reachable as products of <= depth generators."""
    letters = [g for g in gens] + [g.inverse() for g in gens]
    seen = {Word()}
    frontier = {Word()}
    for _ in range(depth):
        nxt = set()
        for w in frontier:
            for g in letters:
                x = w * g
                if x not in seen and len(x) <= max_len + 4:
                    nxt.add(x)
        seen |= nxt
        frontier = nxt
    return {w for w in seen if len(w) <= max_len}


def test_single_generator():
    A = build([P("a")], AB)
    assert A.states == 1
    assert A.contains(P("a^3")) and not A.contains(P("b"))
    assert str(A.express(P("a^3")).expression) == "h1 h1 h1"


def test_two_petals():
    A = build([P("a^2"), P("a b a^-1")], AB)
    # a^2 and a b a^-1 share the first a-edge when folded: base and one more state
    assert A.states == 2
    assert A.is_folded()
    assert A.contains(P("a b a^-1"))
    assert not A.contains(P("a"))
    assert A.contains(P("a b a^-1 a^2"))
    assert str(A.express(P("a b a^-1 a^2")).expression) == "h2 h1"
    assert A.is_basis and A.rank == 2


def test_whole_group_and_bab():
    assert build([P("a"), P("b")], AB).accepts_everything()
    K = build([P("a"), P("b a b")], AB)
    assert not K.accepts_everything() and not K.contains(P("b"))
    assert str(K.express(P("b a b")).expression) == "h2"


def test_not_member_raises():
    with pytest.raises(NotMember):
        build([P("a")], AB).express(P("b"))


@pytest.mark.parametrize(
    "gens",
    [["a^2", "a b a^-1"], ["a", "b a b"], ["a b", "b a"], ["a^3", "b^2", "a b a^-1 b^-1"]],
)
def test_membership_matches_enumeration(gens):
    ws = [P(g) for g in gens]
    A = build(ws, AB)
    members = brute_members(ws, 6)
    for w in enumerate_reduced(AB, 6):
        if w in members:
            assert A.contains(w)
    for w in members:
        assert A.contains(w)


@pytest.mark.parametrize("gens", [["a^2", "a b a^-1"], ["a b", "b a", "a^2"], ["a", "b a b"]])
def test_confluence_under_permutation(gens):
    words = [P(g) for g in gens]
    langs = []
    for perm in itertools.permutations(words):
        A = build(list(perm), AB)
        langs.append(frozenset(w for w in enumerate_reduced(AB, 6) if A.contains(w)))
    assert len(set(langs)) == 1


def test_express_soundness_random():
    gens = [P("a^2"), P("a b a^-1"), P("b^3")]
    A = build(gens, AB)
    rng = random.Random(3)
    for _ in range(1000):
        w = Word()
        for _ in range(rng.randint(0, 6)):
            g = rng.choice(gens)
            w = w * (g if rng.random() < 0.5 else g.inverse())
        wit = A.express(w)
        back = wit.evaluate(gens, lambda x, y: x * y, lambda x: x.inverse(), Word())
        assert back == w


def test_closure_sampled():
    A = build([P("a^2"), P("a b a^-1")], AB)
    members = [w for w in enumerate_reduced(AB, 5) if A.contains(w)]
    for g, h in itertools.product(members[:30], repeat=2):
        assert A.contains(g * h)


def test_schreier_basis_translation():
    # the even-length subgroup: index 2, rank 3, and this list is a basis
    assert build([P("a b"), P("b a"), P("a^2")], AB).is_basis
    gens = [P("a"), P("b"), P("a b")]
    A = build(gens, AB)
    assert not A.is_basis and A.rank == 2
    basis = A.schreier_basis()
    assert len(basis) == A.rank
    for b, t in zip(basis, A.schreier_translation()):
        assert t.substitute(dict(zip(A.gen_alphabet.symbols, gens))) == b


def test_automaton_type():
    assert isinstance(build([P("a")], AB), StallingsAutomaton)
