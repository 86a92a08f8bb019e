import pytest
from hypothesis import given, strategies as st

from girthlab.errors import ParseError, UnknownSymbol
from girthlab.words import (
    Alphabet,
    Letter,
    Word,
    count_reduced,
    cyclic_reduce,
    enumerate_reduced,
    free_reduce,
    is_cyclically_reduced,
)

AB = Alphabet(["a", "b"])
a, b = AB.symbols


def W(text):
    return AB.parse(text)


raw_letters = st.lists(st.builds(Letter, st.sampled_from(AB.symbols), st.sampled_from([1, -1])), max_size=20)


def test_free_reduce_examples():
    assert free_reduce([Letter(a, 1), Letter(a, -1), Letter(b, 1)]) == W("b")
    assert free_reduce([]) == Word()
    assert W("a b b^-1 a^-1") == Word()


def test_cyclic_reduce_examples():
    assert cyclic_reduce(W("a b a^-1")) == (W("b"), W("a"))
    assert cyclic_reduce(W("a b")) == (W("a b"), Word())
    assert cyclic_reduce(W("a b b a^-1")) == (W("b b"), W("a"))


def test_parse_and_display_round_trip():
    w = W("a b^-1 (a b)^2 b^-3")
    assert str(w) == "a b^-1 a b a b^-1 b^-1"
    assert W(str(w)) == w
    assert W("1") == Word() and W("") == Word()


def test_parse_errors():
    with pytest.raises(UnknownSymbol):
        W("a c")
    with pytest.raises(ParseError):
        W("a^")
    with pytest.raises(ParseError):
        W("a )")


def test_enumerate_small_cases():
    A1 = Alphabet(["a"])
    assert [str(w) for w in enumerate_reduced(A1, 2)] == ["a", "a^-1", "a a", "a^-1 a^-1"]
    assert [str(w) for w in enumerate_reduced(AB, 1)] == ["a", "a^-1", "b", "b^-1"]
    assert len(list(enumerate_reduced(AB, 2))) == 16
    assert list(enumerate_reduced(AB, 0)) == []


@pytest.mark.parametrize("k,L", [(1, 5), (2, 4), (3, 3)])
def test_enumeration_count_and_uniqueness(k, L):
    A = Alphabet([f"x{i}" for i in range(k)])
    words = list(enumerate_reduced(A, L))
    # 2k(2k-1)^(l-1) per length, counted independently of the library formula
    assert len(words) == sum(2 * k * (2 * k - 1) ** (l - 1) for l in range(1, L + 1))
    assert len(set(words)) == len(words)
    assert [len(w) for w in words] == sorted(len(w) for w in words)
    assert all(free_reduce(w.letters) == w for w in words)
    assert all(count_reduced(k, l) == 2 * k * (2 * k - 1) ** (l - 1) for l in range(1, L + 1))


def test_enumeration_is_length_lex():
    words = list(enumerate_reduced(AB, 3))
    for l in (1, 2, 3):
        same = [w for w in words if len(w) == l]
        assert same == sorted(same, key=lambda w: w.sort_key())


@given(raw_letters)
def test_free_reduce_idempotent(raw):
    w = free_reduce(raw)
    assert free_reduce(w.letters) == w
    assert len(w) <= len(raw)


@given(raw_letters)
def test_inverse_cancels(raw):
    w = free_reduce(raw)
    assert w * w.inverse() == Word()
    assert w.inverse().inverse() == w


@given(raw_letters)
def test_cyclic_reduce_conjugation(raw):
    w = free_reduce(raw)
    core, c = cyclic_reduce(w)
    assert c * core * c.inverse() == w
    assert is_cyclically_reduced(core)


@given(raw_letters, raw_letters, raw_letters)
def test_multiplication_associative(x, y, z):
    x, y, z = free_reduce(x), free_reduce(y), free_reduce(z)
    assert (x * y) * z == x * (y * z)
