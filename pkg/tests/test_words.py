import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from symgraph.words import GraphParams, ReducedWord, ball, distance, parse_word, sphere

P34 = GraphParams(3, 4)


def word_strategy(params, max_len=4):
    syllable = st.tuples(
        st.integers(min_value=0, max_value=params.r - 1),
        st.integers(min_value=1, max_value=params.k - 1),
    )
    def build(pairs):
        w = params.identity()
        for g, e in pairs:
            w = w * params.generator(g, e)
        return w
    return st.lists(syllable, max_size=max_len).map(build)


def test_params_validation():
    with pytest.raises(ValueError):
        GraphParams(1, 3)
    assert GraphParams(3, 4).q == 6
    assert GraphParams(3, 4).sigma == 1


def test_cancellation_to_identity():
    for k, r in [(2, 3), (3, 4), (4, 2)]:
        p = GraphParams(k, r)
        a = p.generator(0, 1)
        b = p.generator(0, k - 1)
        assert len(a * b) == 0


def test_merge_within_factor():
    w = P34.generator(0) * P34.generator(1)
    assert (w * P34.generator(1)).syllables == ((0, 1), (1, 2))


def test_cascade_reduction():
    # a0 a1 * a1^2 a0 : the a1 block cancels, then the a0 blocks merge
    left = P34.generator(0) * P34.generator(1)
    right = P34.generator(1, 2) * P34.generator(0)
    assert (left * right).syllables == ((0, 2),)


def test_inverse_examples():
    assert (~P34.identity()).syllables == ()
    assert (~P34.generator(0)).syllables == ((0, 2),)
    w = P34.generator(0) * P34.generator(1, 2)
    assert (~w).syllables == ((1, 1), (0, 2))


def test_distance_examples():
    x = P34.generator(0) * P34.generator(1)
    assert distance(x, x) == 0
    assert distance(P34.identity(), x) == 2


def test_sphere_counts_by_enumeration():
    assert [len(list(sphere(P34, n))) for n in range(3)] == [1, 8, 48]
    assert P34.delta(1) == 8 and P34.delta(2) == 48
    p23 = GraphParams(2, 3)
    words = list(sphere(p23, 2))
    assert len(words) == 6 == p23.delta(2)
    assert all(len(w) == 2 for w in words)


def test_sphere_counts_grid():
    for k, r in itertools.product((2, 3, 4), repeat=2):
        p = GraphParams(k, r)
        for n in range(5):
            words = list(sphere(p, n))
            assert len(words) == p.delta(n)
            assert len(set(words)) == len(words)


def test_sphere_order_deterministic():
    first = [w.syllables for w in sphere(P34, 2)]
    second = [w.syllables for w in sphere(P34, 2)]
    assert first == second == sorted(first)


def test_word_parsing():
    assert parse_word(P34, "e") == P34.identity()
    w = parse_word(P34, "a0^1.a1^2")
    assert w.syllables == ((0, 1), (1, 2))
    assert parse_word(P34, str(w)) == w
    with pytest.raises(ValueError):
        parse_word(P34, "a9^1")
    with pytest.raises(ValueError):
        ReducedWord(P34, ((0, 1), (0, 1)))


@given(word_strategy(P34), word_strategy(P34), word_strategy(P34))
def test_associativity(x, y, z):
    assert (x * y) * z == x * (y * z)


@given(word_strategy(P34))
def test_inverse_cancels(x):
    assert len(x * ~x) == 0
    assert len(~x * x) == 0


@given(word_strategy(P34), word_strategy(P34))
def test_distance_matches_quotient_length(x, y):
    assert distance(x, y) == len(~x * y)
    assert distance(x, y) == distance(y, x)
    assert distance(P34.identity(), x) == len(x)


@given(word_strategy(P34), word_strategy(P34), word_strategy(P34))
def test_left_invariance_and_triangle(g, x, y):
    assert distance(g * x, g * y) == distance(x, y)
    assert distance(x, y) <= distance(x, g) + distance(g, y)


def test_triangle_exhaustive_small():
    p = GraphParams(2, 3)
    words = list(ball(p, 2))
    for x in words:
        for y in words:
            for z in words:
                assert distance(x, z) <= distance(x, y) + distance(y, z)


def test_associativity_exhaustive_small():
    for k, r in ((2, 2), (2, 3), (3, 2)):
        p = GraphParams(k, r)
        words = list(ball(p, 3))
        for x in words:
            for y in words:
                for z in words:
                    assert (x * y) * z == x * (y * z)
