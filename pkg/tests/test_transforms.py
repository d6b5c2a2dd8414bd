import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symgraph.algebraic import AlgebraicValue, q_half_power
from symgraph.boundary import BoundaryRay
from symgraph.transforms import (
    EvenSeq,
    RadialSeq,
    abel,
    abel_inv,
    abel_inv_rearranged,
    abel_via_radon,
    dual_abel,
    dual_abel_inv,
    dual_abel_inv_recurrence,
    dual_abel_via_counts,
    even_norm,
    radon,
    radon_via_counts,
    schwartz_norm,
)
from symgraph.words import GraphParams

P34 = GraphParams(3, 4)

small_fracs = st.fractions(min_value=-9, max_value=9, max_denominator=4)
GRID = [GraphParams(k, r) for k, r in itertools.product((2, 3, 4), repeat=2)]


def radial(params, values):
    return RadialSeq.of(params, values)


def test_radon_of_point_mass():
    f = RadialSeq.delta_origin(P34)
    ray = BoundaryRay.alternating(P34, 2)
    assert radon(f, ray, 0) == 1
    assert radon(f, ray, 1) == 0
    assert radon_via_counts(f, -1) == 0


def test_radon_of_unit_sphere():
    f = radial(P34, [0, 1])
    ray = BoundaryRay.alternating(P34, 3)
    assert radon(f, ray, 0) == 1  # the sigma = 1 same-horocycle neighbour


def test_abel_examples():
    assert abel(RadialSeq.delta_origin(P34)).values == (AlgebraicValue(1, 0, 6),)
    g = abel(radial(P34, [0, 1]))
    assert g.value(0) == 1
    assert g.value(1) == q_half_power(6, 1)
    assert g.value(-1) == g.value(1)


def test_abel_matches_radon_oracle():
    rng = random.Random(3)
    for params in GRID:
        f = radial(params, [Fraction(rng.randint(-5, 5), rng.choice((1, 2))) for _ in range(4)])
        for ray in (BoundaryRay.alternating(params, 4),
                    BoundaryRay.random(params, 4, rng)):
            assert abel(f).values == abel_via_radon(f, ray).values


def test_abel_inv_examples():
    f = abel_inv(EvenSeq.of(P34, [1]))
    assert f.values == (AlgebraicValue(1, 0, 6),)
    f = abel_inv(EvenSeq.of(P34, [0, 1]))
    assert f.value(0) == -q_half_power(6, -1)  # -(k-2) q^(-1/2)
    assert f.value(1) == q_half_power(6, -1)
    # applying the forward transform recovers the even input
    assert abel(f).values == (AlgebraicValue(0, 0, 6), AlgebraicValue(1, 0, 6))


@settings(max_examples=20)
@given(st.lists(small_fracs, min_size=1, max_size=6))
def test_abel_roundtrip(values):
    for params in (P34, GraphParams(4, 3), GraphParams(2, 3)):
        f = radial(params, values)
        g = abel(f)
        assert abel_inv(g).values == f.values
        assert abel_inv_rearranged(g).values == f.values


def test_abel_roundtrip_other_direction():
    rng = random.Random(9)
    for params in GRID:
        g = EvenSeq.of(params, [rng.randint(-5, 5) for _ in range(5)])
        assert abel(abel_inv(g)).values == g.values


def test_support_preserved_when_top_nonzero():
    f = radial(P34, [2, 0, Fraction(3, 2)])
    g = abel(f)
    assert g.last_nonzero() == f.last_nonzero() == 2


def test_dual_abel_examples():
    g = EvenSeq.of(P34, [3, 5])
    fwd = dual_abel(g)
    assert fwd.value(0) == 3
    # (2 sqrt(6) g(1) + sigma g(0)) / 8
    expected = (q_half_power(6, 1) * 10 + 3) * Fraction(1, 8)
    assert fwd.value(1) == expected


def test_dual_abel_closed_matches_counts():
    rng = random.Random(11)
    for params in GRID:
        g = EvenSeq.of(params, [Fraction(rng.randint(-6, 6), rng.choice((1, 3))) for _ in range(5)])
        lhs = dual_abel(g, n_max=6)
        rhs = dual_abel_via_counts(g, n_max=6)
        assert lhs.values == rhs.values


def test_duality_pairing_exact():
    rng = random.Random(13)
    for params in GRID:
        f = radial(params, [rng.randint(-4, 4) for _ in range(4)])
        g = EvenSeq.of(params, [rng.randint(-4, 4) for _ in range(4)])
        fwd = dual_abel(g, n_max=f.support_radius)
        lhs = AlgebraicValue(0, 0, params.q)
        for n in range(f.support_radius + 1):
            lhs = lhs + fwd.value(n) * f.value(n) * params.delta(n)
        af = abel(f)
        rhs = af.value(0) * g.value(0)
        for h in range(1, max(af.support_radius, g.support_radius) + 1):
            rhs = rhs + af.value(h) * g.value(h) * 2
        assert lhs == rhs


def test_dual_inverse_examples():
    g = dual_abel_inv(RadialSeq.delta_origin(P34), n_max=1)
    assert g.value(0) == 1
    assert g.value(1) == -q_half_power(6, -1) * Fraction(1, 2)  # -(sigma/2) q^(-1/2)


def test_dual_inverse_paths_agree():
    rng = random.Random(17)
    for params in GRID:
        f = radial(params, [rng.randint(-5, 5) for _ in range(6)])
        closed = dual_abel_inv(f)
        stepped = dual_abel_inv_recurrence(f)
        assert closed.values == stepped.values


@settings(max_examples=20)
@given(st.lists(small_fracs, min_size=1, max_size=6))
def test_dual_roundtrips(values):
    for params in (P34, GraphParams(3, 3), GraphParams(4, 2)):
        g = EvenSeq.of(params, values)
        assert dual_abel_inv(dual_abel(g)).values == g.values
        f = radial(params, values)
        assert dual_abel(dual_abel_inv(f)).values == f.values


def test_schwartz_norm_examples():
    f = RadialSeq.delta_origin(P34)
    assert schwartz_norm(f, 1, 0) == 1.0
    assert schwartz_norm(f, 2, 5) == 1.0
    g = radial(P34, [1, Fraction(1, 2)])
    assert schwartz_norm(g, 1, 1) <= schwartz_norm(g, 1, 2)
    # f(n) = q^(-n/p) (1+n)^(-3) telescopes against the weight
    p = 1.5
    vals = [P34.q ** (-n / p) * (1 + n) ** (-3.0) for n in range(21)]
    f = RadialSeq.of(P34, vals, exact=False)
    assert schwartz_norm(f, p, 1) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        schwartz_norm(f, 3, 0)


def test_even_norm():
    g = EvenSeq.of(P34, [2, 1])
    assert even_norm(g, 0) == 2.0
    assert even_norm(g, 2) == max(2.0, 4 * 1.0)


def test_numeric_flavour_matches_exact():
    rng = random.Random(23)
    values = [rng.randint(-5, 5) for _ in range(5)]
    exact = abel(radial(P34, values))
    numeric = abel(RadialSeq.of(P34, [float(v) for v in values], exact=False))
    for h in range(5):
        assert float(exact.value(h)) == pytest.approx(numeric.value(h), rel=1e-12)
    back = abel_inv(numeric)
    for n in range(5):
        assert back.value(n) == pytest.approx(values[n], abs=1e-9)
