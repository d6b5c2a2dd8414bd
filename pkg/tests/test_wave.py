import random
from fractions import Fraction

import pytest

from symgraph.algebraic import AlgebraicValue, q_half_power
from symgraph.boundary import BoundaryRay, busemann
from symgraph.spectral import VertexFun, radialize, spherical_means_at, spherical_phi
from symgraph.transforms import RadialSeq
from symgraph.wave import (
    CauchyData,
    asgeirsson_means,
    lap_full,
    lap_radial,
    lap_z,
    wave_closed_at,
    wave_direct,
    wave_via_dual_abel_at,
)
from symgraph.words import GraphParams, ball, sphere

P34 = GraphParams(3, 4)
REGIMES = [GraphParams(2, 3), GraphParams(2, 4), GraphParams(3, 4), GraphParams(3, 3),
           GraphParams(4, 4), GraphParams(3, 2), GraphParams(4, 2), GraphParams(4, 3)]


def random_data(params, rng, radius=1, with_velocity=True):
    pool = list(ball(params, radius))
    f = VertexFun.of(params, {w: rng.randint(-3, 3) for w in pool})
    g_values = {w: rng.randint(-3, 3) for w in pool} if with_velocity else {}
    return CauchyData(f, VertexFun.of(params, g_values))


def test_laplacian_kills_constants():
    fun = VertexFun.of(P34, {x: 1 for x in ball(P34, 2)})
    out = lap_full(fun)
    assert out.value(P34.identity()).is_zero()
    for x in sphere(P34, 1):
        assert out.value(x).is_zero()


def test_laplacian_of_point_mass():
    out = lap_full(VertexFun.delta_at(P34.identity()))
    assert out.value(P34.identity()) == 1
    for x in sphere(P34, 1):
        assert out.value(x) == Fraction(-1, 8)


def test_radial_laplacian_examples():
    flat = RadialSeq.of(P34, [1, 1, 1, 1])
    out = lap_radial(flat)
    assert out.value(1).is_zero() and out.value(2).is_zero()
    point = lap_radial(RadialSeq.delta_origin(P34))
    assert point.value(0) == 1
    assert point.value(1) == Fraction(-1, 8)


def test_radial_laplacian_matches_full():
    rng = random.Random(31)
    f = RadialSeq.of(P34, [rng.randint(-4, 4) for _ in range(3)])
    full = lap_full(VertexFun.from_radial(f))
    rad = lap_radial(f)
    assert radialize(full).values[: rad.support_radius + 1] == rad.values[: rad.support_radius + 1]
    for x in ball(P34, 3):
        assert full.value(x) == rad.value(len(x))


def test_means_commute_with_laplacian():
    # spherical means of L f around any centre obey the radial three-point form
    rng = random.Random(29)
    pool = list(ball(P34, 3))
    f = VertexFun.of(P34, {w: rng.randint(-4, 4) for w in pool})
    lf = lap_full(f)
    for x in ball(P34, 2):
        means = [spherical_means_at(f, x, n) for n in range(6)]
        assert spherical_means_at(lf, x, 0) == means[0] - means[1]
        for n in range(1, 5):
            expected = (
                means[n] * (P34.q + 1) - means[n - 1] - means[n + 1] * P34.q
            ) * Fraction(1, P34.degree)
            assert spherical_means_at(lf, x, n) == expected


def test_lap_z_examples():
    linear = {n: Fraction(3 * n + 1) for n in range(-3, 4)}
    out = lap_z(linear)
    for n in range(-2, 3):
        assert out[n] == 0
    point = lap_z({0: Fraction(1)})
    assert point[0] == 1 and point[1] == Fraction(-1, 2) and point[-1] == Fraction(-1, 2)


def test_horocyclic_laplacian_identity():
    # for f(h) = q^(h/2) g(h):
    #   {(q+1) f(h) - q f(h-1) - f(h+1)}/(r(k-1)) = beta q^(h/2) (L_Z g)(h) + gap f(h)
    rng = random.Random(33)
    for params in (P34, GraphParams(4, 2), GraphParams(2, 4)):
        q = params.q
        g = {n: AlgebraicValue(rng.randint(-5, 5), 0, q) for n in range(-4, 5)}
        f = {n: q_half_power(q, n) * g[n] for n in g}
        lzg = lap_z(g)
        for h in range(-2, 3):
            lhs = (f[h] * (q + 1) - f[h - 1] * q - f[h + 1]) * Fraction(1, params.degree)
            rhs = params.beta * q_half_power(q, h) * lzg[h] + params.spectral_gap * f[h]
            assert lhs == rhs


def test_spot_value():
    data = CauchyData(VertexFun.delta_at(P34.identity()), VertexFun.of(P34, {}))
    expected = -q_half_power(6, -1) * Fraction(1, 2)  # -1/(2 sqrt 6)
    field = wave_direct(P34, data, 1, observe_radius=0)
    assert field.at(P34.identity(), 1) == expected
    assert wave_closed_at(P34, data, P34.identity(), 1) == expected


def test_closed_equals_direct_all_regimes():
    rng = random.Random(35)
    for params in REGIMES:
        data = random_data(params, rng)
        field = wave_direct(params, data, 4, observe_radius=1)
        for n in range(-4, 5):
            for x in ball(params, 1):
                want = field.at(x, n)
                assert wave_closed_at(params, data, x, n) == want
                assert wave_via_dual_abel_at(params, data, x, n) == want
        field.check_recurrence(0)


def test_time_symmetry():
    rng = random.Random(37)
    for params in (P34, GraphParams(3, 2)):
        still = random_data(params, rng, with_velocity=False)
        field = wave_direct(params, still, 3, observe_radius=1)
        moving = CauchyData(VertexFun.of(params, {}), still.initial)
        field_odd = wave_direct(params, moving, 3, observe_radius=1)
        for n in range(1, 4):
            for x in ball(params, 1):
                assert field.at(x, n) == field.at(x, -n)
                assert field_odd.at(x, n) == -(field_odd.at(x, -n))
        for x in ball(params, 1):
            assert field_odd.at(x, 0).is_zero()


def test_dual_abel_bridge():
    # with zero velocity, the dual Abel transform of n -> u(x, n) gives the
    # spherical means of the initial data around x
    rng = random.Random(39)
    data = random_data(P34, rng, with_velocity=False)
    x = P34.generator(1)
    steps = 4
    field = wave_direct(P34, data, steps, observe_radius=1)
    from symgraph.transforms import EvenSeq, dual_abel as fwd

    u_seq = EvenSeq(P34, tuple(field.at(x, n) for n in range(steps + 1)), True)
    means = fwd(u_seq, n_max=steps)
    for n in range(steps + 1):
        assert means.value(n) == spherical_means_at(data.initial, x, n)


def test_float_stepper_tracks_exact():
    rng = random.Random(43)
    pool = list(ball(P34, 1))
    values_f = {w: rng.randint(-3, 3) for w in pool}
    values_g = {w: rng.randint(-3, 3) for w in pool}
    exact = CauchyData(VertexFun.of(P34, values_f), VertexFun.of(P34, values_g))
    numeric = CauchyData(
        VertexFun.of(P34, {w: float(v) for w, v in values_f.items()}, exact=False),
        VertexFun.of(P34, {w: float(v) for w, v in values_g.items()}, exact=False),
    )
    exact_field = wave_direct(P34, exact, 3, observe_radius=1)
    float_field = wave_direct(P34, numeric, 3, observe_radius=1)
    for n in range(-3, 4):
        for x in pool:
            assert float_field.at(x, n) == pytest.approx(float(exact_field.at(x, n)), abs=1e-9)
            closed = wave_closed_at(P34, numeric, x, n)
            assert closed == pytest.approx(float(exact_field.at(x, n)), abs=1e-9)


def test_outside_computed_region_raises():
    data = CauchyData(VertexFun.delta_at(P34.identity()), VertexFun.of(P34, {}))
    field = wave_direct(P34, data, 2, observe_radius=0)
    with pytest.raises(ValueError):
        field.at(P34.identity(), 5)
    with pytest.raises(ValueError):
        far = P34.generator(0) * P34.generator(1) * P34.generator(2)
        field.at(far, 2)


def test_asgeirsson_eigenfunction_fixture():
    for params, gamma in [(GraphParams(3, 2), Fraction(1, 2)),
                          (GraphParams(2, 4), Fraction(-1, 3))]:
        table = spherical_phi(params, gamma, 10)

        def U(a, b):
            return table[len(a)] * table[len(b)]

        x, y = params.identity(), params.generator(0)
        for m, n in [(0, 3), (1, 2), (2, 4), (3, 3)]:
            lhs, rhs = asgeirsson_means(params, U, x, y, m, n)
            assert lhs == rhs


def test_asgeirsson_rejects_non_solutions():
    params = GraphParams(3, 2)

    def bad(a, b):
        return Fraction(len(a) * len(a) + 1)

    with pytest.raises(ValueError):
        asgeirsson_means(params, bad, params.identity(), params.generator(0), 1, 2)


def test_asgeirsson_wave_lift():
    # U(x, y) = q^(h(y)/2) u(x, h(y)) for a velocity-free wave solution
    rng = random.Random(41)
    params = GraphParams(2, 3)
    data = random_data(params, rng, with_velocity=False)
    x, y = params.identity(), params.identity()
    m_max = n_max = 3
    steps = n_max + 1
    field = wave_direct(params, data, steps, observe_radius=m_max + 1)
    ray = BoundaryRay.alternating(params, steps + n_max + 2)

    def U(a, b):
        h = busemann(b, ray)
        return q_half_power(params.q, h) * field.at(a, h)

    for m, n in [(1, 2), (2, 3), (3, 3), (0, 2)]:
        lhs, rhs = asgeirsson_means(params, U, x, y, m, n)
        assert lhs == rhs
