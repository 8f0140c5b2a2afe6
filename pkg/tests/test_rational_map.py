import random
from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from padyn import sampling
from padyn.padic import PadicNumber, Radius, norm
from padyn.rational_map import (
    FixedPointClass,
    InvalidParams,
    MapParams,
    NotInvariantRadius,
    PoleHit,
    Regime,
    conjugate_to_unit_sphere,
    derivative,
    deviation_norms,
    displacement_from_fixed_point,
    evaluate,
    fixed_point,
    orbit,
    profile,
    step_norms,
)
from padyn.spheres import invariant_radii
from conftest import primes


def P(q, p=2):
    return PadicNumber(q, p)


@st.composite
def valid_params(draw, p=None):
    p = draw(primes) if p is None else p
    q = st.fractions(min_value=-50, max_value=50, max_denominator=60)
    a, b, c = draw(q), draw(q), draw(q)
    assume(a != c and c * c - a * c + b != 0)
    return MapParams.of(p, a, b, c)


def test_constraints_enforced():
    with pytest.raises(InvalidParams, match="a != c"):
        MapParams.of(2, 1, 5, 1)
    with pytest.raises(InvalidParams, match=r"c\^2"):
        MapParams.of(3, 1, -2, 2)  # 4 - 2 - 2 = 0
    with pytest.raises(ValueError, match="prime"):
        MapParams.of(4, 0, 1, 1)


def test_evaluate(worked):
    assert evaluate(worked, P(1)) == P(1)
    with pytest.raises(PoleHit):
        evaluate(worked, P(-1))
    assert evaluate(MapParams.of(2, 1, 1, 0), P(1)) == P(3)


@pytest.mark.parametrize("abc, x0", [((0, 1, 1), 1), ((1, 1, 0), -1), ((0, 2, 1), 2)])
def test_fixed_point(abc, x0):
    assert fixed_point(MapParams.of(2, *abc)) == P(x0)


def test_profiles():
    pr = profile(MapParams.of(2, 0, 1, 1))
    assert (pr.alpha, pr.beta, pr.regime) == (Radius.power(0), Radius.power(-1), Regime.ALPHA_GREATER)
    pr = profile(MapParams.of(2, 1, 1, 0))
    assert pr.alpha.is_zero and pr.beta == Radius.power(0)
    assert pr.regime is Regime.ALPHA_LESS
    assert pr.fixed_point_class is FixedPointClass.ATTRACTIVE
    pr = profile(MapParams.of(2, 0, 2, 1))
    assert (pr.x0, pr.alpha, pr.beta, pr.regime) == (P(2), Radius.power(-1), Radius.power(0), Regime.ALPHA_LESS)


@given(valid_params())
def test_fixed_point_identity(params):
    x0 = fixed_point(params)
    assert evaluate(params, x0) == x0
    pr = profile(params)
    assert not pr.beta.is_zero
    # lambda from the quotient rule matches the simplified (x0+a)/(x0+c)
    assert norm(derivative(params, x0)) == pr.lambda_norm


def test_displacement_example():
    params = MapParams.of(2, 1, 1, 0)
    assert displacement_from_fixed_point(params, P(1)) == Radius.power(-2)


def test_displacement_identity_random(rng):
    for _ in range(500):
        p = rng.choice([2, 3, 5, 7])
        params = sampling.random_params(rng, p)
        pr = profile(params)
        l = pr.beta.exponent + rng.randint(-4, 4)
        x = sampling.sphere_point(rng, pr.x0, l)
        try:
            got = displacement_from_fixed_point(params, x)
        except PoleHit:
            continue
        assert got == norm(evaluate(params, x) - pr.x0)
        if l > pr.max_exp:
            assert got == Radius.power(l)


def test_displacement_inside_basin_shrinks():
    params = MapParams.of(2, 1, 1, 0)  # alpha = 0 < beta = 1
    x0 = fixed_point(params)
    for u in (1, 3, -5, Fraction(7, 3)):
        x = x0 + 2 * u
        assert displacement_from_fixed_point(params, x) < norm(x - x0)


def test_orbit_exact():
    params = MapParams.of(2, 1, 1, 0)
    # 1 -> 3 -> 13/3 -> (169/9 + 13/3 + 1) / (13/3) = 217/39
    assert orbit(params, P(1), 3) == [P(1), P(3), P("13/3"), P("217/39")]
    assert [norm(x + 1) for x in orbit(params, P(1), 3)] == [Radius.power(e) for e in (-1, -2, -4, -8)]


def test_orbit_of_fixed_point_is_constant(worked):
    assert orbit(worked, P(1), 6) == [P(1)] * 7


def test_orbit_pole():
    with pytest.raises(PoleHit) as exc:
        orbit(MapParams.of(2, 0, 1, 1), P(-1), 3)
    assert exc.value.step == 0
    # f(1) = (1 - 7) / 3 = -2 = -c
    params = MapParams.of(3, 0, -7, 2)
    with pytest.raises(PoleHit) as exc:
        orbit(params, PadicNumber(1, 3), 5)
    assert exc.value.step == 1
    with pytest.raises(PoleHit) as exc:
        deviation_norms(params, PadicNumber(1, 3), 5)
    assert exc.value.step == 1


def test_orbit_cap():
    with pytest.raises(ValueError):
        orbit(MapParams.of(2, 0, 1, 1), P(3), 31)
    with pytest.raises(ValueError):
        deviation_norms(MapParams.of(2, 0, 1, 1), P(3), 5, cap=4)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_certified_norms_match_exact_orbit(p):
    """Oracle: plain Fraction iteration, affordable for ~11 steps."""
    rng = random.Random(p)
    for _ in range(40):
        params = sampling.random_params(rng, p)
        pr = profile(params)
        x = sampling.sphere_point(rng, pr.x0, pr.beta.exponent + rng.randint(-3, 3))
        try:
            exact = orbit(params, x, 11)
        except PoleHit:
            continue
        want = [norm(v - pr.x0) for v in exact]
        assert deviation_norms(params, x, 11) == want
        assert step_norms(params, x, 10) == [norm(b - a) for a, b in zip(exact, exact[1:])]


def test_certified_norms_past_exact_phase():
    # basin of an attracting fixed point: exponents halve forever
    got = deviation_norms(MapParams.of(2, 1, 1, 0), P(1), 25)
    assert got == [Radius.power(-(2**k)) for k in range(26)]


def test_basin_distances_strictly_decrease(rng):
    for _ in range(60):
        p = rng.choice([2, 3, 5])
        params = sampling.random_params(rng, p, Regime.ALPHA_LESS)
        pr = profile(params)
        x = sampling.sphere_point(rng, pr.x0, pr.beta.exponent - rng.randint(1, 4))
        norms = deviation_norms(params, x, 20)
        nz = [r for r in norms if not r.is_zero]
        assert all(b < a for a, b in zip(nz, nz[1:]))


def test_isometry_on_invariant_spheres(rng):
    for _ in range(200):
        p = rng.choice([2, 3, 5, 7])
        params = sampling.random_params(rng, p)
        pr = profile(params)
        (l,) = sampling.invariant_exps(pr, rng, 1)
        s = sampling.sphere_point(rng, pr.x0, l)
        x = sampling.ball_point(rng, s, l - rng.randint(1, 5))
        assert norm(evaluate(params, x) - evaluate(params, s)) == norm(x - s)


def test_conjugation_example(worked):
    h = conjugate_to_unit_sphere(worked, 1)
    assert h.numerator == (P(0), P(2), P(1))
    assert h.denominator == (P(4), P(1))
    assert h(P(1)) == P("3/5")
    assert norm(h(P(1))) == Radius.power(0)
    with pytest.raises(NotInvariantRadius):
        conjugate_to_unit_sphere(worked, 0)


def test_conjugation_identity_random(rng):
    for _ in range(100):
        p = rng.choice([2, 3, 5])
        params = sampling.random_params(rng, p)
        pr = profile(params)
        (l,) = sampling.invariant_exps(pr, rng, 1)
        h = conjugate_to_unit_sphere(params, l)
        num, den = h.integral_form()
        for _ in range(5):
            t = PadicNumber(sampling.random_unit(rng, p), p)
            ht = h(t)
            assert ht == h.g_inv(evaluate(params, h.g(t)))
            assert norm(ht) == Radius.power(0)
            # the integral form is the same rational function
            val = sum((c * t**i for i, c in enumerate(num)), PadicNumber(0, p)) / sum(
                (c * t**i for i, c in enumerate(den)), PadicNumber(0, p)
            )
            assert val == ht
        assert all(norm(c) <= Radius.power(0) for c in num + den)
        assert invariant_radii(pr).contains(l)
