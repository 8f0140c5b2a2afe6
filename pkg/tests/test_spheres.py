from fractions import Fraction

import pytest

from padyn import sampling
from padyn.padic import Ball, PadicNumber, Radius, norm
from padyn.rational_map import (
    NotInvariantRadius,
    PoleHit,
    Regime,
    evaluate,
    profile,
    step_norms,
)
from padyn.spheres import (
    InvalidRadiusPair,
    NotOnSphere,
    invariant_radii,
    minimal_invariant_ball,
    normalized_measure_of_ball,
    rho,
    rho_table,
    sphere_mass,
)

R = Radius.power


def test_invariant_set_examples(worked):
    inv = invariant_radii(profile(worked))
    assert inv.kind == "greater_than_max" and inv.threshold == 0
    assert [l for l in range(-3, 4) if inv.contains(l)] == [1, 2, 3]
    assert not inv.contains(0)  # alpha
    assert not inv.contains(-1)  # beta
    eq = invariant_radii(profile(sampling.params_from_deviations(2, 0, 5, 1)))
    assert (eq.kind, eq.threshold) == ("all_except_beta", 0)
    assert 0 not in eq and -4 in eq and 3 in eq


def test_rho_examples(worked):
    pr = profile(worked)
    assert rho(pr, worked, 1) == rho(pr, worked, 4) == R(0)  # max{alpha, beta}
    # alpha = beta = 1 with |a - c| = |4| = 2^-2
    params = sampling.params_from_deviations(2, 0, 5, 1)
    pr = profile(params)
    assert pr.regime is Regime.ALPHA_EQUAL
    assert norm(params.a - params.c) == R(-2)
    assert rho(pr, params, -1) == R(-3)
    # oracle: s = x0 + 2 = 2, f(2) = 14/3, f(s) - s = 8/3
    assert evaluate(params, PadicNumber(2, 2)) == PadicNumber("14/3", 2)
    assert norm(PadicNumber("8/3", 2)) == R(-3)
    assert rho(pr, params, 2) == R(-2)
    with pytest.raises(NotInvariantRadius):
        rho(pr, params, 0)


def test_rho_constant_on_sphere(rng):
    for _ in range(150):
        p = rng.choice([2, 3, 5, 7])
        params = sampling.random_params(rng, p)
        pr = profile(params)
        for l in sampling.invariant_exps(pr, rng, 2):
            want = rho_table(pr, params, l)
            for _ in range(5):
                s = sampling.sphere_point(rng, pr.x0, l)
                assert norm(evaluate(params, s) - s) == want


def test_invariance_oracle(rng):
    for _ in range(40):
        p = rng.choice([2, 3, 5])
        params = sampling.random_params(rng, p)
        pr = profile(params)
        inv = invariant_radii(pr)
        for l in range(inv.threshold + 1, inv.threshold + 7):
            if not inv.contains(l):
                continue
            for _ in range(100):
                x = sampling.sphere_point(rng, pr.x0, l)
                assert norm(evaluate(params, x) - pr.x0) == R(l)
    # off I in the attracting regime some point leaves its sphere
    for _ in range(40):
        params = sampling.random_params(rng, 3, Regime.ALPHA_LESS)
        pr = profile(params)
        l = pr.beta.exponent - rng.randint(1, 4)
        assert l not in invariant_radii(pr)
        x = sampling.sphere_point(rng, pr.x0, l)
        assert norm(evaluate(params, x) - pr.x0) != R(l)


def test_minimal_ball_example(worked, rng):
    pr = profile(worked)
    # x0 = 1, so 5/4 lies on the sphere of radius 4
    s = PadicNumber("5/4", 2)
    ball = minimal_invariant_ball(pr, worked, s, 2, rng)
    assert ball == Ball(s, R(0))
    # f(5/4) = 41/36 and f(s) - s = -1/9
    assert evaluate(worked, s) == PadicNumber("41/36", 2)
    assert evaluate(worked, s) in ball
    assert normalized_measure_of_ball(2, 0, 2).clamped == Fraction(1, 2)
    assert step_norms(worked, s, 20) == [R(0)] * 21
    with pytest.raises(NotOnSphere):
        minimal_invariant_ball(pr, worked, PadicNumber(5, 2), 2)
    with pytest.raises(NotInvariantRadius):
        minimal_invariant_ball(pr, worked, PadicNumber(2, 2), 0)


def test_smaller_balls_are_not_invariant(rng):
    for _ in range(100):
        p = rng.choice([2, 3, 5])
        params = sampling.random_params(rng, p)
        pr = profile(params)
        (l,) = sampling.invariant_exps(pr, rng, 1)
        s = sampling.sphere_point(rng, pr.x0, l)
        rad = rho(pr, params, l)
        assert evaluate(params, s) not in Ball(s, R(rad.exponent - 1))


def test_image_ball_has_same_radius(rng):
    """f(U_rho(s)) = U_rho(f(s)): sampled images stay within rho of f(s)."""
    for _ in range(60):
        p = rng.choice([2, 3, 5])
        params = sampling.random_params(rng, p)
        pr = profile(params)
        (l,) = sampling.invariant_exps(pr, rng, 1)
        s = sampling.sphere_point(rng, pr.x0, l)
        rho_exp = l - rng.randint(1, 4)
        fs = evaluate(params, s)
        for _ in range(10):
            x = sampling.ball_point(rng, s, rho_exp)
            assert evaluate(params, x) in Ball(fs, R(rho_exp))
        assert normalized_measure_of_ball(p, rho_exp, l) == normalized_measure_of_ball(p, rho_exp, l)


@pytest.mark.parametrize(
    "p, rho_exp, r_exp, raw, clamped",
    [
        (2, 0, 1, Fraction(1), Fraction(1)),
        (2, 0, 2, Fraction(1, 2), Fraction(1, 2)),
        (3, 0, 1, Fraction(1, 2), Fraction(1, 2)),
        (5, -2, 1, Fraction(1, 100), Fraction(1, 100)),
        (3, 2, 2, Fraction(3, 2), Fraction(1)),
    ],
)
def test_measure(p, rho_exp, r_exp, raw, clamped):
    m = normalized_measure_of_ball(p, rho_exp, r_exp)
    assert (m.raw, m.clamped) == (raw, clamped)
    assert m.branch == ("formula" if rho_exp < r_exp else "whole_sphere")


def test_measure_rejects_non_integer_exponents():
    with pytest.raises(InvalidRadiusPair):
        normalized_measure_of_ball(2, 0.5, 1)


def test_sphere_mass_is_sum_of_top_balls():
    # S_r splits into (p - 1) balls of radius r/p
    for p in (2, 3, 7):
        assert sphere_mass(p, 3) == (p - 1) * Fraction(p) ** 2
        assert sum(normalized_measure_of_ball(p, 2, 3).raw for _ in range(p - 1)) == 1


def test_pole_sits_on_beta_sphere(rng):
    for _ in range(50):
        params = sampling.random_params(rng, rng.choice([2, 3]), Regime.ALPHA_LESS)
        pr = profile(params)
        assert norm(params.pole - pr.x0) == pr.beta
        with pytest.raises(PoleHit):
            evaluate(params, params.pole)
