"""Seeded generators for exact test points and parameter sets."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional

from padyn.padic import PadicNumber
from padyn.rational_map import MapParams, Regime, profile


def random_unit(rng: random.Random, p: int, bound: int = 50) -> Fraction:
    """A random rational with numerator and denominator prime to p."""
    while True:
        n = rng.randint(1, bound)
        d = rng.randint(1, bound)
        if n % p and d % p:
            return Fraction(rng.choice((-1, 1)) * n, d)


def random_integer(rng: random.Random, p: int, bound: int = 50) -> Fraction:
    """A random p-adic integer (possibly zero or divisible by p)."""
    n = rng.randint(-bound, bound)
    while True:
        d = rng.randint(1, bound)
        if d % p:
            return Fraction(n, d)


def sphere_point(rng: random.Random, center: PadicNumber, r_exp: int) -> PadicNumber:
    """Random x with |x - center|_p = p**r_exp."""
    p = center.p
    return center + Fraction(p) ** (-r_exp) * random_unit(rng, p)


def ball_point(rng: random.Random, center: PadicNumber, rho_exp: int) -> PadicNumber:
    """Random x with |x - center|_p <= p**rho_exp."""
    p = center.p
    return center + Fraction(p) ** (-rho_exp) * random_integer(rng, p)


def random_value(rng: random.Random, p: int, exp: Optional[int], bound: int = 20) -> Fraction:
    """Random rational of norm p**exp (zero when exp is None)."""
    if exp is None:
        return Fraction(0)
    return Fraction(p) ** (-exp) * random_unit(rng, p, bound)


def params_from_deviations(p: int, x0: Fraction, A: Fraction, C: Fraction) -> MapParams:
    """The unique map with fixed point x0, x0 + a = A and x0 + c = C.

    b is forced by x0 = b / (c - a); the constraints a != c and
    c^2 - ac + b != 0 become A != C and C != 0.
    """
    a = A - x0
    c = C - x0
    return MapParams.of(p, a, x0 * (c - a), c)


def random_params(
    rng: random.Random,
    p: int,
    regime: Optional[Regime] = None,
    exp_range: int = 3,
    alpha_zero_rate: float = 0.05,
) -> MapParams:
    """Random valid parameters, optionally forced into one regime."""
    while True:
        x0 = Fraction(p) ** rng.randint(-exp_range, exp_range) * random_unit(rng, p, 12)
        if rng.random() < 0.1:
            x0 = Fraction(0)
        be = rng.randint(-exp_range, exp_range)
        if regime is Regime.ALPHA_EQUAL:
            al = be
        elif regime is Regime.ALPHA_LESS:
            al = None if rng.random() < alpha_zero_rate else be - rng.randint(1, exp_range + 1)
        elif regime is Regime.ALPHA_GREATER:
            al = be + rng.randint(1, exp_range + 1)
        else:
            al = rng.randint(-exp_range, exp_range)
        C = random_value(rng, p, be)
        if regime is Regime.ALPHA_EQUAL and rng.random() < 0.5:
            # A close to C makes |a - c| < beta, a separate case for p >= 3
            A = C + random_value(rng, p, be - rng.randint(1, 3))
        else:
            A = random_value(rng, p, al)
        if A == C:
            continue
        params = params_from_deviations(p, x0, A, C)
        if regime is None or profile(params).regime is regime:
            return params


def invariant_exps(prof, rng: random.Random, count: int, spread: int = 5) -> list:
    """Radius exponents of invariant spheres near the threshold."""
    from padyn.spheres import invariant_radii

    inv = invariant_radii(prof)
    lo = prof.beta.exponent - spread if prof.regime is Regime.ALPHA_EQUAL else prof.max_exp + 1
    hi = prof.max_exp + spread
    pool = [l for l in range(lo, hi + 1) if inv.contains(l)]
    return [rng.choice(pool) for _ in range(count)]
