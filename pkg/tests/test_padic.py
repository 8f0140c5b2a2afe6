import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from padyn.padic import (
    Ball,
    CappedPadic,
    DivisionByZero,
    PadicNumber,
    PrecisionExhausted,
    PrimeMismatch,
    Radius,
    Sphere,
    in_ball,
    in_sphere,
    norm,
    parse_rational,
    valuation,
)
from conftest import nonzero_rationals, primes, rationals


def P(q, p):
    return PadicNumber(q, p)


@pytest.mark.parametrize(
    "q, p, expected",
    [("8/3", 2, 3), ("3/10", 5, -1), ("7/9", 3, -2), ("12", 3, 1), ("-5/7", 2, 0)],
)
def test_valuation(q, p, expected):
    assert valuation(P(q, p)) == expected


def test_valuation_of_zero_is_infinite():
    assert valuation(P(0, 5)) == math.inf
    assert norm(P(0, 5)) == Radius.zero()


@pytest.mark.parametrize("q, p, exp", [("8/3", 2, -3), ("1/4", 2, 2), ("6", 3, -1)])
def test_norm(q, p, exp):
    assert norm(P(q, p)) == Radius.power(exp)


def test_field_arithmetic():
    assert P("1/3", 2) + P("1/6", 2) == P("1/2", 2)
    assert P(6, 2) * P(10, 2) == P(60, 2)
    assert norm(P(6, 2) * P(10, 2)) == Radius.power(-2)
    assert norm(P(2, 2) + P(6, 2)) == Radius.power(-3)
    assert norm(P(2, 2) + P(6, 2)) <= max(norm(P(2, 2)), norm(P(6, 2)))
    assert P(1, 3) / P(4, 3) == P("1/4", 3)
    assert 1 - P("1/2", 5) == P("1/2", 5)


def test_errors():
    with pytest.raises(PrimeMismatch):
        P(1, 2) + P(1, 3)
    with pytest.raises(DivisionByZero):
        P(1, 2) / P(0, 2)
    with pytest.raises(ValueError, match="prime"):
        P(1, 4)
    with pytest.raises(ValueError):
        P(1, 1)


def test_canonical_representation():
    x = P(Fraction(6, 4), 3)
    assert (x.numerator, x.denominator) == (3, 2)
    assert P("0/7", 3).denominator == 1
    assert P("-3/6", 2) == P(Fraction(1, -2), 2)


def test_parse_rejects_floats():
    with pytest.raises(ValueError):
        parse_rational("0.5")
    assert parse_rational(" -4/6 ") == Fraction(-2, 3)


def test_ball_and_sphere_membership():
    assert in_sphere(P(3, 2), Sphere(P(1, 2), Radius.power(-1)))
    assert not in_sphere(P(5, 2), Sphere(P(1, 2), Radius.power(-1)))
    assert in_ball(P(1, 2), Ball(P(1, 2), Radius.power(-7)))
    assert P(5, 2) in Ball(P(1, 2), Radius.power(-1))
    with pytest.raises(PrimeMismatch):
        in_ball(P(1, 3), Ball(P(1, 2), Radius.power(0)))
    with pytest.raises(ValueError):
        Sphere(P(1, 2), Radius.zero())


def test_radius_ordering_and_arithmetic():
    assert Radius.zero() < Radius.power(-100) < Radius.power(0)
    assert Radius.power(2) * Radius.power(-3) == Radius.power(-1)
    assert Radius.power(2) / Radius.power(-3) == Radius.power(5)
    assert Radius.zero() * Radius.power(4) == Radius.zero()
    assert max(Radius.zero(), Radius.power(-2)) == Radius.power(-2)
    assert Radius.power(-2).value(3) == Fraction(1, 9)
    assert Radius.power(3).render(2) == "2^3"


@given(nonzero_rationals, nonzero_rationals, primes)
def test_norm_is_multiplicative(x, y, p):
    assert norm(P(x * y, p)).exponent == norm(P(x, p)).exponent + norm(P(y, p)).exponent


@given(rationals(), rationals(), primes)
def test_strong_triangle_inequality(x, y, p):
    nx, ny, ns = norm(P(x, p)), norm(P(y, p)), norm(P(x + y, p))
    assert ns <= max(nx, ny)
    if nx != ny:
        assert ns == max(nx, ny)


@given(st.integers(-10**6, 10**6), st.integers(1, 10**6), st.integers(1, 10**4), primes)
def test_construction_canonicalizes(n, d, k, p):
    a, b = P(Fraction(n * k, d * k), p), P(Fraction(n, d), p)
    assert (a.numerator, a.denominator) == (b.numerator, b.denominator)


@given(rationals(2**20), st.integers(-(2**20), 2**20), rationals(2**20), st.integers(-6, 6), primes)
def test_every_point_of_a_ball_is_a_center(c, z, probe, r, p):
    y = P(c + Fraction(p) ** (-r) * z, p)
    big, small = Ball(P(c, p), Radius.power(r)), Ball(y, Radius.power(r))
    assert y in big
    assert (P(probe, p) in big) == (P(probe, p) in small)


@given(rationals(2**30), rationals(2**30), primes)
def test_capped_arithmetic_agrees_with_exact(x, y, p):
    prec = 40
    cx, cy = CappedPadic.from_rational(x, p, prec), CappedPadic.from_rational(y, p, prec)
    assert (cx * cy).norm() == norm(P(x * y, p))
    if y != 0:
        assert (cx / cy).norm() == norm(P(x / y, p))
    for exact, op in ((x + y, lambda: cx + cy), (x - y, lambda: cx - cy)):
        try:
            got = op()
        except PrecisionExhausted:
            # allowed only if the true result vanishes to the known digits
            known = min(cx.abs_prec, cy.abs_prec)
            assert exact == 0 or valuation(P(exact, p)) >= known
            continue
        assert got.norm() == norm(P(exact, p))


def test_capped_precision_exhaustion_is_loud():
    x = CappedPadic.from_rational(Fraction(1), 2, 8)
    y = CappedPadic.from_rational(Fraction(1 + 2**20), 2, 8)
    with pytest.raises(PrecisionExhausted):
        x - y


def test_capped_residue():
    v = CappedPadic.from_rational(Fraction(5, 7), 3, 10)
    assert v.residue(4) * 7 % 81 == 5
    with pytest.raises(ValueError):
        CappedPadic.from_rational(Fraction(1, 3), 3, 10).residue(2)
