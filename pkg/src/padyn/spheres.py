"""Invariant spheres around x0, the displacement radius rho(r), and
normalized Haar measure of balls inside an invariant sphere."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from padyn.padic import Ball, PadicNumber, Radius, norm
from padyn.rational_map import (
    DynamicsProfile,
    MapParams,
    NotInvariantRadius,
    Regime,
    TheoryDisagreement,
    evaluate,
)
from padyn import sampling


class NotOnSphere(ValueError):
    pass


class InvalidRadiusPair(ValueError):
    pass


@dataclass(frozen=True)
class InvariantRadiusSet:
    """Exponents l with S_{p^l}(x0) invariant.

    ``kind == "greater_than_max"``: l > threshold (alpha != beta).
    ``kind == "all_except_beta"``: l != threshold (alpha == beta).
    """

    kind: str
    threshold: int

    def contains(self, l: int) -> bool:
        if self.kind == "greater_than_max":
            return l > self.threshold
        return l != self.threshold

    def __contains__(self, l: int) -> bool:
        return self.contains(l)

    def to_json(self) -> dict:
        return {"kind": self.kind, "threshold_exp": self.threshold}

    def describe(self, p: int) -> str:
        if self.kind == "greater_than_max":
            return f"{{{p}^l : l >= {self.threshold + 1}}}"
        return f"{{{p}^l : l != {self.threshold}}}"


def invariant_radii(prof: DynamicsProfile) -> InvariantRadiusSet:
    if prof.regime is Regime.ALPHA_EQUAL:
        return InvariantRadiusSet("all_except_beta", prof.beta.exponent)
    return InvariantRadiusSet("greater_than_max", prof.max_exp)


def rho_table(prof: DynamicsProfile, params: MapParams, l: int) -> Radius:
    """rho(p^l) from the closed form, without any sampling."""
    if not invariant_radii(prof).contains(l):
        raise NotInvariantRadius(f"S_(p^{l})(x0) is not invariant")
    if prof.regime is not Regime.ALPHA_EQUAL:
        return max(prof.alpha, prof.beta)
    gap = norm(params.a - params.c)
    if l < prof.beta.exponent:
        return gap * Radius.power(l) / prof.beta
    return gap


def rho(prof: DynamicsProfile, params: MapParams, l: int) -> Radius:
    """rho(p^l) = |f(x) - x|_p for x on the invariant sphere S_{p^l}(x0).

    The closed form is checked against the point x0 + p^{-l}.
    """
    value = rho_table(prof, params, l)
    s = prof.x0 + Fraction(params.p) ** (-l)
    seen = norm(evaluate(params, s) - s)
    if seen != value:
        raise TheoryDisagreement(f"rho table gives {value}, |f(s)-s| = {seen} at s = {s}")
    return value


def rho_observed(params: MapParams, s: PadicNumber) -> Radius:
    return norm(evaluate(params, s) - s)


def minimal_invariant_ball(
    prof: DynamicsProfile,
    params: MapParams,
    s: PadicNumber,
    l: int,
    rng: Optional[random.Random] = None,
    samples: int = 50,
) -> Ball:
    """U_{rho(r)}(s); with ``rng``, sampled ball points are checked to stay inside."""
    rad = rho(prof, params, l)
    if norm(s - prof.x0) != Radius.power(l):
        raise NotOnSphere(f"{s} is not on S_(p^{l})(x0)")
    ball = Ball(s, rad)
    if rng is not None:
        for _ in range(samples):
            if rad.exponent < l:
                x = sampling.ball_point(rng, s, rad.exponent)
            else:
                # the ball swallows the whole sphere; stay on the sphere
                x = sampling.sphere_point(rng, prof.x0, l)
            if evaluate(params, x) not in ball:
                raise TheoryDisagreement(f"f({x}) leaves U_rho(s) for s = {s}")
    return ball


def sphere_mass(p: int, r_exp: int) -> Fraction:
    """Unnormalized Haar mass of S_{p^l}: r (1 - 1/p)."""
    return Fraction(p) ** r_exp * (1 - Fraction(1, p))


@dataclass(frozen=True)
class MeasureValue:
    raw: Fraction
    clamped: Fraction
    branch: str  # "formula" or "whole_sphere"

    def to_json(self) -> dict:
        return {
            "raw": f"{self.raw.numerator}/{self.raw.denominator}",
            "clamped": f"{self.clamped.numerator}/{self.clamped.denominator}",
            "branch": self.branch,
        }


def normalized_measure_of_ball(p: int, rho_exp: int, r_exp: int) -> MeasureValue:
    """mu(U_rho(s)) for s on S_r(x0), normalized so the sphere has mass 1.

    Radii are powers of p, so either rho <= r/p and the ball sits inside
    the sphere, or rho >= r and the ball covers it.
    """
    for v in (p, rho_exp, r_exp):
        if isinstance(v, bool) or not isinstance(v, int):
            raise InvalidRadiusPair(f"radius exponents must be integers, got {v!r}")
    raw = Fraction(p) ** rho_exp / sphere_mass(p, r_exp)
    if rho_exp <= r_exp - 1:
        return MeasureValue(raw, raw, "formula")
    return MeasureValue(raw, Fraction(1), "whole_sphere")
