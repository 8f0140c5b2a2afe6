"""The map f(x) = (x^2 + a x + b) / (x + c) on Q_p.

Everything here is exact. Long orbits are the one place where exact
rationals stop being affordable (heights double every step), so
:func:`deviation_norms` switches to precision-tracked p-adic digits once
the fractions get large; the valuations it reports are still certified.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Sequence, TypeVar, Union

from padyn.padic import (
    CappedPadic,
    PadicNumber,
    PrecisionExhausted,
    PrimeMismatch,
    Radius,
    check_prime,
    norm,
    parse_rational,
)

DEFAULT_ORBIT_CAP = 30
# Bit budget for the exact phase of a certified orbit.
EXACT_PHASE_BITS = 2048
START_PREC = 48
MAX_PREC = 4096

T = TypeVar("T")


class InvalidParams(ValueError):
    pass


class PoleHit(ArithmeticError):
    """The orbit reached x = -c, where f is undefined."""

    def __init__(self, step: int, prefix: Sequence = ()):
        super().__init__(f"orbit hits the pole -c at step {step}")
        self.step = step
        self.prefix = list(prefix)


class NotInvariantRadius(ValueError):
    pass


class TheoryDisagreement(AssertionError):
    """An exact computation contradicts a closed-form identity."""


class Regime(enum.Enum):
    ALPHA_LESS = "alpha_less"
    ALPHA_EQUAL = "alpha_equal"
    ALPHA_GREATER = "alpha_greater"


class FixedPointClass(enum.Enum):
    ATTRACTIVE = "attractive"
    INDIFFERENT = "indifferent"
    REPELLING = "repelling"


@dataclass(frozen=True)
class MapParams:
    a: PadicNumber
    b: PadicNumber
    c: PadicNumber

    def __post_init__(self):
        if not (self.a.p == self.b.p == self.c.p):
            raise PrimeMismatch("a, b, c must share one prime")
        if self.a == self.c:
            raise InvalidParams("constraint a != c violated")
        if self.c * self.c - self.a * self.c + self.b == 0:
            raise InvalidParams("constraint c^2 - a*c + b != 0 violated")

    @classmethod
    def of(cls, p: int, a, b, c) -> "MapParams":
        check_prime(p)
        return cls(PadicNumber(a, p), PadicNumber(b, p), PadicNumber(c, p))

    @classmethod
    def from_config(cls, block: dict) -> "MapParams":
        try:
            p = block["p"]
            a, b, c = (parse_rational(block[k]) for k in ("a", "b", "c"))
        except KeyError as exc:
            raise InvalidParams(f"map block is missing field {exc.args[0]!r}") from None
        if isinstance(p, bool) or not isinstance(p, int):
            raise InvalidParams(f"field 'p' must be an integer, got {p!r}")
        try:
            check_prime(p)
        except ValueError as exc:
            raise InvalidParams(str(exc)) from None
        return cls.of(p, a, b, c)

    @property
    def p(self) -> int:
        return self.a.p

    @property
    def pole(self) -> PadicNumber:
        return -self.c

    def to_config(self) -> dict:
        return {"p": self.p, "a": str(self.a), "b": str(self.b), "c": str(self.c)}


@dataclass(frozen=True)
class DynamicsProfile:
    x0: PadicNumber
    alpha: Radius
    beta: Radius
    regime: Regime
    lambda_norm: Radius
    fixed_point_class: FixedPointClass

    @property
    def p(self) -> int:
        return self.x0.p

    @property
    def max_exp(self) -> int:
        # beta is never zero, so max{alpha, beta} is a genuine power
        return max(self.alpha, self.beta).exponent

    def to_json(self) -> dict:
        return {
            "x0": str(self.x0),
            "alpha": self.alpha.to_json(),
            "beta": self.beta.to_json(),
            "regime": self.regime.value,
            "lambda_norm": self.lambda_norm.to_json(),
            "fixed_point_class": self.fixed_point_class.value,
        }


def evaluate(params: MapParams, x: PadicNumber) -> PadicNumber:
    den = x + params.c
    if den.is_zero():
        raise PoleHit(0)
    return (x * x + params.a * x + params.b) / den


def fixed_point(params: MapParams) -> PadicNumber:
    x0 = params.b / (params.c - params.a)
    if x0 == -params.c:
        raise AssertionError("fixed point coincides with the pole")
    return x0


def profile(params: MapParams) -> DynamicsProfile:
    x0 = fixed_point(params)
    alpha = norm(x0 + params.a)
    beta = norm(x0 + params.c)
    assert not beta.is_zero
    if alpha < beta:
        regime = Regime.ALPHA_LESS
    elif alpha == beta:
        regime = Regime.ALPHA_EQUAL
    else:
        regime = Regime.ALPHA_GREATER
    # f'(x0) = (x0 + a) / (x0 + c) once f(x0) = x0 is used
    lam = alpha / beta
    if lam < Radius.power(0):
        cls = FixedPointClass.ATTRACTIVE
    elif lam == Radius.power(0):
        cls = FixedPointClass.INDIFFERENT
    else:
        cls = FixedPointClass.REPELLING
    return DynamicsProfile(x0, alpha, beta, regime, lam, cls)


def derivative(params: MapParams, x: PadicNumber) -> PadicNumber:
    """f'(x) by the quotient rule."""
    den = x + params.c
    if den.is_zero():
        raise PoleHit(0)
    num = x * x + params.a * x + params.b
    return ((2 * x + params.a) * den - num) / (den * den)


def displacement_from_fixed_point(params: MapParams, x: PadicNumber) -> Radius:
    """|f(x) - x0|_p, cross-checked against its factored form."""
    x0 = fixed_point(params)
    if x == x0:
        raise ValueError("x must differ from the fixed point")
    direct = norm(evaluate(params, x) - x0)
    y = x - x0
    factored = norm(y) * norm(y + (x0 + params.a)) / norm(y + (x0 + params.c))
    if direct != factored:
        raise TheoryDisagreement(
            f"|f(x)-x0| = {direct} but the factored form gives {factored} at x = {x}"
        )
    return direct


def orbit(
    params: MapParams, start: PadicNumber, n: int, cap: int = DEFAULT_ORBIT_CAP
) -> List[PadicNumber]:
    """Exact orbit start, f(start), ..., f^n(start).

    Bit sizes roughly double per step; beyond ~16 steps prefer
    :func:`deviation_norms` when only norms are needed.
    """
    if n < 0 or n > cap:
        raise ValueError(f"orbit length must lie in [0, {cap}], got {n}")
    out = [start]
    x = start
    for k in range(n):
        if x == params.pole:
            raise PoleHit(k, out)
        x = evaluate(params, x)
        out.append(x)
    return out


def _deviation_iterates(
    params: MapParams, start: PadicNumber, n: int, prec: int
) -> List[Union[Fraction, CappedPadic]]:
    """y_k = f^k(start) - x0 for k = 0..n via y -> y (y + A) / (y + C).

    Iterates stay exact Fractions while they are small; this catches every
    exact hit of the pole or of x0. Past the bit budget the heights are
    too large for either to recur, and the iteration continues with
    precision-tracked digits.
    """
    p = params.p
    x0 = fixed_point(params).value
    A = x0 + params.a.value
    C = x0 + params.c.value
    y: Union[Fraction, CappedPadic] = start.value - x0
    out: List[Union[Fraction, CappedPadic]] = [y]
    capA = capC = None
    for k in range(n):
        if isinstance(y, Fraction):
            if y + C == 0:
                raise PoleHit(k, [PadicNumber(v + x0, p) for v in out])
            y = y * (y + A) / (y + C)
            if y.numerator.bit_length() + y.denominator.bit_length() > EXACT_PHASE_BITS:
                y = CappedPadic.from_rational(y, p, prec)
        else:
            if capA is None:
                capA = CappedPadic.from_rational(A, p, prec)
                capC = CappedPadic.from_rational(C, p, prec)
            y = y * (y + capA) / (y + capC)
        out.append(y)
    return out


def certified(fn: Callable[[int], T], start: int = START_PREC, limit: int = MAX_PREC) -> T:
    """Run ``fn(prec)`` with doubling precision until no digit is lost."""
    prec = start
    while True:
        try:
            return fn(prec)
        except PrecisionExhausted:
            if prec >= limit:
                raise
            prec *= 2


def _norm_of(v: Union[Fraction, CappedPadic], p: int) -> Radius:
    if isinstance(v, CappedPadic):
        return v.norm()
    return norm(PadicNumber(v, p))


def _as_capped(v: Union[Fraction, CappedPadic], p: int, prec: int) -> CappedPadic:
    return v if isinstance(v, CappedPadic) else CappedPadic.from_rational(v, p, prec)


def deviation_norms(
    params: MapParams, start: PadicNumber, n: int, cap: int = DEFAULT_ORBIT_CAP
) -> List[Radius]:
    """Certified |f^k(start) - x0|_p for k = 0..n."""
    if n < 0 or n > cap:
        raise ValueError(f"orbit length must lie in [0, {cap}], got {n}")
    p = params.p
    return certified(
        lambda prec: [_norm_of(y, p) for y in _deviation_iterates(params, start, n, prec)]
    )


def step_norms(
    params: MapParams, start: PadicNumber, n: int, cap: int = DEFAULT_ORBIT_CAP
) -> List[Radius]:
    """Certified |f^{k+1}(start) - f^k(start)|_p for k = 0..n."""
    if n < 0 or n + 1 > cap:
        raise ValueError(f"orbit length must lie in [0, {cap - 1}], got {n}")
    p = params.p

    def run(prec: int) -> List[Radius]:
        ys = _deviation_iterates(params, start, n + 1, prec)
        out = []
        for u, v in zip(ys, ys[1:]):
            if isinstance(u, Fraction) and isinstance(v, Fraction):
                out.append(norm(PadicNumber(v - u, p)))
            else:
                out.append((_as_capped(v, p, prec) - _as_capped(u, p, prec)).norm())
        return out

    return certified(run)


@dataclass(frozen=True)
class ConjugatedMap:
    """h = g^{-1} o f o g with g(t) = p^{-l} t + x0, acting on S_1(0).

    h(t) = (t^2 + p^l (x0+a) t) / (t + p^l (x0+c)). Coefficient tuples are
    stored lowest degree first.
    """

    p: int
    l: int
    x0: PadicNumber
    numerator: tuple
    denominator: tuple
    # "k": coefficients above are p-adic integers; "kk": both rows divided
    # by p^l (x0+a), needed when l lies below beta = alpha
    form: str = "k"

    def __call__(self, t: PadicNumber) -> PadicNumber:
        num = sum((c * t**i for i, c in enumerate(self.numerator)), PadicNumber(0, self.p))
        den = sum((c * t**i for i, c in enumerate(self.denominator)), PadicNumber(0, self.p))
        if den.is_zero():
            raise PoleHit(0)
        return num / den

    def integral_form(self) -> tuple:
        """(numerator, denominator) with p-adic integer coefficients."""
        if self.form == "k":
            return self.numerator, self.denominator
        s = self.numerator[1]  # p^l (x0 + a)
        num = tuple(c / s for c in self.numerator)
        den = tuple(c / s for c in self.denominator)
        return num, den

    def g(self, t: PadicNumber) -> PadicNumber:
        return t / PadicNumber(self.p, self.p) ** self.l + self.x0

    def g_inv(self, x: PadicNumber) -> PadicNumber:
        return (x - self.x0) * PadicNumber(self.p, self.p) ** self.l


def conjugate_to_unit_sphere(params: MapParams, l: int) -> ConjugatedMap:
    from padyn.spheres import invariant_radii

    prof = profile(params)
    if not invariant_radii(prof).contains(l):
        raise NotInvariantRadius(f"S_(p^{l})(x0) is not an invariant sphere")
    p = params.p
    scale = PadicNumber(p, p) ** l
    zero, one = PadicNumber(0, p), PadicNumber(1, p)
    A = prof.x0 + params.a
    C = prof.x0 + params.c
    form = "kk" if prof.regime is Regime.ALPHA_EQUAL and l < prof.beta.exponent else "k"
    h = ConjugatedMap(p, l, prof.x0, (zero, scale * A, one), (scale * C, one), form)
    for t in (one, one + p, PadicNumber(Fraction(1, p + 2) if p != 2 else Fraction(1, 3), p)):
        composed = h.g_inv(evaluate(params, h.g(t)))
        if composed != h(t):
            raise TheoryDisagreement(f"conjugation identity fails at t = {t}")
    return h
