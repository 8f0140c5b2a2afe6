"""Exact arithmetic in Q viewed inside Q_p.

Numbers are reduced fractions tagged with a prime. Norms are never floats:
a nonzero norm is p**l and is stored as the integer exponent l.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, total_ordering
from typing import Optional, Union

Rational = Union[int, Fraction, str]


class PrimeMismatch(ValueError):
    pass


class DivisionByZero(ZeroDivisionError):
    pass


class PrecisionExhausted(ArithmeticError):
    """Raised when a capped p-adic computation cannot certify a digit."""


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


def check_prime(p: int) -> int:
    if isinstance(p, bool) or not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"p must be prime, got {p!r}")
    return p


def int_valuation(n: int, p: int) -> int:
    """Exponent of p in the nonzero integer n."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def parse_rational(text: Rational) -> Fraction:
    """Parse ``"num/den"`` (or an int / Fraction) into a reduced Fraction."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, str):
        s = text.strip()
        if not s or "." in s or "e" in s.lower():
            raise ValueError(f"not a rational 'num/den' string: {text!r}")
        return Fraction(s)
    raise TypeError(f"cannot interpret {type(text).__name__} as a rational")


def format_rational(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


@total_ordering
@dataclass(frozen=True)
class Radius:
    """A p-adic norm value: zero, or p**exponent.

    ``exponent is None`` encodes the zero radius. Ordering is exact and
    treats zero as smaller than every power.
    """

    exponent: Optional[int] = None

    @classmethod
    def power(cls, exponent: int) -> "Radius":
        return cls(int(exponent))

    @classmethod
    def zero(cls) -> "Radius":
        return cls(None)

    @property
    def is_zero(self) -> bool:
        return self.exponent is None

    def __lt__(self, other: "Radius") -> bool:
        if not isinstance(other, Radius):
            return NotImplemented
        if self.exponent is None:
            return other.exponent is not None
        if other.exponent is None:
            return False
        return self.exponent < other.exponent

    def __mul__(self, other: "Radius") -> "Radius":
        if self.is_zero or other.is_zero:
            return Radius.zero()
        return Radius(self.exponent + other.exponent)

    def __truediv__(self, other: "Radius") -> "Radius":
        if other.is_zero:
            raise DivisionByZero("division by the zero radius")
        if self.is_zero:
            return self
        return Radius(self.exponent - other.exponent)

    def __pow__(self, k: int) -> "Radius":
        if self.is_zero:
            if k <= 0:
                raise DivisionByZero("non-positive power of the zero radius")
            return self
        return Radius(self.exponent * k)

    def value(self, p: int) -> Fraction:
        if self.is_zero:
            return Fraction(0)
        return Fraction(p) ** self.exponent

    def render(self, p: int) -> str:
        return "0" if self.is_zero else f"{p}^{self.exponent}"

    def to_json(self):
        return "zero" if self.is_zero else self.exponent

    def __repr__(self) -> str:
        return "Radius.zero()" if self.is_zero else f"Radius.power({self.exponent})"


@dataclass(frozen=True, init=False)
class PadicNumber:
    """A rational number considered as an element of Q_p."""

    value: Fraction
    p: int

    def __init__(self, value: Rational, p: int):
        object.__setattr__(self, "value", parse_rational(value))
        object.__setattr__(self, "p", check_prime(p))

    @property
    def numerator(self) -> int:
        return self.value.numerator

    @property
    def denominator(self) -> int:
        return self.value.denominator

    @property
    def prime(self) -> int:
        return self.p

    def is_zero(self) -> bool:
        return self.value == 0

    def _coerce(self, other) -> Fraction:
        if isinstance(other, PadicNumber):
            if other.p != self.p:
                raise PrimeMismatch(f"operands live in Q_{self.p} and Q_{other.p}")
            return other.value
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Fraction(other)
        raise TypeError(f"unsupported operand {other!r}")

    def _wrap(self, q: Fraction) -> "PadicNumber":
        new = object.__new__(PadicNumber)
        object.__setattr__(new, "value", q)
        object.__setattr__(new, "p", self.p)
        return new

    def __add__(self, other):
        return self._wrap(self.value + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return self._wrap(self.value - self._coerce(other))

    def __rsub__(self, other):
        return self._wrap(self._coerce(other) - self.value)

    def __mul__(self, other):
        return self._wrap(self.value * self._coerce(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        d = self._coerce(other)
        if d == 0:
            raise DivisionByZero("division by zero in Q_p")
        return self._wrap(self.value / d)

    def __rtruediv__(self, other):
        if self.value == 0:
            raise DivisionByZero("division by zero in Q_p")
        return self._wrap(self._coerce(other) / self.value)

    def __neg__(self):
        return self._wrap(-self.value)

    def __pow__(self, k: int):
        if k < 0 and self.value == 0:
            raise DivisionByZero("negative power of zero")
        return self._wrap(self.value**k)

    def __eq__(self, other):
        if isinstance(other, PadicNumber):
            return self.p == other.p and self.value == other.value
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.value == other
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __str__(self) -> str:
        return format_rational(self.value)

    def __repr__(self) -> str:
        return f"PadicNumber('{self}', p={self.p})"

    def valuation(self):
        return valuation(self)

    def norm(self) -> Radius:
        return norm(self)


def valuation(x: PadicNumber):
    """p-adic valuation of x; ``math.inf`` for zero."""
    if x.value == 0:
        return math.inf
    n, d = x.value.numerator, x.value.denominator
    if n % x.p == 0:
        return int_valuation(n, x.p)
    if d % x.p == 0:
        return -int_valuation(d, x.p)
    return 0


def norm(x: PadicNumber) -> Radius:
    v = valuation(x)
    return Radius.zero() if v == math.inf else Radius(-v)


def unit_part(x: PadicNumber) -> Fraction:
    """The factor n/m of x = p**v * n/m with p coprime to n and m."""
    v = valuation(x)
    if v == math.inf:
        raise ValueError("zero has no unit part")
    return x.value / Fraction(x.p) ** v


@dataclass(frozen=True)
class Ball:
    """Closed ball U_r(center) = {x : |x - center|_p <= r}."""

    center: PadicNumber
    radius: Radius

    def __post_init__(self):
        if self.radius.is_zero:
            raise ValueError("a ball needs a positive radius")

    def __contains__(self, x: PadicNumber) -> bool:
        return in_ball(x, self)


@dataclass(frozen=True)
class Sphere:
    """Sphere S_r(center) = {x : |x - center|_p = r}."""

    center: PadicNumber
    radius: Radius

    def __post_init__(self):
        if self.radius.is_zero:
            raise ValueError("S_0 is a single point, not a sphere")

    def __contains__(self, x: PadicNumber) -> bool:
        return in_sphere(x, self)


def in_ball(x: PadicNumber, b: Ball) -> bool:
    return norm(x - b.center) <= b.radius


def in_sphere(x: PadicNumber, s: Sphere) -> bool:
    return norm(x - s.center) == s.radius


@dataclass(frozen=True)
class CappedPadic:
    """A p-adic number known to finitely many digits, p**val * unit.

    ``unit`` is a p-adic unit known modulo p**prec (relative precision).
    ``val is None`` marks an exact zero. Every operation propagates
    precision so the valuation of a result is certified; when an
    addition cancels all known digits, PrecisionExhausted is raised
    instead of guessing.
    """

    p: int
    val: Optional[int]
    unit: int
    prec: int

    @classmethod
    def from_rational(cls, q: Fraction, p: int, prec: int) -> "CappedPadic":
        if q == 0:
            return cls(p, None, 0, 0)
        n, d = q.numerator, q.denominator
        v = 0
        while n % p == 0:
            n //= p
            v += 1
        while d % p == 0:
            d //= p
            v -= 1
        mod = p**prec
        return cls(p, v, n * pow(d, -1, mod) % mod, prec)

    @property
    def is_zero(self) -> bool:
        return self.val is None

    @property
    def abs_prec(self) -> float:
        return math.inf if self.val is None else self.val + self.prec

    def norm(self) -> Radius:
        return Radius.zero() if self.val is None else Radius(-self.val)

    def __neg__(self):
        if self.val is None:
            return self
        mod = self.p**self.prec
        return CappedPadic(self.p, self.val, -self.unit % mod, self.prec)

    def __add__(self, other: "CappedPadic") -> "CappedPadic":
        if self.val is None:
            return other
        if other.val is None:
            return self
        p = self.p
        v = min(self.val, other.val)
        top = min(self.abs_prec, other.abs_prec)
        mod = p ** (top - v)
        raw = (self.unit * p ** (self.val - v) + other.unit * p ** (other.val - v)) % mod
        if raw == 0:
            raise PrecisionExhausted(f"sum vanishes to {top - v} digits")
        shift = int_valuation(raw, p)
        prec = top - v - shift
        return CappedPadic(p, v + shift, (raw // p**shift) % p**prec, prec)

    def __sub__(self, other: "CappedPadic") -> "CappedPadic":
        return self + (-other)

    def __mul__(self, other: "CappedPadic") -> "CappedPadic":
        if self.val is None or other.val is None:
            return CappedPadic(self.p, None, 0, 0)
        prec = min(self.prec, other.prec)
        mod = self.p**prec
        return CappedPadic(self.p, self.val + other.val, self.unit * other.unit % mod, prec)

    def __truediv__(self, other: "CappedPadic") -> "CappedPadic":
        if other.val is None:
            raise DivisionByZero("division by an exact zero")
        if self.val is None:
            return self
        prec = min(self.prec, other.prec)
        mod = self.p**prec
        return CappedPadic(
            self.p, self.val - other.val, self.unit * pow(other.unit, -1, mod) % mod, prec
        )

    def residue(self, n: int) -> int:
        """The value modulo p**n; requires a p-adic integer known to n digits."""
        if self.val is None:
            return 0
        if self.val < 0:
            raise ValueError("not a p-adic integer")
        if self.abs_prec < n:
            raise PrecisionExhausted(f"only {self.abs_prec} digits known, {n} requested")
        return self.unit * self.p**self.val % self.p**n
