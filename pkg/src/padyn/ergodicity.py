"""Ergodicity of f on invariant spheres.

Two independent routes are kept side by side:

* closed-form verdicts (the p >= 3 non-ergodicity cases, the p = 2
  criterion on r = 2 max{alpha, beta}, and the mod-4 test for rational
  maps of 1 + 2Z_2);
* a finite-level oracle: conjugate the sphere to S_1(0), reduce modulo
  p^n and count cycles. The conjugated map is an isometry, so ergodicity
  means a single cycle at every level.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from padyn.padic import Ball, PadicNumber, norm
from padyn.rational_map import (
    ConjugatedMap,
    DynamicsProfile,
    MapParams,
    NotInvariantRadius,
    Regime,
    TheoryDisagreement,
    conjugate_to_unit_sphere,
    profile,
)
from padyn.spheres import invariant_radii, normalized_measure_of_ball, rho, MeasureValue

DEFAULT_MAX_LEVEL = 12
# Levels whose unit group exceeds this many residues are skipped.
DEFAULT_MAX_DOMAIN = 2**19


class DomainViolation(ValueError):
    pass


class NonUnitDenominator(ArithmeticError):
    pass


class NonIntegralCoefficient(ValueError):
    pass


class Theoretical(enum.Enum):
    ERGODIC = "ergodic"
    NOT_ERGODIC = "not_ergodic"
    UNDECIDED = "undecided"


def classify(prof: DynamicsProfile, params: MapParams, l: int) -> Tuple[Theoretical, str]:
    """Closed-form verdict for (S_{p^l}(x0), f, mu) and the rule that fired."""
    inv = invariant_radii(prof)
    if not inv.contains(l):
        raise NotInvariantRadius(f"S_(p^{l})(x0) is not invariant")
    if params.p == 2:
        if prof.regime is not Regime.ALPHA_EQUAL and l == prof.max_exp + 1:
            return Theoretical.ERGODIC, "p2-iff"
        return Theoretical.NOT_ERGODIC, "p2-iff"
    if prof.regime is not Regime.ALPHA_EQUAL:
        return Theoretical.NOT_ERGODIC, "p-odd-I1"
    gap = norm(params.a - params.c)
    if gap < prof.beta:
        return Theoretical.NOT_ERGODIC, "p-odd-I2-gap-below-beta"
    if l > prof.beta.exponent:
        return Theoretical.NOT_ERGODIC, "p-odd-I2-radius-above-beta"
    return Theoretical.UNDECIDED, "p-odd-uncovered"


# -- residue arithmetic -------------------------------------------------------


def reduce_mod(q, p: int, n: int) -> int:
    """A p-adic integer (int, Fraction or PadicNumber) modulo p**n."""
    if isinstance(q, PadicNumber):
        q = q.value
    q = Fraction(q)
    mod = p**n
    if q.denominator % p == 0:
        raise NonIntegralCoefficient(f"{q} is not a {p}-adic integer")
    return q.numerator * pow(q.denominator, -1, mod) % mod


def _horner(coeffs: Sequence[int], t: int, mod: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * t + c) % mod
    return acc


def rational_residues(num: Sequence, den: Sequence, p: int, n: int) -> List[int]:
    """h(t) mod p**n for every t in [0, p**n), -1 where t is not a unit.

    Raises NonUnitDenominator if the denominator vanishes mod p at a unit.
    """
    mod = p**n
    nc = [reduce_mod(c, p, n) for c in num]
    dc = [reduce_mod(c, p, n) for c in den]
    out = [-1] * mod
    for t in range(mod):
        if t % p == 0:
            continue
        d = _horner(dc, t, mod)
        if d % p == 0:
            raise NonUnitDenominator(f"denominator is not a unit at t = {t} mod {p}^{n}")
        out[t] = _horner(nc, t, mod) * pow(d, -1, mod) % mod
    return out


@dataclass(frozen=True)
class ResidueSphereMap:
    """The action of a sphere map on units modulo p**n."""

    p: int
    n: int
    images: Tuple[int, ...]  # indexed by residue, -1 off the domain

    @property
    def domain(self) -> List[int]:
        return [t for t in range(self.p**self.n) if t % self.p]

    @property
    def domain_size(self) -> int:
        return (self.p - 1) * self.p ** (self.n - 1)

    def is_bijective(self) -> bool:
        img = [self.images[t] for t in self.domain]
        return all(v % self.p for v in img) and len(set(img)) == len(img)

    def restrict(self, k: int) -> "ResidueSphereMap":
        """The induced map modulo p**k (well defined for 1-Lipschitz maps)."""
        mod = self.p**k
        return ResidueSphereMap(
            self.p, k, tuple(self.images[t] % mod if t % self.p else -1 for t in range(mod))
        )


def build_residue_sphere_map(conj: ConjugatedMap, n: int) -> ResidueSphereMap:
    if n < 1:
        raise ValueError("level must be at least 1")
    num, den = conj.integral_form()
    m = ResidueSphereMap(conj.p, n, tuple(rational_residues(num, den, conj.p, n)))
    if not m.is_bijective():
        raise TheoryDisagreement(f"conjugated map is not a bijection mod {conj.p}^{n}")
    return m


def cycle_count(images: Sequence[int], domain: Sequence[int]) -> int:
    """Number of cycles of a permutation given as an image table."""
    seen = set()
    count = 0
    for start in domain:
        if start in seen:
            continue
        count += 1
        t = start
        while t not in seen:
            seen.add(t)
            t = images[t]
    return count


def transitivity_check(m: ResidueSphereMap) -> Tuple[int, bool]:
    if not m.is_bijective():
        raise ValueError("transitivity needs a bijection")
    k = cycle_count(m.images, m.domain)
    return k, k == 1


def is_single_cycle(images: Sequence[int], domain: Sequence[int]) -> bool:
    """Transitivity for an arbitrary self-map of ``domain``."""
    start = domain[0]
    t = start
    for step in range(1, len(domain) + 1):
        t = images[t]
        if t == start:
            return step == len(domain)
        if t < 0:
            return False
    return False


# -- the mod-4 criterion -------------------------------------------------------


@dataclass(frozen=True)
class Mod4Inputs:
    A1: int
    A2: int
    B1: int
    B2: int

    @classmethod
    def of(cls, num: Sequence, den: Sequence) -> "Mod4Inputs":
        def part(coeffs, parity):
            return sum(reduce_mod(c, 2, 2) for c in coeffs[parity::2]) % 4

        return cls(part(num, 1), part(num, 0), part(den, 1), part(den, 0))

    def swapped(self) -> "Mod4Inputs":
        return Mod4Inputs(self.B1, self.B2, self.A1, self.A2)


_ERGODIC_PATTERNS = {(1, 2, 0, 1), (3, 2, 0, 3), (1, 0, 2, 1), (3, 0, 2, 3)}


def _poly_value_at_one(coeffs: Sequence) -> Fraction:
    return sum((Fraction(c.value if isinstance(c, PadicNumber) else c) for c in coeffs), Fraction(0))


def mod4_criterion(num: Sequence, den: Sequence) -> bool:
    """Ergodicity of t -> num(t)/den(t) on 1 + 2Z_2 from coefficient sums mod 4.

    Coefficients are listed lowest degree first and must be 2-adic
    integers; both polynomials must send odd numbers to odd numbers.
    """
    try:
        for side in (num, den):
            if reduce_mod(_poly_value_at_one(side), 2, 1) != 1:
                raise DomainViolation("polynomial does not map 1+2Z_2 into itself")
        m = Mod4Inputs.of(num, den)
    except NonIntegralCoefficient as exc:
        raise DomainViolation(str(exc)) from None
    key = (m.A1, m.A2, m.B1, m.B2)
    return key in _ERGODIC_PATTERNS or (m.B1, m.B2, m.A1, m.A2) in _ERGODIC_PATTERNS


def brute_force_ergodic(num: Sequence, den: Sequence, max_level: int = DEFAULT_MAX_LEVEL) -> bool:
    """Single cycle on odd residues mod 2^n for every n <= max_level."""
    top = rational_residues(num, den, 2, max_level)
    for n in range(1, max_level + 1):
        mod = 2**n
        images = [top[t] % mod if t % 2 else -1 for t in range(mod)]
        if not is_single_cycle(images, list(range(1, mod, 2))):
            return False
    return True


def conjugate_mod4_inputs(conj: ConjugatedMap) -> Mod4Inputs:
    """(1, p^l (x0+c), p^l (x0+a), 1) reduced mod 4, for the (k) form.

    This labels the denominator t + p^l(x0+c) as the first polynomial, i.e.
    it equals ``Mod4Inputs.of(den, num)`` for the conjugated map.
    """
    scaleC = conj.denominator[0]
    scaleA = conj.numerator[1]
    return Mod4Inputs(1, reduce_mod(scaleC, 2, 2), reduce_mod(scaleA, 2, 2), 1)


# -- verdicts -----------------------------------------------------------------


@dataclass(frozen=True)
class LevelResult:
    n: int
    domain_size: int
    cycle_count: int
    transitive: bool

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "domain_size": self.domain_size,
            "cycle_count": self.cycle_count,
            "transitive": self.transitive,
        }


@dataclass(frozen=True)
class Witness:
    ball: Ball
    measure: MeasureValue

    def to_json(self) -> dict:
        return {
            "center": str(self.ball.center),
            "rho_exp": self.ball.radius.exponent,
            "measure": self.measure.to_json(),
        }


@dataclass
class ErgodicityVerdict:
    r_exp: int
    theoretical: Theoretical
    rule: str
    levels: List[LevelResult] = field(default_factory=list)
    skipped_levels: List[int] = field(default_factory=list)
    witness: Optional[Witness] = None
    disagreement: bool = False
    notes: List[str] = field(default_factory=list)

    @property
    def empirically_transitive(self) -> bool:
        return all(lv.transitive for lv in self.levels)

    def to_json(self) -> dict:
        return {
            "r_exp": self.r_exp,
            "theoretical": self.theoretical.value,
            "rule": self.rule,
            "levels": [lv.to_json() for lv in self.levels],
            "skipped_levels": list(self.skipped_levels),
            "witness": None if self.witness is None else self.witness.to_json(),
            "disagreement": self.disagreement,
            "notes": list(self.notes),
        }


def level_results(
    conj: ConjugatedMap, levels: Sequence[int], max_domain: int = DEFAULT_MAX_DOMAIN
) -> Tuple[List[LevelResult], List[int]]:
    """Cycle counts of the conjugated map at each level (one top-level evaluation)."""
    p = conj.p
    kept = [n for n in levels if (p - 1) * p ** (n - 1) <= max_domain]
    skipped = [n for n in levels if n not in kept]
    if not kept:
        return [], skipped
    top = build_residue_sphere_map(conj, max(kept))
    out = []
    for n in kept:
        m = top.restrict(n)
        k, trans = transitivity_check(m)
        out.append(LevelResult(n, m.domain_size, k, trans))
    for lo, hi in zip(out, out[1:]):
        if not lo.transitive and hi.transitive:
            raise TheoryDisagreement(f"level {hi.n} transitive above intransitive level {lo.n}")
    return out, skipped


def witness_ball(prof: DynamicsProfile, params: MapParams, l: int) -> Optional[Witness]:
    """U_{rho(r)}(s) at s = x0 + p^{-l}, when it is a proper part of the sphere."""
    rad = rho(prof, params, l)
    meas = normalized_measure_of_ball(params.p, rad.exponent, l)
    if meas.clamped >= 1:
        return None
    s = prof.x0 + Fraction(params.p) ** (-l)
    return Witness(Ball(s, rad), meas)


def verdict(
    params: MapParams,
    l: int,
    max_level: int = DEFAULT_MAX_LEVEL,
    max_domain: int = DEFAULT_MAX_DOMAIN,
) -> ErgodicityVerdict:
    if max_level < 2:
        raise ValueError("max_level must be at least 2")
    prof = profile(params)
    theo, rule = classify(prof, params, l)
    conj = conjugate_to_unit_sphere(params, l)
    levels, skipped = level_results(conj, range(2, max_level + 1), max_domain)
    wit = witness_ball(prof, params, l)
    v = ErgodicityVerdict(l, theo, rule, levels, skipped, wit)
    if theo is Theoretical.ERGODIC:
        if not v.empirically_transitive:
            v.disagreement = True
            v.notes.append("ergodic in theory but some level is intransitive")
        if wit is not None:
            v.disagreement = True
            v.notes.append("ergodic in theory but a proper invariant ball exists")
    elif theo is Theoretical.NOT_ERGODIC:
        if v.empirically_transitive and wit is None:
            v.disagreement = True
            v.notes.append("not ergodic in theory but no level or ball witnesses it")
    if skipped:
        v.notes.append(f"levels {skipped[0]}..{skipped[-1]} skipped (domain above {max_domain})")
    return v
