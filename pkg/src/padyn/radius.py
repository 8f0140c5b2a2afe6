"""Real dynamics on radii that shadows the p-adic orbit norms.

With y = x - x0, A = x0 + a and C = x0 + c one has
|f(x) - x0| = |y| |y + A| / |y + C|. Off the two boundary radii alpha = |A|
and beta = |C| the right side depends on |y| alone, which gives a
piecewise map r -> phi(r). On a boundary radius the image depends on
the point; only bounds are known, and those are what we carry.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional

from padyn.padic import PadicNumber, Radius
from padyn.rational_map import (
    DEFAULT_ORBIT_CAP,
    MapParams,
    Regime,
    deviation_norms,
    profile,
)


class ZeroRadius(ValueError):
    pass


@dataclass(frozen=True)
class RadiusMap:
    regime: Regime
    alpha: Radius
    beta: Radius

    def __post_init__(self):
        expected = (
            Regime.ALPHA_LESS
            if self.alpha < self.beta
            else Regime.ALPHA_EQUAL
            if self.alpha == self.beta
            else Regime.ALPHA_GREATER
        )
        if expected is not self.regime:
            raise ValueError(f"regime {self.regime.value} inconsistent with alpha, beta")

    @classmethod
    def from_params(cls, params: MapParams) -> "RadiusMap":
        prof = profile(params)
        return cls(prof.regime, prof.alpha, prof.beta)

    def branches(self) -> List[dict]:
        """Branch table of the active map, for reports."""
        a = self.alpha.to_json()
        b = self.beta.to_json()
        if self.regime is Regime.ALPHA_LESS:
            rows = [
                ("r < alpha", "(alpha/beta) r"),
                ("r = alpha", "indeterminate, <= alpha^2/beta"),
                ("alpha < r < beta", "r^2/beta"),
                ("r = beta", "indeterminate, >= beta"),
                ("r > beta", "r"),
            ]
            if self.alpha.is_zero:
                rows = rows[2:]
        elif self.regime is Regime.ALPHA_GREATER:
            rows = [
                ("r < beta", "(alpha/beta) r"),
                ("r = beta", "indeterminate, >= alpha"),
                ("beta < r < alpha", "alpha"),
                ("r = alpha", "indeterminate, <= alpha"),
                ("r > alpha", "r"),
            ]
        else:
            rows = [("r != alpha", "r"), ("r = alpha", "indeterminate")]
        return [
            {"when": w, "image": img, "alpha_exp": a, "beta_exp": b} for w, img in rows
        ]


@dataclass(frozen=True)
class RadiusResult:
    """Either a determined radius or bounds on a point-dependent one."""

    radius: Optional[Radius] = None
    lower: Optional[Radius] = None
    upper: Optional[Radius] = None

    @property
    def determined(self) -> bool:
        return self.radius is not None

    @classmethod
    def of(cls, r: Radius) -> "RadiusResult":
        return cls(radius=r)

    @classmethod
    def indeterminate(cls, lower=None, upper=None) -> "RadiusResult":
        return cls(None, lower, upper)

    def admits(self, r: Radius) -> bool:
        if self.determined:
            return r == self.radius
        if self.lower is not None and r < self.lower:
            return False
        if self.upper is not None and r > self.upper:
            return False
        return True

    def to_json(self):
        if self.determined:
            return self.radius.to_json()
        return {
            "indeterminate": True,
            "lower": None if self.lower is None else self.lower.to_json(),
            "upper": None if self.upper is None else self.upper.to_json(),
        }


def radius_step(rmap: RadiusMap, r: Radius) -> RadiusResult:
    if r.is_zero:
        raise ZeroRadius("the radius maps act on positive radii")
    al, be = rmap.alpha, rmap.beta
    if rmap.regime is Regime.ALPHA_LESS:
        if r < al:
            return RadiusResult.of(al / be * r)
        if r == al:
            return RadiusResult.indeterminate(upper=al * al / be)
        if r < be:
            return RadiusResult.of(r * r / be)
        if r == be:
            return RadiusResult.indeterminate(lower=be)
        return RadiusResult.of(r)
    if rmap.regime is Regime.ALPHA_GREATER:
        if r < be:
            return RadiusResult.of(al / be * r)
        if r == be:
            return RadiusResult.indeterminate(lower=al)
        if r < al:
            return RadiusResult.of(al)
        if r == al:
            return RadiusResult.indeterminate(upper=al)
        return RadiusResult.of(r)
    if r == al:
        return RadiusResult.indeterminate()
    return RadiusResult.of(r)


def iterate_radius(rmap: RadiusMap, r: Radius, n: int) -> List[RadiusResult]:
    """phi(r), ..., phi^n(r), cut short after the first indeterminate value."""
    if n < 1:
        raise ValueError("n must be at least 1")
    out = []
    for _ in range(n):
        res = radius_step(rmap, r)
        out.append(res)
        if not res.determined:
            break
        r = res.radius
    return out


@dataclass
class OrbitRadiusTrace:
    exact: List[Radius]
    predicted: List[RadiusResult]
    ok: bool
    boundary_hits: int = 0


def orbit_radius_trace(
    params: MapParams, x: PadicNumber, n: int, cap: int = DEFAULT_ORBIT_CAP
) -> OrbitRadiusTrace:
    """Compare certified orbit norms with radius-map iterates for k = 1..n.

    At a boundary radius the exact norm must respect the bound; iteration
    then continues from that exact norm. Once the orbit lands on x0 it
    stays there and the remaining norms must all be zero.
    """
    rmap = RadiusMap.from_params(params)
    exact = deviation_norms(params, x, n, cap)
    if exact[0].is_zero:
        raise ValueError("x must differ from the fixed point")
    predicted: List[RadiusResult] = []
    ok = True
    hits = 0
    for k in range(1, n + 1):
        prev = exact[k - 1]
        if prev.is_zero:
            res = RadiusResult.of(Radius.zero())
        else:
            res = radius_step(rmap, prev)
            hits += not res.determined
        predicted.append(res)
        ok &= res.admits(exact[k])
    return OrbitRadiusTrace(exact[1:], predicted, ok, hits)


def orbit_radius_check(params: MapParams, x: PadicNumber, n: int, cap: int = DEFAULT_ORBIT_CAP) -> bool:
    return orbit_radius_trace(params, x, n, cap).ok
