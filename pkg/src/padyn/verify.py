"""Property suites that check the closed-form results against exact computation.

Each suite draws its own points from a seeded generator and returns a
:class:`SuiteResult`; a failure records the first few counterexamples.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List

from padyn import sampling
from padyn.ergodicity import (
    Theoretical,
    brute_force_ergodic,
    mod4_criterion,
    verdict,
)
from padyn.padic import PadicNumber, Radius, norm
from padyn.radius import orbit_radius_trace
from padyn.rational_map import (
    MapParams,
    PoleHit,
    TheoryDisagreement,
    displacement_from_fixed_point,
    evaluate,
    profile,
    step_norms,
)
from padyn.spheres import invariant_radii, minimal_invariant_ball, rho_table

RhoFn = Callable[..., Radius]


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, msg: str) -> None:
        self.failures.append(msg)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "checked": self.checked,
            "passed": self.passed,
            "failure_count": len(self.failures),
            "failures": self.failures[:5],
        }


def norm_axioms(rng: random.Random, p: int, pairs: int) -> SuiteResult:
    res = SuiteResult("norm-axioms")
    bound = 2**64
    for _ in range(pairs):
        x = PadicNumber(Fraction(rng.randint(-bound, bound), rng.randint(1, bound)), p)
        y = PadicNumber(Fraction(rng.randint(-bound, bound), rng.randint(1, bound)), p)
        nx, ny = norm(x), norm(y)
        res.checked += 1
        if norm(x * y) != nx * ny:
            res.fail(f"|xy| != |x||y| for x={x}, y={y}")
        s = norm(x + y)
        if s > max(nx, ny) or (nx != ny and s != max(nx, ny)):
            res.fail(f"ultrametric inequality fails for x={x}, y={y}")
    return res


def _sample_radius(rng: random.Random, prof) -> int:
    """A radius exponent near alpha and beta, including both boundaries."""
    anchors = [prof.beta.exponent]
    if not prof.alpha.is_zero:
        anchors.append(prof.alpha.exponent)
    return rng.choice(anchors) + rng.randint(-3, 3)


def displacement_identity(rng: random.Random, maps: List[MapParams], points: int) -> SuiteResult:
    res = SuiteResult("displacement-identity")
    for params in maps:
        prof = profile(params)
        for _ in range(points):
            x = sampling.sphere_point(rng, prof.x0, _sample_radius(rng, prof))
            try:
                displacement_from_fixed_point(params, x)
            except PoleHit:
                continue
            except TheoryDisagreement as exc:
                res.fail(str(exc))
            res.checked += 1
    return res


def radius_map_orbits(rng: random.Random, maps: List[MapParams], points: int, steps: int) -> SuiteResult:
    res = SuiteResult("radius-map")
    for params in maps:
        prof = profile(params)
        for _ in range(points):
            x = sampling.sphere_point(rng, prof.x0, _sample_radius(rng, prof))
            try:
                trace = orbit_radius_trace(params, x, steps)
            except PoleHit:
                continue
            res.checked += 1
            if not trace.ok:
                res.fail(f"orbit norms leave the radius map for {params.to_config()}, x={x}")
    return res


def isometry(rng: random.Random, maps: List[MapParams], points: int) -> SuiteResult:
    res = SuiteResult("isometry")
    for params in maps:
        prof = profile(params)
        for l in sampling.invariant_exps(prof, rng, points):
            s = sampling.sphere_point(rng, prof.x0, l)
            rho_exp = rng.randint(l - 6, l - 1)
            x = sampling.ball_point(rng, s, rho_exp)
            res.checked += 1
            if norm(evaluate(params, x) - evaluate(params, s)) != norm(x - s):
                res.fail(f"f is not isometric near s={s} on S_(p^{l})")
    return res


def rho_values(
    rng: random.Random, maps: List[MapParams], points: int, rho_fn: RhoFn = rho_table
) -> SuiteResult:
    res = SuiteResult("rho-table")
    for params in maps:
        prof = profile(params)
        for l in sampling.invariant_exps(prof, rng, points):
            s = sampling.sphere_point(rng, prof.x0, l)
            res.checked += 1
            table = rho_fn(prof, params, l)
            seen = norm(evaluate(params, s) - s)
            if seen != table:
                res.fail(f"rho table {table} but |f(s)-s| = {seen} at s={s}")
    return res


def constant_steps(
    rng: random.Random,
    maps: List[MapParams],
    points: int,
    steps: int,
    rho_fn: RhoFn = rho_table,
) -> SuiteResult:
    res = SuiteResult("constant-steps")
    for params in maps:
        prof = profile(params)
        for l in sampling.invariant_exps(prof, rng, max(1, points // 4)):
            s = sampling.sphere_point(rng, prof.x0, l)
            res.checked += 1
            target = rho_fn(prof, params, l)
            got = step_norms(params, s, steps)
            if any(r != target for r in got):
                res.fail(f"|f^(n+1)(s)-f^n(s)| not constant {target} at s={s}")
                continue
            try:
                minimal_invariant_ball(prof, params, s, l, rng, samples=10)
            except TheoryDisagreement as exc:
                res.fail(str(exc))
    return res


def criterion_oracle(
    rng: random.Random, maps: List[MapParams], max_level: int, spread: int = 3
) -> SuiteResult:
    res = SuiteResult("criterion-oracle")
    for params in maps:
        prof = profile(params)
        inv = invariant_radii(prof)
        lo = prof.beta.exponent - spread if inv.kind == "all_except_beta" else prof.max_exp + 1
        for l in range(lo, prof.max_exp + spread + 1):
            if not inv.contains(l):
                continue
            v = verdict(params, l, max_level, max_domain=4096)
            res.checked += 1
            if v.disagreement:
                res.fail(f"{params.to_config()} at l={l}: {'; '.join(v.notes)}")
            elif params.p == 2 and (v.theoretical is Theoretical.ERGODIC) != v.empirically_transitive:
                res.fail(f"{params.to_config()} at l={l}: verdict and cycle counts differ")
    return res


def mod4_vs_bruteforce(rng: random.Random, count: int, max_level: int) -> SuiteResult:
    res = SuiteResult("mod4-criterion")
    while res.checked < count:
        num = [rng.randint(-8, 8) for _ in range(rng.randint(1, 5))]
        den = [rng.randint(-8, 8) for _ in range(rng.randint(1, 5))]
        if sum(num) % 2 == 0 or sum(den) % 2 == 0:
            continue
        res.checked += 1
        if mod4_criterion(num, den) != brute_force_ergodic(num, den, max_level):
            res.fail(f"criterion and brute force differ for num={num}, den={den}")
    return res


def run_all(config, seed: int, rho_fn: RhoFn = rho_table) -> List[SuiteResult]:
    """Every suite on the configured map plus ``samples.extra_maps`` random ones."""
    rng = random.Random(seed)
    params = config.params
    sm = config.samples
    maps = [params] + [sampling.random_params(rng, params.p) for _ in range(sm.extra_maps)]
    steps = min(sm.orbit_steps, config.orbit_cap - 1)
    return [
        norm_axioms(rng, params.p, sm.pairs),
        displacement_identity(rng, maps, sm.points),
        radius_map_orbits(rng, maps, sm.points, steps),
        isometry(rng, maps, sm.points),
        rho_values(rng, maps, sm.points, rho_fn),
        constant_steps(rng, maps, sm.points, steps, rho_fn),
        criterion_oracle(rng, maps, config.max_level),
        mod4_vs_bruteforce(rng, max(1, sm.points // 2), min(config.max_level, 10)),
    ]
