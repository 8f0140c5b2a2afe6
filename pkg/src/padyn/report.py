"""Assembly and rendering of analysis reports."""

from __future__ import annotations

import json
import random
from typing import List

from padyn import __version__, sampling
from padyn.config import AnalysisConfig
from padyn.ergodicity import verdict
from padyn.padic import PadicNumber, Radius, format_rational, norm
from padyn.radius import RadiusMap, iterate_radius, orbit_radius_trace
from padyn.rational_map import (
    EXACT_PHASE_BITS,
    PoleHit,
    TheoryDisagreement,
    deviation_norms,
    displacement_from_fixed_point,
    evaluate,
    orbit,
    profile,
)
from padyn.spheres import invariant_radii, normalized_measure_of_ball, rho

SCHEMA_VERSION = 1


def auto_radii(config: AnalysisConfig) -> List[int]:
    if config.radii != "auto":
        return list(config.radii)
    t = invariant_radii(profile(config.params)).threshold
    return list(range(t + 1, t + 6))


def _invariance_oracle(params, prof, l, rng, count, invariant: bool) -> dict:
    """Sample the sphere and count points whose image stays on it.

    Only invariant spheres get a verdict: on the others a small sample can
    stay on the sphere by chance.
    """
    ok = 0
    for _ in range(count):
        x = sampling.sphere_point(rng, prof.x0, l)
        try:
            ok += norm(evaluate(params, x) - prof.x0) == Radius.power(l)
        except PoleHit:
            pass
    return {"samples": count, "stayed_on_sphere": ok, "passed": ok == count if invariant else None}


def radius_block(config: AnalysisConfig, l: int, rng: random.Random) -> dict:
    params = config.params
    prof = profile(params)
    rmap = RadiusMap(prof.regime, prof.alpha, prof.beta)
    inv = invariant_radii(prof).contains(l)
    block = {
        "r_exp": l,
        "radius": Radius.power(l).render(params.p),
        "invariant": inv,
        "radius_dynamics": [res.to_json() for res in iterate_radius(rmap, Radius.power(l), 5)],
        "invariance_oracle": _invariance_oracle(params, prof, l, rng, config.samples.points, inv),
    }
    if not inv:
        block.update(rho_exp=None, measure=None, verdict=None)
        return block
    rad = rho(prof, params, l)
    block["rho_exp"] = rad.exponent
    block["measure"] = normalized_measure_of_ball(params.p, rad.exponent, l).to_json()
    block["verdict"] = verdict(params, l, config.max_level).to_json()
    return block


def _orbit_checks(config: AnalysisConfig, rng: random.Random) -> dict:
    params = config.params
    prof = profile(params)
    n = config.samples.points
    steps = min(config.samples.orbit_steps, config.orbit_cap)
    ff = ff_ok = l1 = l1_ok = 0
    for _ in range(n):
        l = prof.beta.exponent + rng.randint(-3, 3)
        x = sampling.sphere_point(rng, prof.x0, l)
        try:
            displacement_from_fixed_point(params, x)
            ff_ok += 1
        except PoleHit:
            continue
        except TheoryDisagreement:
            pass
        ff += 1
        try:
            l1_ok += orbit_radius_trace(params, x, steps).ok
            l1 += 1
        except PoleHit:
            pass
    return {
        "displacement_identity": {"checked": ff, "passed": ff_ok},
        "radius_map_orbits": {"checked": l1, "passed": l1_ok, "steps": steps},
    }


def analysis_report(config: AnalysisConfig, seed: int) -> dict:
    rng = random.Random(seed)
    params = config.params
    prof = profile(params)
    rmap = RadiusMap(prof.regime, prof.alpha, prof.beta)
    inv = invariant_radii(prof)
    radii = [radius_block(config, l, rng) for l in auto_radii(config)]
    echo = config.to_json()
    echo["seed"] = seed
    return {
        "tool": "padyn",
        "version": __version__,
        "schema_version": SCHEMA_VERSION,
        "config": echo,
        "profile": prof.to_json(),
        "invariant_set": {**inv.to_json(), "description": inv.describe(params.p)},
        "radius_map": {"regime": prof.regime.value, "branches": rmap.branches()},
        "radii": radii,
        "orbit_checks": _orbit_checks(config, rng),
        "disagreement": any(b["verdict"] and b["verdict"]["disagreement"] for b in radii),
    }


def ergodicity_report(config: AnalysisConfig) -> dict:
    params = config.params
    prof = profile(params)
    inv = invariant_radii(prof)
    verdicts = [verdict(params, l, config.max_level).to_json() for l in auto_radii(config) if inv.contains(l)]
    return {
        "tool": "padyn",
        "version": __version__,
        "schema_version": SCHEMA_VERSION,
        "config": config.to_json(),
        "profile": prof.to_json(),
        "verdicts": verdicts,
        "disagreement": any(v["disagreement"] for v in verdicts),
    }


def orbit_rows(config: AnalysisConfig, start: PadicNumber, n: int) -> dict:
    """Orbit table; values too large to print are elided, norms stay exact."""
    params = config.params
    x0 = profile(params).x0
    pole_step = None
    try:
        norms = deviation_norms(params, start, n, config.orbit_cap)
    except PoleHit as exc:
        pole_step = exc.step
        norms = deviation_norms(params, start, exc.step, config.orbit_cap)
    rows = []
    x = start
    for k, r in enumerate(norms):
        if x is not None:
            value = format_rational(x.value)
        else:
            value = None
        rows.append({"step": k, "value": value, "distance_exp": r.to_json()})
        if x is not None and k < len(norms) - 1:
            x = orbit(params, x, 1, config.orbit_cap)[1]
            if x.numerator.bit_length() + x.denominator.bit_length() > EXACT_PHASE_BITS:
                x = None
    return {
        "config": config.to_json(),
        "start": format_rational(start.value),
        "x0": str(x0),
        "rows": rows,
        "pole_step": pole_step,
    }


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"


def _fmt_exp(v) -> str:
    return "zero" if v == "zero" else str(v)


def _oracle_text(passed) -> str:
    return "-" if passed is None else "pass" if passed else "fail"


def render_analysis(rep: dict) -> str:
    p = rep["config"]["map"]["p"]
    pr = rep["profile"]
    lines = [
        f"padyn {rep['version']}  map (x^2 + a x + b)/(x + c) over Q_{p}",
        f"  a = {rep['config']['map']['a']}, b = {rep['config']['map']['b']}, c = {rep['config']['map']['c']}",
        f"  x0 = {pr['x0']}  alpha = {p}^{_fmt_exp(pr['alpha'])}  beta = {p}^{pr['beta']}"
        f"  regime {pr['regime']}  fixed point {pr['fixed_point_class']}",
        f"  invariant radii: {rep['invariant_set']['description']}",
        "",
        f"  {'r':>8} {'inv':>4} {'rho':>6} {'mu(raw)':>9} {'mu':>7} {'oracle':>7}  verdict",
    ]
    for b in rep["radii"]:
        m = b["measure"] or {}
        v = b["verdict"]
        if v:
            levels = "".join("1" if lv["transitive"] else "0" for lv in v["levels"])
            vtxt = f"{v['theoretical']} [{v['rule']}] levels {levels}"
            if v["witness"]:
                vtxt += f" witness mu={v['witness']['measure']['clamped']}"
            if v["disagreement"]:
                vtxt += "  DISAGREEMENT"
        else:
            vtxt = "-"
        lines.append(
            f"  {b['radius']:>8} {('yes' if b['invariant'] else 'no'):>4} "
            f"{str(b['rho_exp']) if b['rho_exp'] is not None else '-':>6} "
            f"{m.get('raw', '-'):>9} {m.get('clamped', '-'):>7} "
            f"{_oracle_text(b['invariance_oracle']['passed']):>7}  {vtxt}"
        )
    lc = rep["orbit_checks"]
    lines += [
        "",
        f"  displacement-identity {lc['displacement_identity']['passed']}/{lc['displacement_identity']['checked']}"
        f"   radius-map {lc['radius_map_orbits']['passed']}/{lc['radius_map_orbits']['checked']}"
        f" ({lc['radius_map_orbits']['steps']} steps)",
    ]
    return "\n".join(lines) + "\n"


def render_ergodicity(rep: dict) -> str:
    p = rep["config"]["map"]["p"]
    lines = []
    for v in rep["verdicts"]:
        counts = " ".join(str(lv["cycle_count"]) for lv in v["levels"])
        line = f"r = {p}^{v['r_exp']}: {v['theoretical']} [{v['rule']}]  cycles by level: {counts}"
        if v["witness"]:
            w = v["witness"]
            line += f"  witness U_{{{p}^{w['rho_exp']}}}({w['center']}) mu={w['measure']['clamped']}"
        if v["disagreement"]:
            line += "  DISAGREEMENT"
        lines.append(line)
    return "\n".join(lines) + "\n"


def render_orbit(rep: dict) -> str:
    lines = [f"{'step':>4}  {'dist exp':>9}  value"]
    for row in rep["rows"]:
        value = row["value"] if row["value"] is not None else "(elided)"
        lines.append(f"{row['step']:>4}  {_fmt_exp(row['distance_exp']):>9}  {value}")
    if rep["pole_step"] is not None:
        lines.append(f"pole -c reached at step {rep['pole_step']}")
    return "\n".join(lines) + "\n"


def render_verify(rep: dict) -> str:
    lines = []
    for s in rep["suites"]:
        flag = "PASS" if s["passed"] else "FAIL"
        lines.append(f"{flag}  {s['name']:<18} {s['checked']:>6} checks")
        for f in s["failures"]:
            lines.append(f"      {f}")
    lines.append("all suites passed" if rep["passed"] else "some suites FAILED")
    return "\n".join(lines) + "\n"
