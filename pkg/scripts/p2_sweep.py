#!/usr/bin/env python3
"""Sweep random p = 2 maps and compare the closed-form verdict with cycle counts.

    python scripts/p2_sweep.py --maps 500 --max-level 12 --csv sweep.csv
"""

import argparse
import csv
import random
import sys
import time

from padyn import sampling
from padyn.ergodicity import Theoretical, verdict
from padyn.rational_map import Regime, profile


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--maps", type=int, default=300)
    ap.add_argument("--max-level", type=int, default=12)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--csv", help="write one row per (map, radius)")
    args = ap.parse_args(argv)

    rng = random.Random(args.seed)
    rows = []
    t0 = time.perf_counter()
    for _ in range(args.maps):
        params = sampling.random_params(rng, 2)
        prof = profile(params)
        exps = set(sampling.invariant_exps(prof, rng, 3))
        if prof.regime is not Regime.ALPHA_EQUAL:
            exps.add(prof.max_exp + 1)
        for l in sorted(exps):
            v = verdict(params, l, args.max_level)
            rows.append(
                {
                    **params.to_config(),
                    "regime": prof.regime.value,
                    "alpha_exp": prof.alpha.to_json(),
                    "beta_exp": prof.beta.exponent,
                    "r_exp": l,
                    "theoretical": v.theoretical.value,
                    "cycles": " ".join(str(lv.cycle_count) for lv in v.levels),
                    "agrees": (v.theoretical is Theoretical.ERGODIC) == v.empirically_transitive,
                }
            )
    elapsed = time.perf_counter() - t0

    erg = sum(r["theoretical"] == "ergodic" for r in rows)
    bad = [r for r in rows if not r["agrees"]]
    print(f"{args.maps} maps, {len(rows)} radii, {erg} ergodic, {len(bad)} disagreements, {elapsed:.1f}s")
    for r in bad[:10]:
        print("  disagreement:", r)
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=list(rows[0]))
            w.writeheader()
            w.writerows(rows)
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
