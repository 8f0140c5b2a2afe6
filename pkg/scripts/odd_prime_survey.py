#!/usr/bin/env python3
"""Cycle structure of the sphere map for p >= 3, by classification rule.

Covers the cases with a closed-form verdict and also the uncovered case
(alpha = beta, |a - c| = beta, r < beta), where only data is available.
"""

import argparse
import random
import sys
from collections import defaultdict

from padyn import sampling
from padyn.ergodicity import Theoretical, verdict
from padyn.rational_map import Regime, profile


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--primes", type=int, nargs="+", default=[3, 5, 7])
    ap.add_argument("--maps", type=int, default=100, help="maps per prime")
    ap.add_argument("--max-level", type=int, default=6)
    ap.add_argument("--max-domain", type=int, default=20000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    rng = random.Random(args.seed)
    stats = defaultdict(lambda: {"radii": 0, "transitive": 0, "witness": 0, "disagree": 0})
    for p in args.primes:
        for i in range(args.maps):
            # bias a third of the draws towards alpha = beta, where the uncovered case lives
            regime = Regime.ALPHA_EQUAL if i % 3 == 0 else None
            params = sampling.random_params(rng, p, regime)
            prof = profile(params)
            for l in sampling.invariant_exps(prof, rng, 2):
                v = verdict(params, l, args.max_level, args.max_domain)
                s = stats[(p, v.rule)]
                s["radii"] += 1
                s["transitive"] += v.empirically_transitive
                s["witness"] += v.witness is not None
                s["disagree"] += v.disagreement
                if v.theoretical is Theoretical.UNDECIDED and v.empirically_transitive:
                    print(f"transitive up to level {v.levels[-1].n}: p={p} {params.to_config()} r_exp={l}")

    print(f"{'p':>3} {'rule':<26} {'radii':>6} {'transitive':>11} {'witness':>8} {'disagree':>9}")
    for (p, rule), s in sorted(stats.items()):
        print(f"{p:>3} {rule:<26} {s['radii']:>6} {s['transitive']:>11} {s['witness']:>8} {s['disagree']:>9}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
