#!/usr/bin/env python3
"""Random polynomial pairs on 1 + 2Z_2: mod-4 criterion against cycle counts."""

import argparse
import random
import sys
from collections import Counter

from padyn.ergodicity import Mod4Inputs, brute_force_ergodic, mod4_criterion


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--pairs", type=int, default=1000)
    ap.add_argument("--coef", type=int, default=8, help="coefficients drawn from [-coef, coef]")
    ap.add_argument("--degree", type=int, default=4)
    ap.add_argument("--max-level", type=int, default=12)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    rng = random.Random(args.seed)
    patterns = Counter()
    bad = checked = 0
    while checked < args.pairs:
        num = [rng.randint(-args.coef, args.coef) for _ in range(rng.randint(1, args.degree + 1))]
        den = [rng.randint(-args.coef, args.coef) for _ in range(rng.randint(1, args.degree + 1))]
        if sum(num) % 2 == 0 or sum(den) % 2 == 0:
            continue
        checked += 1
        want = brute_force_ergodic(num, den, args.max_level)
        got = mod4_criterion(num, den)
        m = Mod4Inputs.of(num, den)
        patterns[(m.A1, m.A2, m.B1, m.B2, want)] += 1
        if got != want:
            bad += 1
            print(f"disagreement: num={num} den={den} criterion={got} brute={want}")

    print(f"{checked} pairs, {bad} disagreements")
    print("ergodic (A1, A2, B1, B2) patterns seen:")
    for (a1, a2, b1, b2, erg), k in sorted(patterns.items()):
        if erg:
            print(f"  ({a1}, {a2}, {b1}, {b2})  x{k}")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
