#!/usr/bin/env python3
"""Bit growth of exact orbits against the certified p-adic engine."""

import argparse
import sys
import time

from padyn.padic import PadicNumber, parse_rational
from padyn.rational_map import MapParams, deviation_norms, evaluate


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=int, default=2)
    ap.add_argument("--abc", nargs=3, default=["1", "1", "0"], metavar=("A", "B", "C"))
    ap.add_argument("--start", default="1")
    ap.add_argument("--steps", type=int, default=20)
    ap.add_argument("--exact-steps", type=int, default=14, help="stop exact iteration here")
    args = ap.parse_args(argv)

    params = MapParams.of(args.p, *(parse_rational(s) for s in args.abc))
    x = PadicNumber(parse_rational(args.start), args.p)
    print(f"{'step':>4} {'bits':>10} {'seconds':>9}")
    t0 = time.perf_counter()
    for k in range(1, args.exact_steps + 1):
        x = evaluate(params, x)
        bits = x.numerator.bit_length() + x.denominator.bit_length()
        print(f"{k:>4} {bits:>10} {time.perf_counter() - t0:>9.3f}")

    t0 = time.perf_counter()
    norms = deviation_norms(params, PadicNumber(parse_rational(args.start), args.p), args.steps)
    dt = time.perf_counter() - t0
    print(f"certified norms for {args.steps} steps in {dt:.3f}s:")
    print("  exponents", [r.to_json() for r in norms])
    return 0


if __name__ == "__main__":
    sys.exit(main())
