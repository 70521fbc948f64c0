#!/usr/bin/env python3
"""Sweep the bound-attaining regular-triangle family and write CSV.

For each thickness delta the triangle of side 2*phi(delta) is built and its
boundary diameter, extreme diameter, bound margin, and diameter ratio are
tabulated; the ratio approaches 2/3 as delta approaches pi.

Usage:
    python scripts/tightness_sweep.py [--steps N] [--out tightness.csv]
"""

import argparse
import csv
import sys

from sphereconvex import tightness_grid


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--steps", type=int, default=100)
    parser.add_argument("--out", default="tightness.csv")
    args = parser.parse_args()

    rows = tightness_grid(args.steps)
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(rows[0].keys()))
        writer.writeheader()
        writer.writerows(rows)
    worst = max(abs(r["margin"]) for r in rows)
    print(f"{len(rows)} rows written to {args.out}; worst |margin| = {worst:.3e}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
