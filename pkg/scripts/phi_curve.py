#!/usr/bin/env python3
"""Write the extremal-function curve (delta, phi, 2*phi, gap) as CSV.

Usage:
    python scripts/phi_curve.py [--steps N] [--out phi_curve.csv]
"""

import argparse
import csv
import sys

from sphereconvex import phi_curve


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--steps", type=int, default=200)
    parser.add_argument("--out", default="phi_curve.csv")
    args = parser.parse_args()

    rows = phi_curve(args.steps)
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(rows[0].keys()))
        writer.writeheader()
        writer.writerows(rows)
    print(f"{len(rows)} rows written to {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
