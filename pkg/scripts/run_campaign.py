#!/usr/bin/env python3
"""Run the full verification campaign and write a JSON report.

Usage:
    python scripts/run_campaign.py [--seed S] [--trials N] [--tol T] [--out report.json]

Exit code 0 iff every check passes.
"""

import argparse
import sys

from sphereconvex import CampaignConfig, DeltaGrid, run_verify


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--trials", type=int, default=10_000)
    parser.add_argument("--tol", type=float, default=1e-9)
    parser.add_argument("--delta-steps", type=int, default=50)
    parser.add_argument("--out", default="report.json")
    args = parser.parse_args()

    config = CampaignConfig(
        seed=args.seed,
        trials=args.trials,
        delta_grid=DeltaGrid(steps=args.delta_steps),
        tolerance=args.tol,
        output_format="json",
    )
    report = run_verify(config)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(report.to_json() + "\n")
    print(report.to_text())
    print(f"report written to {args.out}")
    return 0 if report.overall_pass else 1


if __name__ == "__main__":
    sys.exit(main())
