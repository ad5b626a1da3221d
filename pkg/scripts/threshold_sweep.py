#!/usr/bin/env python3
"""Locate the full-simplex transition empirically.

Sweeps omega over multiples of log log n at fixed n and reports, per grid
point, how often every corner profile (and optionally random interior
profiles) is reachable.  Output CSV is plot-ready.
"""

import argparse
import math
import sys
from pathlib import Path

from mcplab import CheckFlags, ColorSpec, ExperimentConfig, emit, summarize, sweep
from mcplab.experiment import format_summary


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=1000)
    ap.add_argument("--alpha", default="0.5,0.5")
    ap.add_argument("--grid", default="-6,-3,0,3,6", help="multiples of log log n")
    ap.add_argument("--trials", type=int, default=50)
    ap.add_argument("--random-profiles", type=int, default=0)
    ap.add_argument("--seed", type=int, default=20260810)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--out", default="threshold_sweep.csv")
    args = ap.parse_args()

    alphas = tuple(float(t) for t in args.alpha.split(","))
    llog = math.log(math.log(args.n))
    grid = tuple(float(k) * llog for k in args.grid.split(","))
    suite = ("random", args.random_profiles) if args.random_profiles else ("corners", 0)
    config = ExperimentConfig(
        n=args.n,
        colors=ColorSpec(len(alphas), alphas),
        omega_grid=grid,
        trials=args.trials,
        base_seed=args.seed,
        suite_kind=suite[0],
        suite_count=suite[1],
        checks=CheckFlags(per_color_pm=True, walk=True, isolated=True),
        workers=args.workers,
    )
    records = sweep(config)
    emit(records, "csv", Path(args.out), config)
    print(format_summary(summarize(records, config)))
    print(f"wrote {args.out}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
