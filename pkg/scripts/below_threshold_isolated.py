#!/usr/bin/env python3
"""Show the failure mechanism below the transition.

Below p = (log n + omega) / (alpha_min n) the rarest color class keeps
isolated vertices, which pins its corner profile out of reach.  Samples a
batch of graphs, counts isolated vertices in the rarest color, and checks
the corresponding corner walk outcome.
"""

import argparse
import math
import sys

from mcplab import CheckFlags, ColorSpec, ExperimentConfig, sweep
from mcplab.experiment import rarest_color


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=1000)
    ap.add_argument("--alpha", default="0.5,0.25,0.25")
    ap.add_argument("--omega-llog", type=float, default=-3.0)
    ap.add_argument("--trials", type=int, default=50)
    ap.add_argument("--seed", type=int, default=20260810)
    args = ap.parse_args()

    alphas = tuple(float(t) for t in args.alpha.split(","))
    colors = ColorSpec(len(alphas), alphas)
    omega = args.omega_llog * math.log(math.log(args.n))
    config = ExperimentConfig(
        n=args.n,
        colors=colors,
        omega_grid=(omega,),
        trials=args.trials,
        base_seed=args.seed,
        suite_kind="corners",
        checks=CheckFlags(per_color_pm=True, walk=True, isolated=True),
    )
    records = sweep(config)
    rare = rarest_color(colors)
    corner = tuple(args.n if i == rare - 1 else 0 for i in range(colors.q))
    expected = args.n * math.exp(-(math.log(args.n) + omega))
    print(f"omega={omega:.4f} p={records[0].p:.6f} rarest color={rare}")
    print(f"expected isolated vertices per side in rarest color: {expected:.1f}")
    with_isolated = 0
    corner_failed = 0
    total_isolated = 0
    for r in records:
        a_cnt, b_cnt = r.isolated_counts[rare - 1]
        total_isolated += a_cnt + b_cnt
        corner_row = next(w for w in r.walks if w.profile == corner)
        if a_cnt + b_cnt > 0:
            with_isolated += 1
            if not corner_row.success:
                corner_failed += 1
    print(f"trials with isolated rarest-color vertex: {with_isolated}/{len(records)}")
    print(f"corner walk failed in {corner_failed}/{with_isolated} of those")
    print(f"mean isolated (both sides): {total_isolated / len(records):.1f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
