#!/usr/bin/env python3
"""Measure the restricted-expansion construction on sampled graphs.

For each seed: sample above threshold, take the monochromatic start, and
rebuild the core-filter and layer run with the default asymptotic
constants.  Prints per-seed core fractions and layer sizes; the asymptotic
thresholds are non-binding at desk scale, so this is a report, not a test.
"""

import argparse
import sys

from mcplab import (
    ColorSpec,
    NoPerfectMatchingError,
    SampleParams,
    default_constants,
    expansion_trace,
    monochromatic_perfect_matching,
    sample_graph,
    threshold_p,
)
from mcplab.rng import derive_seed


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=2000)
    ap.add_argument("--q", type=int, default=2)
    ap.add_argument("--omega", type=float, default=4.0)
    ap.add_argument("--seeds", type=int, default=20)
    ap.add_argument("--base-seed", type=int, default=7007)
    args = ap.parse_args()

    colors = ColorSpec.uniform(args.q)
    consts = default_constants(args.n, args.q, colors.alpha_min)
    p = threshold_p(args.n, args.omega, colors.alpha_min)
    print(f"n={args.n} q={args.q} omega={args.omega} p={p:.6f}")
    print(
        f"constants: degree_cutoff={consts.degree_cutoff:.3f} "
        f"overlap_cap={consts.overlap_cap:.3f} stop_size={consts.stop_size:.4f}"
    )
    header = f"{'seed':>6} {'core_frac':>10} {'bound':>8} {'layers':>20} {'stop':>5}"
    print(header)
    for k in range(args.seeds):
        g = sample_graph(SampleParams(args.n, p, colors, derive_seed(args.base_seed, k)))
        try:
            m = monochromatic_perfect_matching(g, 1)
        except NoPerfectMatchingError:
            print(f"{k:>6} {'(no monochromatic perfect matching)':>45}")
            continue
        t = expansion_trace(g, m, 1, consts)
        sizes = ",".join(str(s) for s in t.forward.layer_sizes[:6])
        print(
            f"{k:>6} {t.a_side.core_fraction:>10.4f} "
            f"{t.core_fraction_bound:>8.4f} {sizes:>20} "
            f"{str(t.forward.stop_layer):>5}"
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
