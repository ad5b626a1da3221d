"""Seeded sampling of randomly colored random bipartite graphs.

Draw-order contract: draws are the outputs of the counter-based SplitMix64
stream in :mod:`mcplab.rng`.  Edge (a, b) owns two consecutive stream slots,

    inclusion draw  -> index 2*(a*n + b)
    color draw      -> index 2*(a*n + b) + 1

so Bernoulli inclusion draws proceed row-major over (a, b) with a outer,
and the color draw for an included edge sits immediately after its
inclusion draw.  Because the stream is counter-based, evaluating slots in
vectorized batches yields bit-identical results to consuming them one at a
time, which keeps fixtures stable while allowing numpy evaluation.

An edge is included when value < floor(p * 2**64); the color is the
inverse-CDF index of value/2**64 over the alphas in index order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import OutOfUnitIntervalError, ValidationError
from .graphs import ColoredBipartiteGraph, ColorSpec
from .rng import stream_values_np, stream_values_strided2

_CHUNK = 1 << 20


@dataclass(frozen=True)
class SampleParams:
    """One graph draw: side size, edge probability, colors, seed."""

    n: int
    p: float
    colors: ColorSpec
    seed: int

    def __post_init__(self):
        if self.n < 1:
            raise ValidationError(f"n must be >= 1, got {self.n}")
        if not (0.0 <= self.p <= 1.0):
            raise ValidationError(f"p must be in [0, 1], got {self.p}")


def threshold_p(n: int, omega: float, alpha_min: float) -> float:
    """(ln n + omega) / (alpha_min * n); errors if the value leaves [0, 1]."""
    if n < 2:
        raise ValidationError(f"n must be >= 2, got {n}")
    if not (0.0 < alpha_min <= 1.0):
        raise ValidationError(f"alpha_min must be in (0, 1], got {alpha_min}")
    p = (math.log(n) + omega) / (alpha_min * n)
    if not (0.0 <= p <= 1.0):
        raise OutOfUnitIntervalError(p)
    return p


def sample_graph(params: SampleParams) -> ColoredBipartiteGraph:
    """Draw G_{n,n,p} with independent edge colors; determined by the seed."""
    n, p, seed = params.n, params.p, params.seed
    q = params.colors.q

    if p <= 0.0:
        return ColoredBipartiteGraph(n, q, [], params.colors.alphas)

    include_all = p >= 1.0
    threshold = np.uint64(0) if include_all else np.uint64(int(p * 2.0**64))
    cum = np.cumsum(np.asarray(params.colors.alphas, dtype=np.float64))

    edge_ids: list[np.ndarray] = []
    colors: list[np.ndarray] = []
    total = n * n
    for start in range(0, total, _CHUNK):
        stop = min(start + _CHUNK, total)
        if include_all:
            kept = np.arange(start, stop, dtype=np.uint64)
        else:
            vals = stream_values_strided2(seed, start, stop - start)
            kept = np.arange(start, stop, dtype=np.uint64)[vals < threshold]
        if kept.size == 0:
            continue
        cvals = stream_values_np(seed, kept * np.uint64(2) + np.uint64(1))
        u = cvals.astype(np.float64) * 2.0**-64
        idx = np.minimum(np.searchsorted(cum, u, side="right"), q - 1)
        edge_ids.append(kept)
        colors.append(idx.astype(np.int64) + 1)

    edges: list[tuple[int, int, int]] = []
    for kept, cols in zip(edge_ids, colors):
        a_arr = (kept // np.uint64(n)).astype(np.int64)
        b_arr = (kept % np.uint64(n)).astype(np.int64)
        edges.extend(zip(a_arr.tolist(), b_arr.tolist(), cols.tolist()))
    return ColoredBipartiteGraph(n, q, edges, params.colors.alphas)
