import pytest

from mcplab import ColorSpec, SampleParams, build_graph, sample_graph
from mcplab.rng import derive_seed

# Small hand-checkable fixtures used throughout the suite.
F1_EDGES = [(0, 0, 1), (1, 1, 1), (0, 1, 2), (1, 0, 2)]
F2_EDGES = [(0, 0, 1), (0, 1, 1), (1, 0, 2), (1, 1, 1)]
F3_EDGES = [(0, 0, 1), (1, 1, 1), (2, 2, 1), (0, 1, 2), (1, 0, 1)]


@pytest.fixture
def f1():
    return build_graph(2, 2, F1_EDGES)


@pytest.fixture
def f2():
    return build_graph(2, 2, F2_EDGES)


@pytest.fixture
def f3():
    return build_graph(3, 2, F3_EDGES)


def random_instance(seed: int, n: int, q: int, p: float):
    """Seeded random colored graph with uniform color probabilities."""
    return sample_graph(SampleParams(n, p, ColorSpec.uniform(q), seed))


def instance_grid(count: int, base_seed: int, n_range=(2, 8), qs=(2, 3), ps=(0.3, 0.6, 0.9)):
    """Deterministic stream of (graph, seed) pairs cycling over the grid."""
    lo, hi = n_range
    out = []
    for k in range(count):
        seed = derive_seed(base_seed, k)
        n = lo + seed % (hi - lo + 1)
        q = qs[(seed >> 8) % len(qs)]
        p = ps[(seed >> 16) % len(ps)]
        out.append(random_instance(seed, n, q, p))
    return out
