"""Seeded Erdős-Rényi generators and the sample statistics tied to them.

All randomness flows through numpy's Philox counter-based generator seeded
by a :class:`numpy.random.SeedSequence`. Independent streams are derived
from the tuple ``(seed, *stream)``, so sample ``i`` of a grid cell always
sees the same bits no matter which worker draws it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph import Graph

__all__ = [
    "PRNG_ID",
    "GnpSpec",
    "GnmSpec",
    "make_rng",
    "gnp_graph",
    "gnm_graph",
    "sample_gnp",
    "sample_gnm",
    "triangle_count",
    "expected_triangles",
    "triangle_variance",
    "peripheral_edge_free",
    "degree_concentration_check",
]

PRNG_ID = "numpy-philox4x64-seedseq-v1"


def make_rng(seed: int, *stream: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([int(seed), *map(int, stream)])))


@dataclass(frozen=True)
class GnpSpec:
    n: int
    p: float
    seed: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p must lie in [0, 1], got {self.p}")


@dataclass(frozen=True)
class GnmSpec:
    n: int
    m: int
    seed: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if not 0 <= self.m <= self.n * (self.n - 1) // 2:
            raise ValueError(f"m must lie in [0, n(n-1)/2], got {self.m}")


def _row_offsets(n: int) -> np.ndarray:
    i = np.arange(n, dtype=np.int64)
    return i * (2 * n - i - 1) // 2


def _pairs_from_index(n: int, idx: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # Pair (i, j), i < j, has linear index offset(i) + (j - i - 1).
    off = _row_offsets(n)
    i = np.searchsorted(off, idx, side="right") - 1
    j = idx - off[i] + i + 1
    return i, j


def _from_pairs(n: int, i: np.ndarray, j: np.ndarray) -> Graph:
    src = np.concatenate([i, j])
    dst = np.concatenate([j, i])
    order = np.lexsort((dst, src))
    dst = dst[order]
    counts = np.bincount(src, minlength=n)
    bounds = np.cumsum(counts)[:-1]
    return Graph(n, [tuple(row.tolist()) for row in np.split(dst, bounds)] if n else [])


def gnp_graph(n: int, p: float, rng: np.random.Generator) -> Graph:
    """G(n, p) by geometric skipping over the n(n-1)/2 vertex pairs.

    Expected work is proportional to n + (number of edges).
    """
    total = n * (n - 1) // 2
    if total == 0 or p <= 0.0:
        return Graph(n, [()] * n)
    if p >= 1.0:
        return Graph(n, [tuple(u for u in range(n) if u != v) for v in range(n)])
    chunk = int(total * p + 5.0 * math.sqrt(total * p) + 16)
    found = []
    last = -1
    while True:
        pos = last + np.cumsum(rng.geometric(p, size=chunk), dtype=np.int64)
        found.append(pos[pos < total])
        if pos[-1] >= total:
            break
        last = int(pos[-1])
    idx = np.concatenate(found)
    i, j = _pairs_from_index(n, idx)
    return _from_pairs(n, i, j)


def gnm_graph(n: int, m: int, rng: np.random.Generator) -> Graph:
    """Uniform random graph with exactly ``m`` edges."""
    total = n * (n - 1) // 2
    idx = np.sort(rng.choice(total, size=m, replace=False)).astype(np.int64)
    i, j = _pairs_from_index(n, idx)
    return _from_pairs(n, i, j)


def sample_gnp(spec: GnpSpec) -> Graph:
    return gnp_graph(spec.n, spec.p, make_rng(spec.seed))


def sample_gnm(spec: GnmSpec) -> Graph:
    return gnm_graph(spec.n, spec.m, make_rng(spec.seed))


def triangle_count(g: Graph) -> int:
    """Exact triangle count; each triangle u < v < w is found once, at edge (u, v)."""
    forward = [frozenset(w for w in a if w > u) for u, a in enumerate(g.adjacency)]
    return sum(len(fu & forward[v]) for fu in forward for v in fu)


def expected_triangles(n: int, p: float) -> float:
    return math.comb(n, 3) * p**3


def triangle_variance(n: int, p: float) -> float:
    return math.comb(n, 3) * p**3 * (1 + 3 * n * p**2 - 9 * p**2 - 3 * n * p**3 + 8 * p**3)


def peripheral_edge_free(g: Graph, v: int) -> bool:
    """True when no two neighbors of ``v`` are adjacent, i.e. the egonet is a star."""
    nv = g.neighbor_set(v)
    return all(not (g.neighbor_set(u) & nv) for u in nv)


def degree_concentration_check(g: Graph, p: float, delta: float) -> bool:
    """All degrees strictly inside ``(n-1)p(1 - delta), (n-1)p(1 + delta)``."""
    if not 0.0 < delta < 1.0:
        raise ValueError("delta must lie in (0, 1)")
    mean = (g.n - 1) * p
    lo, hi = mean * (1 - delta), mean * (1 + delta)
    return all(lo < d < hi for d in g.degrees())
