"""Degree functions, degree-sequence edit distance and degree mismatch counts."""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from typing import Mapping

from .errors import CapExceeded, InvalidMapping
from .graph import Graph, boundary_edge_count, induced

__all__ = [
    "degree_function",
    "l1_distance",
    "dsed",
    "dsed_contributions",
    "degree_mismatch_count",
    "min_mismatch_bruteforce",
    "subgraph_bound_check",
    "identity_mismatch_bound",
    "DEFAULT_CAP",
]

DEFAULT_CAP = 12


def degree_function(g: Graph) -> dict[int, int]:
    """Sparse histogram ``degree -> number of vertices``, keys ascending."""
    return dict(sorted(Counter(g.degrees()).items()))


def l1_distance(df1: Mapping[int, int], df2: Mapping[int, int]) -> int:
    return sum(abs(df1.get(d, 0) - df2.get(d, 0)) for d in set(df1) | set(df2))


def dsed(g1: Graph, g2: Graph) -> int:
    """L1 distance between the two degree functions."""
    return l1_distance(degree_function(g1), degree_function(g2))


def dsed_contributions(g1: Graph, g2: Graph) -> list[tuple[int, int, int, int]]:
    """Rows ``(degree, count1, count2, |diff|)`` for every degree present in either graph."""
    df1, df2 = degree_function(g1), degree_function(g2)
    rows = []
    for d in sorted(set(df1) | set(df2)):
        a, b = df1.get(d, 0), df2.get(d, 0)
        rows.append((d, a, b, abs(a - b)))
    return rows


def degree_mismatch_count(g1: Graph, g2: Graph, f: Mapping[int, int]) -> int:
    """Unmapped vertices on both sides plus mapped vertices whose degrees differ.

    ``f`` is a partial injective map from vertices of ``g1`` to vertices of
    ``g2``. A degree mismatch is counted once on each side of the pair.
    """
    image = set()
    for v, w in f.items():
        if not 0 <= v < g1.n:
            raise InvalidMapping(f"domain vertex {v} not in first graph")
        if not 0 <= w < g2.n:
            raise InvalidMapping(f"image vertex {w} not in second graph")
        if w in image:
            raise InvalidMapping(f"vertex {w} is the image of two vertices")
        image.add(w)
    mismatched = sum(1 for v, w in f.items() if g1.degree(v) != g2.degree(w))
    return 2 * mismatched + (g1.n - len(f)) + (g2.n - len(f))


def min_mismatch_bruteforce(g1: Graph, g2: Graph, cap: int = DEFAULT_CAP) -> int:
    """Exact minimum degree mismatch count over all partial bijections.

    The mismatch count only depends on how many degree-a vertices are sent to
    degree-b vertices, so the search runs over those count matrices, one
    degree class of ``g1`` at a time, memoized on the remaining capacity of
    each degree class of ``g2``. Raises :class:`CapExceeded` when the two
    graphs together have more than ``cap`` vertices.
    """
    if g1.n + g2.n > cap:
        raise CapExceeded(f"{g1.n} + {g2.n} vertices exceeds the cap of {cap}")
    rows = list(degree_function(g1).items())
    cols = list(degree_function(g2).items())
    col_deg = [d for d, _ in cols]

    def distributions(total, caps):
        # Every vector x with x <= caps componentwise and sum(x) <= total.
        if not caps:
            yield ()
            return
        for x in range(min(total, caps[0]) + 1):
            for rest in distributions(total - x, caps[1:]):
                yield (x,) + rest

    @lru_cache(maxsize=None)
    def best(i, remaining):
        if i == len(rows):
            return sum(remaining)  # g2 vertices left unmapped
        deg, count = rows[i]
        out = None
        for x in distributions(count, remaining):
            cost = 2 * sum(c for c, d in zip(x, col_deg) if d != deg) + count - sum(x)
            total = cost + best(i + 1, tuple(r - c for r, c in zip(remaining, x)))
            if out is None or total < out:
                out = total
        return out

    return best(0, tuple(c for _, c in cols))


def subgraph_bound_check(g: Graph, s) -> tuple[int, int]:
    """``(dsed(g, g[s]), |V \\ s| + |C(s)|)``.

    The second value does not always bound the first: the identity map on
    ``s`` pays for each boundary vertex on both sides, so ``K2`` with
    ``s = {0}`` gives ``(3, 2)``. :func:`identity_mismatch_bound` is the
    bound that always holds.
    """
    sub = induced(g, s)
    outside = g.n - sub.graph.n
    return dsed(g, sub.graph), outside + boundary_edge_count(g, s)


def identity_mismatch_bound(g: Graph, s) -> int:
    """Mismatch count of the identity map from ``g[s]`` into ``g``.

    Equals ``|V \\ s| + 2 * |{v in s adjacent to V \\ s}|``, which is at most
    ``|V \\ s| + 2 |C(s)|`` and never below ``dsed(g, g[s])``.
    """
    sub = induced(g, s)
    inside = set(sub.vertex_map)
    touching = sum(1 for v in inside if any(u not in inside for u in g.neighbors(v)))
    return (g.n - sub.graph.n) + 2 * touching
