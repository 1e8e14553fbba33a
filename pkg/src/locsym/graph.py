"""Immutable simple undirected graphs and neighborhood operations.

Vertices are dense integer ids ``0..n-1``. Adjacency is stored as sorted
tuples so that induced subgraphs and intersections run as merges.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DuplicateEdge, EndpointOutOfRange, SelfLoop

__all__ = [
    "Graph",
    "InducedSubgraph",
    "from_edge_list",
    "open_k_neighborhood",
    "closed_k_neighborhood",
    "induced",
    "boundary_edge_count",
    "eccentricity_at_least",
    "diameter",
    "distances_from",
]


class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    Build through :func:`from_edge_list` or :meth:`from_adjacency`. The
    ``dropped`` attribute records how many input pairs lenient construction
    discarded (self-loops and duplicates); it does not take part in equality.
    """

    __slots__ = ("_n", "_adj", "_m", "_sets", "dropped")

    def __init__(self, n: int, adjacency: Sequence[Sequence[int]], dropped: int = 0):
        self._n = n
        self._adj = tuple(tuple(a) for a in adjacency)
        self._m = sum(len(a) for a in self._adj) // 2
        self._sets = None
        self.dropped = dropped

    @classmethod
    def from_adjacency(cls, adjacency: Sequence[Iterable[int]]) -> "Graph":
        """Trusted constructor: neighbor lists must already be symmetric and loop-free."""
        return cls(len(adjacency), [tuple(sorted(a)) for a in adjacency])

    @property
    def n(self) -> int:
        return self._n

    @property
    def m(self) -> int:
        return self._m

    @property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        return self._adj

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def neighbor_set(self, v: int) -> frozenset[int]:
        if self._sets is None:
            self._sets = tuple(frozenset(a) for a in self._adj)
        return self._sets[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self._adj]

    def has_edge(self, u: int, v: int) -> bool:
        a = self._adj[u]
        i = bisect_left(a, v)
        return i < len(a) and a[i] == v

    def edges(self) -> list[tuple[int, int]]:
        """Edges as ``(u, v)`` pairs with ``u < v``, in lexicographic order."""
        return [(u, v) for u, a in enumerate(self._adj) for v in a if u < v]

    def vertices(self) -> range:
        return range(self._n)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._adj == other._adj

    def __hash__(self):
        return hash((self._n, self._adj))

    def __repr__(self):
        return f"Graph(n={self._n}, m={self._m})"


@dataclass(frozen=True)
class InducedSubgraph:
    """A subgraph together with the parent id of each of its vertices."""

    graph: Graph
    vertex_map: tuple[int, ...]

    def local_id(self, v: int) -> int:
        i = bisect_left(self.vertex_map, v)
        if i == len(self.vertex_map) or self.vertex_map[i] != v:
            raise KeyError(v)
        return i


def from_edge_list(edges: Iterable[tuple[int, int]], n: int, strict: bool = True) -> Graph:
    """Build a graph from vertex pairs.

    In strict mode a repeated pair (in either orientation) raises
    :class:`DuplicateEdge` and a loop raises :class:`SelfLoop`; otherwise both
    are dropped and counted in ``Graph.dropped``.
    """
    if n < 0:
        raise ValueError("vertex count must be non-negative")
    nbrs: list[set[int]] = [set() for _ in range(n)]
    dropped = 0
    for u, v in edges:
        u, v = int(u), int(v)
        if not (0 <= u < n and 0 <= v < n):
            raise EndpointOutOfRange(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            if strict:
                raise SelfLoop(f"self-loop at vertex {u}")
            dropped += 1
            continue
        if v in nbrs[u]:
            if strict:
                raise DuplicateEdge(f"duplicate edge ({u}, {v})")
            dropped += 1
            continue
        nbrs[u].add(v)
        nbrs[v].add(u)
    return Graph(n, [sorted(a) for a in nbrs], dropped=dropped)


def _as_vertex_list(g: Graph, s) -> list[int]:
    if isinstance(s, int):
        s = (s,)
    out = sorted(set(int(v) for v in s))
    if out and not (0 <= out[0] and out[-1] < g.n):
        raise EndpointOutOfRange(f"vertex set {out} not within 0..{g.n - 1}")
    return out


def distances_from(g: Graph, sources, limit: int | None = None) -> dict[int, int]:
    """Multi-source BFS distances, optionally truncated at ``limit`` hops."""
    src = _as_vertex_list(g, sources)
    dist = {v: 0 for v in src}
    queue = deque(src)
    adj = g.adjacency
    while queue:
        u = queue.popleft()
        du = dist[u]
        if limit is not None and du >= limit:
            continue
        for w in adj[u]:
            if w not in dist:
                dist[w] = du + 1
                queue.append(w)
    return dist


def open_k_neighborhood(g: Graph, s, k: int) -> tuple[int, ...]:
    """Sorted ids of every vertex at distance at most ``k`` from ``s``."""
    if k < 0:
        raise ValueError("k must be non-negative")
    src = _as_vertex_list(g, s)
    if not src:
        raise ValueError("source set must be nonempty")
    return tuple(sorted(distances_from(g, src, limit=k)))


def induced(g: Graph, s) -> InducedSubgraph:
    """Subgraph induced by vertex set ``s`` with vertices renumbered in id order."""
    members = _as_vertex_list(g, s)
    index = {v: i for i, v in enumerate(members)}
    adj = g.adjacency
    sub = [[index[u] for u in adj[v] if u in index] for v in members]
    return InducedSubgraph(Graph(len(members), sub), tuple(members))


def closed_k_neighborhood(g: Graph, s, k: int) -> InducedSubgraph:
    return induced(g, open_k_neighborhood(g, s, k))


def boundary_edge_count(g: Graph, s) -> int:
    """Number of edges with exactly one endpoint in ``s``."""
    inside = set(_as_vertex_list(g, s))
    adj = g.adjacency
    return sum(1 for v in inside for u in adj[v] if u not in inside)


def eccentricity_at_least(g: Graph, v: int, k: int) -> bool:
    """True when some vertex is at distance >= k from ``v`` (or unreachable)."""
    dist = distances_from(g, [v])
    if len(dist) < g.n:
        return True
    return max(dist.values()) >= k


def diameter(g: Graph) -> float:
    """Largest eccentricity; ``math.inf`` for disconnected graphs."""
    best = 0
    for v in range(g.n):
        dist = distances_from(g, [v])
        if len(dist) < g.n:
            return math.inf
        best = max(best, max(dist.values()))
    return best
