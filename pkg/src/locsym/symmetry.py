"""k-local and global symmetry of vertex pairs and whole graphs.

Results are tri-state: ``True``, ``False`` or ``None`` when the canonical
labeling budget ran out before a decision could be made.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Union

from .canonical import (
    DEFAULT_BUDGET,
    CanonicalCode,
    RootedGraph,
    _refine,
    canonical_code,
)
from .errors import BudgetExceeded
from .graph import Graph, closed_k_neighborhood

__all__ = [
    "GLOBAL",
    "Order",
    "SymmetryClassPartition",
    "SymmetryVerdict",
    "egonet",
    "k_locally_symmetric",
    "globally_symmetric_pair",
    "symmetry_partition",
    "graph_k_locally_symmetric",
    "graph_globally_symmetric",
    "edge_triangle_counts",
]

GLOBAL = "global"
Order = Union[int, str]


def _check_order(k: Order) -> Order:
    if k == GLOBAL:
        return k
    if isinstance(k, bool) or not isinstance(k, int) or k < 0:
        raise ValueError(f"order must be a non-negative int or {GLOBAL!r}, got {k!r}")
    return k


@dataclass(frozen=True)
class SymmetryClassPartition:
    """Vertices grouped by the canonical code of their rooted neighborhood.

    Classes are sorted by size (descending) then smallest member; ``codes``
    holds one representative code per class, ``None`` for undecided vertices
    (which always sit in singleton classes).
    """

    k: Order
    n: int
    classes: tuple[tuple[int, ...], ...]
    codes: tuple[CanonicalCode | None, ...]
    undecided: tuple[int, ...] = ()

    def class_of(self, v: int) -> int:
        for i, members in enumerate(self.classes):
            if v in members:
                return i
        raise KeyError(v)

    def sizes(self) -> list[int]:
        return [len(c) for c in self.classes]

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "n": self.n,
            "classes": [list(c) for c in self.classes],
            "undecided": list(self.undecided),
            "codes": [c.hex() if c is not None else None for c in self.codes],
        }

    def to_json(self, indent=None) -> str:
        return json.dumps(self.to_dict(), indent=indent)


@dataclass(frozen=True)
class SymmetryVerdict:
    symmetric: bool | None
    witness: tuple[int, int] | None = None
    undecided_vertices: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if self.symmetric and (self.witness is None or self.witness[0] == self.witness[1]):
            raise ValueError("a symmetric verdict needs a witness pair of distinct vertices")

    @property
    def label(self) -> str:
        return {True: "symmetric", False: "asymmetric", None: "undecided"}[self.symmetric]


def egonet(g: Graph, v: int, k: Order) -> RootedGraph:
    """Closed k-neighborhood of ``v`` rooted at ``v``; the whole graph for ``"global"``."""
    if _check_order(k) == GLOBAL:
        return RootedGraph(g, v)
    sub = closed_k_neighborhood(g, [v], k)
    return RootedGraph(sub.graph, sub.local_id(v))


def _code_or_none(g: Graph, v: int, k: Order, budget: int) -> CanonicalCode | None:
    try:
        return canonical_code(egonet(g, v, k), budget)
    except BudgetExceeded:
        return None


def _pair(g: Graph, v1: int, v2: int, k: Order, budget: int) -> bool | None:
    if v1 == v2:
        raise ValueError("vertices must be distinct")
    for v in (v1, v2):
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} outside 0..{g.n - 1}")
    if k == 0:
        return True
    if g.degree(v1) != g.degree(v2):
        return False
    a, b = egonet(g, v1, k), egonet(g, v2, k)
    if a.graph.n != b.graph.n or a.graph.m != b.graph.m:
        return False
    ca, cb = _code_or_none(g, v1, k, budget), _code_or_none(g, v2, k, budget)
    if ca is None or cb is None:
        return None
    return ca == cb


def k_locally_symmetric(g: Graph, v1: int, v2: int, k: int, budget: int = DEFAULT_BUDGET) -> bool | None:
    """Whether some isomorphism of the closed k-neighborhoods maps ``v1`` to ``v2``."""
    if _check_order(k) == GLOBAL:
        raise ValueError("use globally_symmetric_pair for the global order")
    return _pair(g, v1, v2, k, budget)


def globally_symmetric_pair(g: Graph, v1: int, v2: int, budget: int = DEFAULT_BUDGET) -> bool | None:
    """Whether an automorphism of ``g`` maps ``v1`` to ``v2``."""
    return _pair(g, v1, v2, GLOBAL, budget)


def _group(keys: dict[int, object]) -> list[list[int]]:
    groups: dict[object, list[int]] = {}
    for v in sorted(keys):
        groups.setdefault(keys[v], []).append(v)
    return list(groups.values())


def symmetry_partition(g: Graph, k: Order, budget: int = DEFAULT_BUDGET) -> SymmetryClassPartition:
    k = _check_order(k)
    codes: dict[int, CanonicalCode] = {}
    undecided = []
    for v in range(g.n):
        c = _code_or_none(g, v, k, budget)
        if c is None:
            undecided.append(v)
        else:
            codes[v] = c
    classes = [tuple(c) for c in _group(codes)] + [(v,) for v in undecided]
    classes.sort(key=lambda c: (-len(c), c[0]))
    reps = tuple(codes.get(c[0]) for c in classes)
    return SymmetryClassPartition(k, g.n, tuple(classes), reps, tuple(undecided))


def edge_triangle_counts(g: Graph) -> dict[tuple[int, int], int]:
    """Common-neighbor count for every edge ``(u, v)`` with ``u < v``."""
    sets = [g.neighbor_set(v) for v in range(g.n)]
    return {(u, v): len(sets[u] & sets[v]) for u, v in g.edges()}


def _local_invariants(g: Graph, k: int) -> dict[int, tuple]:
    # Isomorphism invariants of each rooted closed k-neighborhood. For k = 1
    # the multiset of common-neighbor counts over incident edges gives the
    # degree sequence of the egonet without building it.
    if k == 1:
        per_vertex: list[list[int]] = [[] for _ in range(g.n)]
        for (u, v), t in edge_triangle_counts(g).items():
            per_vertex[u].append(t)
            per_vertex[v].append(t)
        return {v: (len(ts), tuple(sorted(ts))) for v, ts in enumerate(per_vertex)}
    out = {}
    for v in range(g.n):
        ego = egonet(g, v, k)
        eg = ego.graph
        out[v] = (eg.n, eg.m, eg.degree(ego.root), tuple(sorted(eg.degrees())))
    return out


def _first_collision(g: Graph, buckets: list[list[int]], k: Order, budget: int):
    """Scan candidate buckets for two members with equal codes."""
    undecided = []
    best = None
    for members in buckets:
        if len(members) < 2:
            continue
        if best is not None and members[0] > best[0]:
            continue
        seen: dict[CanonicalCode, int] = {}
        for v in members:
            c = _code_or_none(g, v, k, budget)
            if c is None:
                undecided.append(v)
                continue
            if c in seen:
                pair = (seen[c], v)
                if best is None or pair < best:
                    best = pair
                break
            seen[c] = v
    return best, tuple(sorted(undecided))


def _verdict(best, undecided) -> SymmetryVerdict:
    if best is not None:
        return SymmetryVerdict(True, best, undecided)
    if undecided:
        return SymmetryVerdict(None, None, undecided)
    return SymmetryVerdict(False, None, ())


def graph_k_locally_symmetric(
    g: Graph, k: int, budget: int = DEFAULT_BUDGET, fast_path: bool = True
) -> SymmetryVerdict:
    """Whether two distinct vertices of ``g`` are k-locally symmetric.

    With ``fast_path`` the check first looks for two equal-degree vertices
    whose egonets are stars, then buckets vertices by cheap invariants and
    canonicalizes only within buckets. Without it the full partition is built.
    """
    if _check_order(k) == GLOBAL:
        raise ValueError("use graph_globally_symmetric for the global order")
    if g.n < 2:
        return SymmetryVerdict(False)
    if k == 0:
        return SymmetryVerdict(True, (0, 1))
    if not fast_path:
        part = symmetry_partition(g, k, budget)
        for members in part.classes:
            if len(members) >= 2:
                return SymmetryVerdict(True, (members[0], members[1]), part.undecided)
        return _verdict(None, part.undecided)

    if k == 1:
        sets = [g.neighbor_set(v) for v in range(g.n)]
        first_star: dict[int, int] = {}
        for v in range(g.n):
            nv = sets[v]
            if all(not (sets[u] & nv) for u in nv):
                d = len(nv)
                if d in first_star:
                    return SymmetryVerdict(True, (first_star[d], v))
                first_star[d] = v

    buckets = _group(_local_invariants(g, k))
    buckets.sort(key=lambda b: b[0])
    best, undecided = _first_collision(g, buckets, k, budget)
    return _verdict(best, undecided)


def _twin_pair(g: Graph):
    seen: dict[tuple, int] = {}
    best = None
    for v, a in enumerate(g.adjacency):
        for key in (("o", a), ("c", tuple(sorted(a + (v,))))):
            if key in seen:
                pair = (seen[key], v)
                if best is None or pair < best:
                    best = pair
            else:
                seen[key] = v
    return best


def graph_globally_symmetric(g: Graph, budget: int = DEFAULT_BUDGET) -> SymmetryVerdict:
    """Whether ``g`` has a non-trivial automorphism.

    Twin vertices give an immediate witness. Otherwise only vertices sharing
    a cell of the coarsest equitable partition can be swapped by an
    automorphism, so rooted whole-graph codes are compared within cells.
    """
    if g.n < 2:
        return SymmetryVerdict(False)
    twins = _twin_pair(g)
    if twins is not None:
        return SymmetryVerdict(True, twins)
    colors, ncolors = _refine(g.adjacency, [0] * g.n, 1)
    if ncolors == g.n:
        return SymmetryVerdict(False)
    cells = _group(dict(enumerate(colors)))
    cells.sort(key=lambda c: c[0])
    best, undecided = _first_collision(g, cells, GLOBAL, budget)
    return _verdict(best, undecided)
