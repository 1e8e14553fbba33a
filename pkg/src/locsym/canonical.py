"""Canonical codes for rooted graphs via individualization-refinement.

A rooted graph's code is the lexicographically smallest upper-triangular
adjacency bitstring over all leaves of the search tree, with the root pinned
to position 0. Two rooted graphs get equal codes exactly when a
root-preserving isomorphism exists.

Search pruning uses automorphisms: transpositions of twin vertices are known
up front, further automorphisms are harvested from leaves whose bitstrings
tie the current best. A child is skipped when it lies in the orbit of an
already explored sibling under the automorphisms fixing the current prefix.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import BudgetExceeded
from .graph import Graph

__all__ = [
    "CODE_FORMAT",
    "DEFAULT_BUDGET",
    "RootedGraph",
    "CanonicalCode",
    "refine",
    "canonical_code",
    "canonical_form",
    "rooted_isomorphic",
]

CODE_FORMAT = "v1"
DEFAULT_BUDGET = 10**6


@dataclass(frozen=True)
class RootedGraph:
    graph: Graph
    root: int

    def __post_init__(self):
        if not 0 <= self.root < self.graph.n:
            raise ValueError(f"root {self.root} outside 0..{self.graph.n - 1}")


@dataclass(frozen=True, order=True)
class CanonicalCode:
    """Certificate of a rooted graph; ordered by ``(n, bits)``.

    ``bits`` holds the upper-triangular adjacency of the canonically
    relabeled graph as an integer whose most significant bit is pair (0, 1).
    For a fixed ``n`` integer order equals lexicographic bitstring order.
    """

    n: int
    bits: int = field(repr=False)

    @property
    def length(self) -> int:
        return self.n * (self.n - 1) // 2

    def bitstring(self) -> str:
        if self.length == 0:
            return ""
        return format(self.bits, f"0{self.length}b")

    def hex(self) -> str:
        width = (self.length + 3) // 4
        body = format(self.bits, f"0{width}x") if width else ""
        return f"{CODE_FORMAT}:{self.n:08x}{body}"

    @classmethod
    def from_hex(cls, text: str) -> "CanonicalCode":
        prefix, _, payload = text.partition(":")
        if prefix != CODE_FORMAT or len(payload) < 8:
            raise ValueError(f"not a {CODE_FORMAT} code: {text!r}")
        n = int(payload[:8], 16)
        bits = int(payload[8:], 16) if payload[8:] else 0
        return cls(n, bits)


def _refine(adj, colors: list[int], ncolors: int) -> tuple[list[int], int]:
    # Colors must be contiguous 0..ncolors-1. New ids come from the sorted
    # (old color, neighbor color multiset) signatures, so old order is kept.
    n = len(colors)
    while ncolors < n:
        sigs = [(colors[v], tuple(sorted([colors[u] for u in adj[v]]))) for v in range(n)]
        uniq = sorted(set(sigs))
        if len(uniq) == ncolors:
            break
        rank = {s: i for i, s in enumerate(uniq)}
        colors = [rank[s] for s in sigs]
        ncolors = len(uniq)
    return colors, ncolors


def _normalize(colors: Sequence[int]) -> tuple[list[int], int]:
    uniq = sorted(set(colors))
    rank = {c: i for i, c in enumerate(uniq)}
    return [rank[c] for c in colors], len(uniq)


def refine(rg: RootedGraph, initial: Sequence[int]) -> list[int]:
    """Coarsest equitable refinement of ``initial``.

    The root must be alone in its initial color. Color ids of the result are
    contiguous and assigned by sorted signature, hence deterministic.
    """
    g = rg.graph
    if len(initial) != g.n:
        raise ValueError("coloring length does not match vertex count")
    root_color = initial[rg.root]
    if sum(1 for c in initial if c == root_color) != 1:
        raise ValueError("root must have a singleton initial color")
    colors, k = _normalize(initial)
    return _refine(g.adjacency, colors, k)[0]


def _individualize(colors: list[int], v: int) -> list[int]:
    cv = colors[v]
    return [c + 1 if (c > cv or (c == cv and x != v)) else c for x, c in enumerate(colors)]


def _leaf_bits(edges, pos: list[int], n: int) -> int:
    length = n * (n - 1) // 2
    top = length - 1
    bits = 0
    for u, v in edges:
        i, j = pos[u], pos[v]
        if i > j:
            i, j = j, i
        bits |= 1 << (top - (i * (2 * n - i - 1) // 2 + j - i - 1))
    return bits


def _twin_generators(adj, root: int) -> list[dict[int, int]]:
    groups: dict[tuple, list[int]] = {}
    for v, a in enumerate(adj):
        if v == root:
            continue
        groups.setdefault(("o", a), []).append(v)
        groups.setdefault(("c", tuple(sorted(a + (v,)))), []).append(v)
    gens = []
    for members in groups.values():
        for a, b in zip(members, members[1:]):
            gens.append({a: b, b: a})
    return gens


def _orbit_roots(gens, prefix) -> dict[int, int]:
    parent: dict[int, int] = {}

    def find(x):
        root = x
        while parent.get(root, root) != root:
            root = parent[root]
        while parent.get(x, x) != root:
            parent[x], x = root, parent[x]
        return root

    for gen in gens:
        if any(p in gen for p in prefix):
            continue
        for a, b in gen.items():
            ra, rb = find(a), find(b)
            if ra != rb:
                if ra < rb:
                    parent[rb] = ra
                else:
                    parent[ra] = rb
    return {x: find(x) for x in list(parent)}


def canonical_form(rg: RootedGraph, budget: int = DEFAULT_BUDGET) -> tuple[CanonicalCode, list[int]]:
    """Canonical code plus the position assigned to every vertex.

    Raises :class:`BudgetExceeded` once more than ``budget`` search-tree
    nodes have been visited.
    """
    g = rg.graph
    n = g.n
    adj = g.adjacency
    edges = g.edges()
    if n == 1:
        return CanonicalCode(1, 0), [0]

    init = [1] * n
    init[rg.root] = 0
    colors, k = _refine(adj, init, 2)

    gens = _twin_generators(adj, rg.root)
    best_bits = None
    best_pos = None
    best_seq = ()
    visited = 0

    # Frame: [colors, ncolors, prefix, candidates, next index, explored,
    # orbit cache as (generator count, roots)].
    stack = [[colors, k, (), None, 0, [], None]]
    while stack:
        frame = stack[-1]
        colors, k, prefix, cands, idx, explored, cache = frame
        if cands is None:
            visited += 1
            if visited > budget:
                raise BudgetExceeded(budget)
            if k == n:
                bits = _leaf_bits(edges, colors, n)
                if best_bits is None or bits < best_bits:
                    best_bits, best_pos, best_seq = bits, colors, prefix
                elif bits == best_bits:
                    inv = [0] * n
                    for x, p in enumerate(colors):
                        inv[p] = x
                    gen = {x: inv[best_pos[x]] for x in range(n) if inv[best_pos[x]] != x}
                    if gen:
                        gens.append(gen)
                        # If gen fixes the shared prefix and maps the best
                        # leaf's branch onto ours, this whole branch is the
                        # image of one already searched.
                        i = 0
                        while prefix[i] == best_seq[i]:
                            i += 1
                        if gen.get(best_seq[i]) == prefix[i] and not any(x in gen for x in prefix[:i]):
                            del stack[i + 1 :]
                            continue
                stack.pop()
                continue
            sizes: dict[int, int] = {}
            for c in colors:
                sizes[c] = sizes.get(c, 0) + 1
            target = min((c for c, s in sizes.items() if s > 1), key=lambda c: (-sizes[c], c))
            frame[3] = cands = [x for x in range(n) if colors[x] == target]
        if idx >= len(cands):
            stack.pop()
            continue
        v = cands[idx]
        frame[4] = idx + 1
        if explored:
            if cache is None or cache[0] != len(gens):
                frame[6] = cache = (len(gens), _orbit_roots(gens, prefix))
            roots = cache[1]
            rv = roots.get(v, v)
            if any(roots.get(u, u) == rv for u in explored):
                continue
        explored.append(v)
        child, ck = _refine(adj, _individualize(colors, v), k + 1)
        stack.append([child, ck, prefix + (v,), None, 0, [], None])

    return CanonicalCode(n, best_bits), best_pos


def canonical_code(rg: RootedGraph, budget: int = DEFAULT_BUDGET) -> CanonicalCode:
    return canonical_form(rg, budget)[0]


def _prefilter(a: RootedGraph, b: RootedGraph) -> bool:
    ga, gb = a.graph, b.graph
    return (
        ga.n == gb.n
        and ga.m == gb.m
        and ga.degree(a.root) == gb.degree(b.root)
        and sorted(ga.degrees()) == sorted(gb.degrees())
    )


def rooted_isomorphic(a: RootedGraph, b: RootedGraph, budget: int = DEFAULT_BUDGET) -> bool:
    """True iff some isomorphism between the graphs maps root onto root."""
    if not _prefilter(a, b):
        return False
    return canonical_code(a, budget) == canonical_code(b, budget)
