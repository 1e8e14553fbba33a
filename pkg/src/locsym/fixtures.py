"""Named small graphs used in tests, docs and the CLI's ``--fixture`` option."""

from __future__ import annotations

from importlib import resources

from .edgelist import loads
from .graph import Graph, from_edge_list

__all__ = [
    "FIXTURES",
    "double_star",
    "neighborhood_example",
    "asymmetric6",
    "path",
    "star",
    "complete",
    "cycle",
    "load_fixture",
]

# Vertex ids in the double star: hubs first, then the leaves of each hub.
DOUBLE_STAR_U = 0
DOUBLE_STAR_V = 1
DOUBLE_STAR_U_LEAVES = tuple(range(2, 10))
DOUBLE_STAR_V_LEAVES = tuple(range(10, 17))

# Named vertices of the neighborhood example, in id order.
NEIGHBORHOOD_NAMES = (
    ["v", "w", "w1", "w2", "w3", "w4", "w5", "w6"]
    + [f"x{i}" for i in range(1, 12)]
    + [f"y{i}" for i in range(1, 14)]
)


def load_fixture(name: str) -> Graph:
    text = resources.files("locsym.data").joinpath(f"{name}.txt").read_text(encoding="utf-8")
    return loads(text, strict=True)


def double_star() -> Graph:
    """Two adjacent hubs with 8 and 7 pendant leaves (17 vertices)."""
    return load_fixture("double_star")


def neighborhood_example() -> Graph:
    """32-vertex graph whose closed 2-neighborhood of ``v`` (id 0) has 17 vertices."""
    return load_fixture("neighborhood_example")


def asymmetric6() -> Graph:
    """Smallest asymmetric graph: triangle 1-2-5, pendant 0 on 1, path 2-3-4."""
    return load_fixture("asymmetric6")


def path(n: int) -> Graph:
    return from_edge_list([(i, i + 1) for i in range(n - 1)], n)


def cycle(n: int) -> Graph:
    return from_edge_list([(i, (i + 1) % n) for i in range(n)], n)


def star(leaves: int) -> Graph:
    return from_edge_list([(0, i) for i in range(1, leaves + 1)], leaves + 1)


def complete(n: int) -> Graph:
    return from_edge_list([(u, v) for u in range(n) for v in range(u + 1, n)], n)


FIXTURES = ("double_star", "neighborhood_example", "asymmetric6")
