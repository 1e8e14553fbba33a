"""Plain-text edge-list format used by every CLI command.

One edge per line as two whitespace-separated non-negative integers. Lines
starting with ``#`` and blank lines are ignored. An optional ``n <count>``
line fixes the vertex count; without it ``n = 1 + max id``.
"""

from __future__ import annotations

import io
from pathlib import Path
from typing import TextIO

from .errors import GraphError, ParseError
from .graph import Graph, from_edge_list


def parse_edge_list(stream: TextIO, strict: bool = False) -> Graph:
    edges = []
    n = None
    for lineno, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "n":
            if n is not None:
                raise ParseError("repeated 'n' header", lineno)
            if len(parts) != 2 or not parts[1].isdigit():
                raise ParseError(f"bad header {line!r}, expected 'n <count>'", lineno)
            n = int(parts[1])
            continue
        if len(parts) != 2 or not (parts[0].isdigit() and parts[1].isdigit()):
            raise ParseError(f"expected two non-negative integers, got {line!r}", lineno)
        edges.append((int(parts[0]), int(parts[1])))
    if n is None:
        n = 1 + max((max(e) for e in edges), default=-1)
    try:
        return from_edge_list(edges, n, strict=strict)
    except GraphError as exc:
        raise ParseError(str(exc)) from exc


def read_edge_list(path, strict: bool = False) -> Graph:
    if str(path) == "-":
        import sys

        return parse_edge_list(sys.stdin, strict=strict)
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh, strict=strict)


def loads(text: str, strict: bool = False) -> Graph:
    return parse_edge_list(io.StringIO(text), strict=strict)


def dumps(g: Graph) -> str:
    lines = [f"n {g.n}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def write_edge_list(g: Graph, path) -> None:
    Path(path).write_text(dumps(g), encoding="utf-8", newline="\n")
