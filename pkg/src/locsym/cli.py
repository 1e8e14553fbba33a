"""Command-line interface.

Exit codes: 0 success (or "symmetric"), 1 "asymmetric", 2 input, usage or
config error, 3 undecided because the canonical labeling budget ran out.
Data goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import math
import os
import sys

from . import __version__
from .canonical import CODE_FORMAT, DEFAULT_BUDGET
from .config import load_config
from .degree import degree_function, dsed, dsed_contributions
from .edgelist import read_edge_list, write_edge_list
from .errors import ConfigError, GraphError
from .experiments import run_experiment, write_csv
from .fixtures import FIXTURES, load_fixture
from .graph import diameter
from .random_models import PRNG_ID, GnmSpec, GnpSpec, sample_gnm, sample_gnp, triangle_count
from .symmetry import (
    GLOBAL,
    globally_symmetric_pair,
    graph_globally_symmetric,
    k_locally_symmetric,
    symmetry_partition,
)

EXIT_OK, EXIT_ASYMMETRIC, EXIT_INPUT, EXIT_UNDECIDED = 0, 1, 2, 3
_VERDICT_EXIT = {True: EXIT_OK, False: EXIT_ASYMMETRIC, None: EXIT_UNDECIDED}
_VERDICT_WORD = {True: "symmetric", False: "asymmetric", None: "undecided"}


class UsageError(Exception):
    pass


def _load(path: str, strict: bool):
    if path.startswith("fixture:"):
        name = path.split(":", 1)[1]
        if name not in FIXTURES:
            raise UsageError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURES)}")
        return load_fixture(name)
    g = read_edge_list(path, strict=strict)
    if g.dropped:
        print(f"warning: dropped {g.dropped} self-loop/duplicate edge(s) from {path}", file=sys.stderr)
    return g


def _check_vertex(g, v):
    if not 0 <= v < g.n:
        raise UsageError(f"vertex {v} outside 0..{g.n - 1}")


def cmd_gen(args) -> int:
    if args.model == "gnp":
        if args.p is None or args.m is not None:
            raise UsageError("--model gnp needs --p (and not --m)")
        g = sample_gnp(GnpSpec(args.n, args.p, args.seed))
    else:
        if args.m is None or args.p is not None:
            raise UsageError("--model gnm needs --m (and not --p)")
        g = sample_gnm(GnmSpec(args.n, args.m, args.seed))
    if args.out == "-":
        from .edgelist import dumps

        sys.stdout.write(dumps(g))
    else:
        write_edge_list(g, args.out)
    return EXIT_OK


def cmd_stats(args) -> int:
    g = _load(args.input, args.strict)
    diam = diameter(g)
    df = degree_function(g)
    rows = [
        ("n", g.n),
        ("m", g.m),
        ("triangles", triangle_count(g)),
        ("diameter", "inf" if math.isinf(diam) else diam),
        ("degree_function", ",".join(f"{d}:{c}" for d, c in df.items())),
    ]
    for key, value in rows:
        print(f"{key}\t{value}")
    return EXIT_OK


def _order(args):
    if args.global_:
        return GLOBAL
    if args.k is None:
        raise UsageError("give --k K or --global")
    return args.k


def cmd_classes(args) -> int:
    g = _load(args.input, args.strict)
    part = symmetry_partition(g, _order(args), args.budget)
    if args.format == "json":
        print(part.to_json())
    else:
        print("class\tsize\tcode\tmembers")
        for i, (members, code) in enumerate(zip(part.classes, part.codes)):
            hexcode = code.hex() if code is not None else "undecided"
            print(f"{i}\t{len(members)}\t{hexcode}\t{','.join(map(str, members))}")
    if part.undecided:
        print(f"warning: {len(part.undecided)} vertex(es) undecided (budget {args.budget})", file=sys.stderr)
        return EXIT_UNDECIDED
    return EXIT_OK


def cmd_pair(args) -> int:
    g = _load(args.input, args.strict)
    for v in (args.v1, args.v2):
        _check_vertex(g, v)
    if args.v1 == args.v2:
        raise UsageError("v1 and v2 must differ")
    verdict = k_locally_symmetric(g, args.v1, args.v2, args.k, args.budget)
    print(_VERDICT_WORD[verdict])
    return _VERDICT_EXIT[verdict]


def cmd_global(args) -> int:
    g = _load(args.input, args.strict)
    if (args.v1 is None) != (args.v2 is None):
        raise UsageError("give both vertices or neither")
    if args.v1 is not None:
        for v in (args.v1, args.v2):
            _check_vertex(g, v)
        if args.v1 == args.v2:
            raise UsageError("v1 and v2 must differ")
        verdict = globally_symmetric_pair(g, args.v1, args.v2, args.budget)
        print(_VERDICT_WORD[verdict])
        return _VERDICT_EXIT[verdict]
    result = graph_globally_symmetric(g, args.budget)
    if result.witness is not None:
        print(f"{result.label}\t{result.witness[0]}\t{result.witness[1]}")
    else:
        print(result.label)
    return _VERDICT_EXIT[result.symmetric]


def cmd_dsed(args) -> int:
    g1 = _load(args.first, args.strict)
    g2 = _load(args.second, args.strict)
    if args.explain:
        print("degree,count1,count2,diff")
        for row in dsed_contributions(g1, g2):
            print(",".join(map(str, row)))
    else:
        print(dsed(g1, g2))
    return EXIT_OK


def cmd_experiment(args) -> int:
    spec = load_config(args.config)
    if args.seed is not None:
        spec.seed = args.seed
    if spec.cells and spec.seed is None:
        raise ConfigError("no seed: set 'seed = ...' in the config or pass --seed")
    rows = run_experiment(spec, threads=args.threads)
    if args.out == "-":
        write_csv(rows, sys.stdout)
    else:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            write_csv(rows, fh)
    return EXIT_OK


def _nonneg(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="locsym", description="Local and global graph symmetry tools.")
    parser.add_argument(
        "--version",
        action="version",
        version=f"locsym {__version__} (prng {PRNG_ID}, canonical code {CODE_FORMAT})",
    )
    parser.add_argument("--threads", type=int, default=os.cpu_count() or 1, help="worker processes (default: all cores)")
    sub = parser.add_subparsers(dest="command", required=True)

    def graph_input(p, *names):
        for name in names:
            p.add_argument(name, help="edge-list file, '-' for stdin, or fixture:NAME")
        p.add_argument("--strict", action="store_true", help="reject self-loops and duplicate edges")

    def budget(p):
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="search-tree node budget per canonicalization")

    p = sub.add_parser("gen", help="sample a random graph")
    p.add_argument("--model", choices=("gnp", "gnm"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float)
    p.add_argument("--m", type=int)
    p.add_argument("--seed", type=_nonneg, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("stats", help="basic graph statistics")
    graph_input(p, "input")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("classes", help="symmetry classes of vertices")
    graph_input(p, "input")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--k", type=_nonneg)
    group.add_argument("--global", dest="global_", action="store_true")
    p.add_argument("--format", choices=("json", "tsv"), default="json")
    budget(p)
    p.set_defaults(func=cmd_classes)

    p = sub.add_parser("pair", help="k-local symmetry of two vertices")
    graph_input(p, "input")
    p.add_argument("v1", type=int)
    p.add_argument("v2", type=int)
    p.add_argument("--k", type=_nonneg, default=1)
    budget(p)
    p.set_defaults(func=cmd_pair)

    p = sub.add_parser("global", help="global symmetry of a graph or of two vertices")
    graph_input(p, "input")
    p.add_argument("v1", type=int, nargs="?")
    p.add_argument("v2", type=int, nargs="?")
    budget(p)
    p.set_defaults(func=cmd_global)

    p = sub.add_parser("dsed", help="degree-sequence edit distance")
    graph_input(p, "first", "second")
    p.add_argument("--explain", action="store_true", help="per-degree contributions as CSV")
    p.set_defaults(func=cmd_dsed)

    p = sub.add_parser("experiment", help="run a Monte Carlo grid from a config file")
    p.add_argument("config")
    p.add_argument("--out", required=True, help="CSV output path, '-' for stdout")
    p.add_argument("--seed", type=_nonneg, help="overrides the config seed")
    p.set_defaults(func=cmd_experiment)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (GraphError, ConfigError, UsageError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except KeyboardInterrupt:
        print("interrupted; rows written so far were flushed", file=sys.stderr)
        return 130


if __name__ == "__main__":
    sys.exit(main())
