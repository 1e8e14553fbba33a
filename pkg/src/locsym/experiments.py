"""Monte Carlo harness estimating symmetry probabilities over (n, p) grids.

Each grid cell draws ``samples`` independent graphs. Sample ``i`` of cell
``c`` uses the random stream ``(seed, c, i)``, so results do not depend on
how samples are scheduled across workers. Samples whose canonical labeling
runs out of budget are counted as undecided and left out of the estimate.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from scipy.stats import binomtest

from .canonical import DEFAULT_BUDGET
from .degree import dsed
from .random_models import (
    PRNG_ID,
    degree_concentration_check,
    expected_triangles,
    gnp_graph,
    make_rng,
    triangle_count,
)
from .symmetry import graph_globally_symmetric, graph_k_locally_symmetric

__all__ = [
    "MODES",
    "CSV_HEADER",
    "Cell",
    "ExperimentSpec",
    "ExperimentRow",
    "wilson_interval",
    "run_cell",
    "run_local_symmetry_cell",
    "run_dsed_pair_cell",
    "run_triangle_cell",
    "run_concentration_cell",
    "run_experiment",
]

MODES = ("local-symmetry", "global-symmetry", "dsed-pairs", "triangle-stats", "degree-concentration")

CSV_HEADER = (
    "n", "p", "alpha", "k", "mode", "samples", "successes", "undecided",
    "estimate", "wilson_low", "wilson_high", "seed", "prng_id",
)


@dataclass(frozen=True)
class Cell:
    """One grid point. ``alpha`` is kept for reporting when p = c * n**-alpha."""

    n: int
    p: float
    mode: str = "local-symmetry"
    samples: int = 100
    k: int = 1
    alpha: float | None = None
    delta: float = 0.5
    epsilon: float = 0.1
    budget: int = DEFAULT_BUDGET
    fast_path: bool = True

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if self.samples < 1:
            raise ValueError("samples must be at least 1")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p = {self.p} outside [0, 1]")
        if self.k < 0:
            raise ValueError("k must be non-negative")

    @classmethod
    def from_alpha(cls, n: int, alpha: float, c: float = 1.0, **kw) -> "Cell":
        return cls(n=n, p=c * n ** (-alpha), alpha=alpha, **kw)


@dataclass
class ExperimentSpec:
    cells: list[Cell] = field(default_factory=list)
    seed: int | None = None


@dataclass
class ExperimentRow:
    n: int
    p: float
    alpha: float | None
    k: int
    mode: str
    samples: int
    successes: int
    undecided: int
    estimate: float
    wilson_low: float
    wilson_high: float
    seed: int
    prng_id: str = PRNG_ID
    mean_runtime: float = 0.0
    extras: dict = field(default_factory=dict)

    @property
    def failures(self) -> int:
        return self.samples - self.successes - self.undecided

    @property
    def undecided_fraction(self) -> float:
        return self.undecided / self.samples

    def csv_fields(self) -> list[str]:
        return [
            str(self.n),
            _fmt(self.p),
            "" if self.alpha is None else _fmt(self.alpha),
            str(self.k),
            self.mode,
            str(self.samples),
            str(self.successes),
            str(self.undecided),
            _fmt(self.estimate, 6),
            _fmt(self.wilson_low, 6),
            _fmt(self.wilson_high, 6),
            str(self.seed),
            self.prng_id,
        ]


def _fmt(x: float, digits: int = 10) -> str:
    if isinstance(x, float) and math.isnan(x):
        return "nan"
    return f"{x:.{digits}g}" if digits == 10 else f"{x:.{digits}f}"


def wilson_interval(successes: int, trials: int, confidence: float = 0.95) -> tuple[float, float]:
    if trials == 0:
        return 0.0, 1.0
    ci = binomtest(successes, trials).proportion_ci(confidence_level=confidence, method="wilson")
    return float(ci.low), float(ci.high)


def _sample(cell: Cell, seed: int, cell_index: int, index: int):
    """Outcome (True / False / None) and a numeric statistic for one sample."""
    start = time.perf_counter()
    rng = make_rng(seed, cell_index, index)
    g = gnp_graph(cell.n, cell.p, rng)
    value = None
    if cell.mode == "local-symmetry":
        outcome = graph_k_locally_symmetric(g, cell.k, cell.budget, cell.fast_path).symmetric
    elif cell.mode == "global-symmetry":
        outcome = graph_globally_symmetric(g, cell.budget).symmetric
    elif cell.mode == "dsed-pairs":
        value = dsed(g, gnp_graph(cell.n, cell.p, rng))
        outcome = value >= cell.n ** (0.5 - cell.epsilon)
    elif cell.mode == "triangle-stats":
        value = triangle_count(g)
        expected = expected_triangles(cell.n, cell.p)
        outcome = abs(value - expected) <= cell.delta * expected
    else:
        outcome = degree_concentration_check(g, cell.p, cell.delta)
    return outcome, value, time.perf_counter() - start


def _sample_star(args):
    return _sample(*args)


def _aggregate(cell: Cell, seed: int, results) -> ExperimentRow:
    results = list(results)
    successes = sum(1 for o, _, _ in results if o is True)
    undecided = sum(1 for o, _, _ in results if o is None)
    decided = len(results) - undecided
    low, high = wilson_interval(successes, decided)
    estimate = successes / decided if decided else math.nan
    extras = {}
    values = [v for _, v, _ in results if v is not None]
    if values:
        mean = sum(values) / len(values)
        extras["mean_value"] = mean
        extras["values"] = values
        if cell.mode == "triangle-stats":
            analytic = expected_triangles(cell.n, cell.p)
            extras["analytic_mean"] = analytic
            extras["relative_error"] = abs(mean - analytic) / analytic if analytic else (0.0 if mean == 0 else math.inf)
        if cell.mode == "dsed-pairs":
            extras["threshold"] = cell.n ** (0.5 - cell.epsilon)
    return ExperimentRow(
        n=cell.n,
        p=cell.p,
        alpha=cell.alpha,
        k=cell.k,
        mode=cell.mode,
        samples=len(results),
        successes=successes,
        undecided=undecided,
        estimate=estimate,
        wilson_low=low,
        wilson_high=high,
        seed=seed,
        mean_runtime=sum(t for _, _, t in results) / len(results),
        extras=extras,
    )


def run_cell(cell: Cell, seed: int, cell_index: int = 0, executor=None) -> ExperimentRow:
    jobs = [(cell, seed, cell_index, i) for i in range(cell.samples)]
    if executor is None:
        results = map(_sample_star, jobs)
    else:
        results = executor.map(_sample_star, jobs, chunksize=max(1, cell.samples // 32))
    return _aggregate(cell, seed, results)


def run_local_symmetry_cell(n, p, k, samples, seed, budget=DEFAULT_BUDGET, *, alpha=None, cell_index=0, fast_path=True):
    cell = Cell(n=n, p=p, k=k, samples=samples, alpha=alpha, budget=budget, fast_path=fast_path)
    return run_cell(cell, seed, cell_index)


def run_dsed_pair_cell(n, p, samples, epsilon, seed, *, alpha=None, cell_index=0):
    """Fraction of independent G(n, p) pairs whose DSED reaches n**(1/2 - epsilon).

    A warning is logged when p is outside the band log(n)/n < p < n**-0.5
    where that growth is expected.
    """
    import logging

    if n > 1 and not (math.log(n) / n < p < n**-0.5):
        logging.getLogger(__name__).warning(
            "p = %g lies outside (log n / n, n^-1/2) = (%g, %g)", p, math.log(n) / n, n**-0.5
        )
    cell = Cell(n=n, p=p, mode="dsed-pairs", samples=samples, epsilon=epsilon, alpha=alpha)
    return run_cell(cell, seed, cell_index)


def run_triangle_cell(n, p, samples, seed, tolerance=0.5, *, alpha=None, cell_index=0):
    cell = Cell(n=n, p=p, mode="triangle-stats", samples=samples, delta=tolerance, alpha=alpha)
    return run_cell(cell, seed, cell_index)


def run_concentration_cell(n, p, delta, samples, seed, *, alpha=None, cell_index=0):
    cell = Cell(n=n, p=p, mode="degree-concentration", samples=samples, delta=delta, alpha=alpha)
    return run_cell(cell, seed, cell_index)


def run_experiment(spec: ExperimentSpec, threads: int = 1) -> Iterator[ExperimentRow]:
    """Rows in grid order, one per cell, streamed as each cell completes."""
    if spec.cells and spec.seed is None:
        raise ValueError("an experiment with cells needs an explicit seed")
    if threads <= 1:
        for i, cell in enumerate(spec.cells):
            yield run_cell(cell, spec.seed, i)
        return
    with ProcessPoolExecutor(max_workers=threads) as pool:
        for i, cell in enumerate(spec.cells):
            yield run_cell(cell, spec.seed, i, pool)


def write_csv(rows: Iterable[ExperimentRow], stream) -> None:
    """Header plus one line per row, flushed as rows arrive."""
    stream.write(",".join(CSV_HEADER) + "\n")
    stream.flush()
    for row in rows:
        stream.write(",".join(row.csv_fields()) + "\n")
        stream.flush()
