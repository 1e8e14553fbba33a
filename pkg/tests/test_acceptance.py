"""Acceptance criteria, each at its stated tolerance.

A summary line per criterion is printed at the end of the pytest run.
Statistical criteria use one base seed fixed before any calibration.
"""

import io
import itertools
import math
import random
import time

import numpy as np
import pytest
from scipy.optimize import linear_sum_assignment

from locsym.canonical import RootedGraph, canonical_code
from locsym.cli import main
from locsym.config import parse_config
from locsym.degree import dsed, min_mismatch_bruteforce, subgraph_bound_check
from locsym.experiments import (
    run_concentration_cell,
    run_dsed_pair_cell,
    run_experiment,
    run_local_symmetry_cell,
    run_triangle_cell,
    write_csv,
)
from locsym.fixtures import DOUBLE_STAR_U, DOUBLE_STAR_V, double_star
from locsym.graph import diameter, from_edge_list
from locsym.symmetry import GLOBAL, globally_symmetric_pair, k_locally_symmetric, symmetry_partition
from oracles import brute_rooted_forms, graph_from_mask, min_mismatch_raw, orbit_partition

SEED = 1


def detail(request, text):
    request.node.user_properties.append(("detail", text))


def as_blocks(partition):
    return {frozenset(c) for c in partition.classes}


@pytest.mark.criterion(1, "double-star fixture classes and verdicts")
def test_c01_fixture(request):
    start = time.perf_counter()
    g = double_star()
    local = symmetry_partition(g, 1)
    glob = symmetry_partition(g, GLOBAL)
    u_leaf, v_leaf = g.neighbors(DOUBLE_STAR_U)[-1], g.neighbors(DOUBLE_STAR_V)[-1]
    assert sorted(local.sizes(), reverse=True) == [15, 1, 1]
    assert sorted(glob.sizes(), reverse=True) == [8, 7, 1, 1]
    assert k_locally_symmetric(g, u_leaf, v_leaf, 1) is True
    assert globally_symmetric_pair(g, u_leaf, v_leaf) is False
    for k in range(1, int(diameter(g)) + 2):
        assert k_locally_symmetric(g, DOUBLE_STAR_U, DOUBLE_STAR_V, k) is False
    assert globally_symmetric_pair(g, DOUBLE_STAR_U, DOUBLE_STAR_V) is False
    elapsed = time.perf_counter() - start
    detail(request, f"{elapsed:.3f}s")
    assert elapsed < 1.0


def agreement_mismatches(codes, forms):
    """Pairs on which code equality and brute-force equality disagree.

    Both are certificates, so agreement on every pair is the same as the two
    induced partitions coinciding; mismatching pairs are counted through the
    joint histogram instead of enumerating all pairs.
    """
    joint = {}
    for c, f in zip(codes, forms):
        joint[(c, f)] = joint.get((c, f), 0) + 1
    by_code, by_form = {}, {}
    for (c, f), count in joint.items():
        by_code[c] = by_code.get(c, 0) + count
        by_form[f] = by_form.get(f, 0) + count
    same_both = sum(x * x for x in joint.values())
    same_code = sum(x * x for x in by_code.values())
    same_form = sum(x * x for x in by_form.values())
    return (same_code - same_both) + (same_form - same_both)


def codes_for(n, masks):
    return [canonical_code(RootedGraph(graph_from_mask(n, int(m)), 0)) for m in masks]


@pytest.mark.criterion(2, "canonical codes agree with root-fixing permutation search")
def test_c02_rooted_isomorphism_oracle(request):
    start = time.perf_counter()
    compared = 0
    bad = 0
    classes = []
    for n in range(1, 7):
        masks = np.arange(1 << (n * (n - 1) // 2), dtype=np.int64)
        forms = brute_rooted_forms(n, masks).tolist() if n > 1 else [0]
        codes = codes_for(n, masks)
        bad += agreement_mismatches(codes, forms)
        compared += len(masks)
        classes.append(len(set(codes)))
    rng = np.random.default_rng(SEED)
    masks = rng.integers(0, 1 << 21, size=10**5, dtype=np.int64)
    # half of the sample are relabelings of the other half, with the root fixed
    half = len(masks) // 2
    perm_rng = random.Random(SEED)
    pairs = list(itertools.combinations(range(7), 2))
    index = {p: i for i, p in enumerate(pairs)}
    for i in range(half, len(masks)):
        perm = [0, *perm_rng.sample(range(1, 7), 6)]
        src = int(masks[i - half])
        out = 0
        for j, (a, b) in enumerate(pairs):
            if src >> j & 1:
                x, y = sorted((perm[a], perm[b]))
                out |= 1 << index[(x, y)]
        masks[i] = out
    forms = brute_rooted_forms(7, masks).tolist()
    codes = codes_for(7, masks)
    bad += agreement_mismatches(codes, forms)
    compared += len(masks)
    elapsed = time.perf_counter() - start
    detail(request, f"{compared} rooted graphs, classes n<=6 {classes}, {bad} disagreeing pairs, {elapsed:.0f}s")
    assert classes == [1, 2, 6, 20, 90, 544]
    assert bad == 0
    assert elapsed < 300


def assignment_minimum(g1, g2):
    """Minimum mismatch as a min-cost assignment with dummy slots for unmapped vertices."""
    d1, d2 = g1.degrees(), g2.degrees()
    n1, n2 = len(d1), len(d2)
    size = n1 + n2
    cost = np.zeros((size, size))
    cost[:n1, :n2] = [[0 if a == b else 2 for b in d2] for a in d1]
    cost[:n1, n2:] = 1
    cost[n1:, :n2] = 1
    rows, cols = linear_sum_assignment(cost)
    return int(cost[rows, cols].sum())


def all_graphs(max_n):
    for n in range(1, max_n + 1):
        for mask in range(1 << (n * (n - 1) // 2)):
            yield graph_from_mask(n, mask)


def random_graph(rng, n):
    p = rng.random()
    return from_edge_list([e for e in itertools.combinations(range(n), 2) if rng.random() < p], n)


@pytest.mark.criterion(3, "DSED equals the minimum degree mismatch count")
def test_c03_dsed_is_min_mismatch(request):
    graphs = list(all_graphs(4))
    raw_cache = {}
    bad = 0
    for g1, g2 in itertools.product(graphs, repeat=2):
        key = (tuple(sorted(g1.degrees())), tuple(sorted(g2.degrees())))
        if key not in raw_cache:
            raw_cache[key] = min_mismatch_raw(g1, g2)
        best = raw_cache[key]
        if not dsed(g1, g2) == best == min_mismatch_bruteforce(g1, g2):
            bad += 1
    exhaustive = len(graphs) ** 2
    rng = random.Random(SEED)
    for _ in range(10**4):
        g1 = random_graph(rng, rng.randint(1, 6))
        g2 = random_graph(rng, rng.randint(1, 6))
        if not dsed(g1, g2) == assignment_minimum(g1, g2) == min_mismatch_bruteforce(g1, g2):
            bad += 1
    detail(request, f"{exhaustive} exhaustive + 10000 random pairs, {bad} mismatches")
    assert bad == 0


@pytest.mark.criterion(4, "subgraph DSED bound |V\\S| + |C(S)|")
def test_c04_subgraph_bound(request):
    rng = random.Random(SEED)
    violations = []
    for _ in range(10**3):
        n = rng.randint(1, 12)
        g = random_graph(rng, n)
        s = [v for v in range(n) if rng.random() < 0.6]
        value, bound = subgraph_bound_check(g, s)
        if value > bound:
            violations.append((n, g.m, len(s), value, bound))
    detail(request, f"{len(violations)} of 1000 trials violate the bound")
    assert not violations, f"first violation (n, m, |S|, dsed, bound): {violations[0]}"


def refines(fine, coarse):
    owner = {}
    for i, block in enumerate(coarse):
        for v in block:
            owner[v] = i
    return all(len({owner[v] for v in block}) == 1 for block in fine)


@pytest.mark.criterion(5, "partition hierarchy and convergence to the automorphism partition")
def test_c05_hierarchy(request):
    rng = random.Random(SEED)
    violations = 0
    connected = 0
    oracle_checked = 0
    for _ in range(500):
        n = rng.randint(1, 25)
        p = rng.choice([0.05, 0.1, 0.15, 0.2, 0.3, 0.5, 0.8])
        g = from_edge_list([e for e in itertools.combinations(range(n), 2) if rng.random() < p], n)
        parts = {k: as_blocks(symmetry_partition(g, k)) for k in range(5)}
        for k in range(4):
            if not refines(parts[k + 1], parts[k]):
                violations += 1
        diam = diameter(g)
        if math.isinf(diam):
            continue
        connected += 1
        glob = as_blocks(symmetry_partition(g, GLOBAL))
        if as_blocks(symmetry_partition(g, int(diam))) != glob:
            violations += 1
        if n <= 10:
            oracle_checked += 1
            if glob != orbit_partition(g):
                violations += 1
    detail(request, f"500 graphs, {connected} connected, {oracle_checked} orbit-checked, {violations} violations")
    assert violations == 0


@pytest.mark.criterion(6, "mean triangle count at n=50, p=0.2")
def test_c06_triangles(request):
    start = time.perf_counter()
    row = run_triangle_cell(50, 0.2, 1000, SEED)
    mean = row.extras["mean_value"]
    elapsed = time.perf_counter() - start
    detail(request, f"mean {mean:.2f} vs 156.8, {elapsed:.1f}s")
    assert abs(mean - 156.8) <= 0.05 * 156.8
    assert elapsed < 30


@pytest.mark.criterion(7, "degree concentration at n=5000, p=0.017, delta=0.5")
def test_c07_degree_concentration(request):
    start = time.perf_counter()
    row = run_concentration_cell(5000, 0.017, 0.5, 100, SEED)
    elapsed = time.perf_counter() - start
    detail(request, f"{row.successes}/100 samples pass, {elapsed:.1f}s")
    assert row.successes >= 99
    assert elapsed < 60


@pytest.mark.criterion(8, "local symmetry at p = n^-0.8")
def test_c08_local_symmetry_regime(request):
    start = time.perf_counter()
    rows = [run_local_symmetry_cell(n, n**-0.8, 1, 200, SEED, alpha=0.8, cell_index=i) for i, n in enumerate((500, 1000, 2000))]
    elapsed = time.perf_counter() - start
    detail(
        request,
        ", ".join(f"n={r.n}: {r.estimate:.3f} [{r.wilson_low:.3f},{r.wilson_high:.3f}]" for r in rows) + f", {elapsed:.0f}s",
    )
    for r in rows:
        assert r.undecided == 0
        assert r.estimate >= 0.95 and r.wilson_low > 0.5
    assert elapsed < 600


@pytest.mark.criterion(9, "trend from local symmetry to local asymmetry at n=2000")
def test_c09_regime_trend(request):
    alphas = (0.8, 0.7, 0.6, 0.5, 0.45)
    rows = [run_local_symmetry_cell(2000, 2000**-a, 1, 200, SEED, alpha=a, cell_index=i) for i, a in enumerate(alphas)]
    summary = ", ".join(
        f"a={r.alpha}: {r.estimate:.3f} [{r.wilson_low:.3f},{r.wilson_high:.3f}] undecided {r.undecided_fraction:.0%}"
        for r in rows
    )
    detail(request, summary)
    inconclusive = [r.alpha for r in rows if r.undecided_fraction > 0.2]
    if inconclusive:
        pytest.skip(f"undecided fraction above 20% at alpha {inconclusive}")
    for prev, cur in zip(rows, rows[1:]):
        # an increase only counts when the intervals separate
        assert cur.wilson_low <= prev.wilson_high, (prev.alpha, cur.alpha)
    first, last = rows[0], rows[-1]
    assert last.estimate < first.estimate
    assert last.wilson_high < first.wilson_low


@pytest.mark.criterion(10, "large DSED between independent G(n,p) at n=4096, p=n^-0.6")
def test_c10_large_dsed(request):
    start = time.perf_counter()
    n = 4096
    row = run_dsed_pair_cell(n, n**-0.6, 100, 0.1, SEED, alpha=0.6)
    elapsed = time.perf_counter() - start
    threshold = n ** (0.5 - 0.1)
    detail(
        request,
        f"{row.successes}/100 above {threshold:.2f}, min dsed {min(row.extras['values'])}, {elapsed:.1f}s",
    )
    assert row.extras["threshold"] == pytest.approx(28.0, abs=0.2)
    assert row.estimate >= 0.95
    assert elapsed < 120


DETERMINISM_CONFIG = """
seed = 2024
samples = 12
n = 150, 300
alpha = 0.8, 0.6, 0.5
[cell.1]
mode = global-symmetry
n = 40
p = 0.08
[cell.2]
mode = dsed-pairs
n = 512
alpha = 0.6
[cell.3]
mode = triangle-stats
n = 60
p = 0.15
[cell.4]
mode = degree-concentration
n = 400
p = 0.05
delta = 0.3
"""


@pytest.mark.criterion(11, "experiment output is byte-identical across runs")
def test_c11_determinism(request, tmp_path, capsys):
    cfg = tmp_path / "det.cfg"
    cfg.write_text(DETERMINISM_CONFIG)
    outputs = []
    for threads in ("1", "2", "1"):
        out = tmp_path / f"run{len(outputs)}.csv"
        assert main(["--threads", threads, "experiment", str(cfg), "--out", str(out)]) == 0
        outputs.append(out.read_bytes())
    buffer = io.StringIO()
    write_csv(run_experiment(parse_config(DETERMINISM_CONFIG)), buffer)
    outputs.append(buffer.getvalue().encode())
    capsys.readouterr()
    rows = outputs[0].decode().count("\n") - 1
    detail(request, f"{rows} rows, {len(set(outputs))} distinct output(s) over 4 runs")
    assert len(set(outputs)) == 1
