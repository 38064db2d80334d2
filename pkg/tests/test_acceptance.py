"""Acceptance criteria, one test each.

Every test appends a single ``[ACn] PASS|FAIL ...`` line that the terminal
summary prints under "acceptance criteria", then asserts.
"""

import os
import time
from pathlib import Path

import numpy as np
import pytest

import conftest
from conftest import random_assignment, random_connected_graph, random_sizes, two_cliques
from simplexpart.eigen import dense_eigen_oracle, smallest_nontrivial_eigenpairs
from simplexpart.graph import Partition, cut_size, read_edge_list
from simplexpart.partitioner import (
    bisect,
    embed,
    polar_factor,
    random_orthogonal,
    relaxed_trace,
    solve,
)
from simplexpart.simplex import PartitionSpec, regular_simplex, relaxed_cost, size_transform
from simplexpart.synth import PlantedSpec, accuracy, chance_baseline, generate, sweep

POWER_GRID_ENV = "SIMPLEXPART_POWER_GRID"
POWER_GRID_DEFAULT = Path(__file__).resolve().parent.parent / "data" / "power_grid.txt"


def record(tag, ok, detail, elapsed=None, limit=None):
    timing = "" if elapsed is None else f" ({elapsed:.2f}s, limit {limit:g}s)"
    conftest.ACCEPTANCE_LINES.append(f"[{tag}] {'PASS' if ok else 'FAIL'} {detail}{timing}")
    print(conftest.ACCEPTANCE_LINES[-1])
    assert ok, conftest.ACCEPTANCE_LINES[-1]


def test_ac1_simplex_geometry():
    t0 = time.perf_counter()
    gram_err = max(np.abs(regular_simplex(k) @ regular_simplex(k).T - (np.eye(k) - 1 / k)).max() for k in range(2, 9))
    rng = np.random.default_rng(1)
    sum_err = orth_err = 0.0
    for _ in range(100):
        k = int(rng.integers(2, 9))
        sizes = random_sizes(rng, k, n_max=200)
        S = size_transform(PartitionSpec(sizes)).label_matrix(random_assignment(rng, sizes))
        sum_err = max(sum_err, np.abs(S.sum(axis=0)).max())
        orth_err = max(orth_err, np.abs(S.T @ S - np.eye(k - 1)).max())
    dt = time.perf_counter() - t0
    ok = gram_err <= 1e-12 and sum_err <= 1e-10 and orth_err <= 1e-10 and dt < 1.0
    record("AC1", ok, f"gram err {gram_err:.1e}, S^T1 err {sum_err:.1e}, S^TS-I err {orth_err:.1e}", dt, 1)


def test_ac2_cut_identity():
    t0 = time.perf_counter()
    rng = np.random.default_rng(2)
    worst = 0.0
    for i in range(50):
        k = int(rng.integers(2, 6))
        sizes = random_sizes(rng, k, n_max=50)
        n = sum(sizes)
        g = random_connected_graph(rng, n, extra=int(rng.integers(0, 3 * n)), weighted=bool(i % 2))
        a = random_assignment(rng, sizes)
        gv = size_transform(PartitionSpec(sizes))
        direct = cut_size(g, Partition.from_assignment(g, a, k))
        worst = max(worst, abs(relaxed_trace(g, gv.label_matrix(a), gv.D) - direct))
    dt = time.perf_counter() - t0
    record("AC2", worst <= 1e-8 and dt < 5.0, f"max |trace - cut| {worst:.1e} over 50 graphs", dt, 5)


def test_ac3_eigen_oracle():
    t0 = time.perf_counter()
    rng = np.random.default_rng(3)
    val_err = orth_ratio = 0.0
    for i in range(50):
        n = int(rng.integers(10, 201))
        g = random_connected_graph(rng, n, extra=int(rng.integers(0, 2 * n)), weighted=bool(i % 3 == 0))
        count = int(rng.integers(1, min(7, n - 1) + 1))
        it = smallest_nontrivial_eigenpairs(g, count, seed=i)
        ref = dense_eigen_oracle(g, count)
        val_err = max(val_err, np.abs(it.values - ref.values).max())
        orth_ratio = max(orth_ratio, np.abs(it.vectors.sum(axis=0)).max() / (1e-8 * np.sqrt(n)))
    dt = time.perf_counter() - t0
    ok = val_err <= 1e-8 and orth_ratio <= 1.0 and dt < 30.0
    record("AC3", ok, f"max eigenvalue err {val_err:.1e}, worst |1^T x| / (1e-8 sqrt n) = {orth_ratio:.2e}", dt, 30)


def test_ac4_bisection_consistency():
    t0 = time.perf_counter()
    rng = np.random.default_rng(4)
    checked = mismatches = 0
    while checked < 50:
        n = 2 * int(rng.integers(5, 60))
        g = random_connected_graph(rng, n, extra=int(rng.integers(0, 2 * n)))
        lam = dense_eigen_oracle(g, 2).values
        if lam[1] - lam[0] <= 1e-6 * max(1.0, lam[1]):
            continue
        checked += 1
        a = bisect(g).assignment
        b = solve(g, PartitionSpec.equal(n, 2), seed=checked).partition.assignment
        if not (np.array_equal(a, b) or np.array_equal(a, 1 - b)):
            mismatches += 1
    clique_cut = bisect(two_cliques(5)).cut
    solve_cut = solve(two_cliques(5), PartitionSpec.equal(10, 2)).partition.cut
    dt = time.perf_counter() - t0
    ok = mismatches == 0 and clique_cut == 1.0 and solve_cut == 1.0 and dt < 30.0
    record("AC4", ok, f"{mismatches}/50 mismatches, two-clique cut {clique_cut:g} (solve {solve_cut:g})", dt, 30)


def test_ac5_relaxed_cost_identity():
    t0 = time.perf_counter()
    rng = np.random.default_rng(5)
    trace_err = half_err = 0.0
    for i in range(30):
        k = int(rng.integers(2, 6))
        sizes = random_sizes(rng, k, n_max=80)
        g = random_connected_graph(rng, sum(sizes), weighted=bool(i % 2))
        gv = size_transform(PartitionSpec(sizes))
        emb = embed(g, gv, seed=i)
        rc = relaxed_cost(emb.values, gv.D)
        trace_err = max(trace_err, abs(rc - relaxed_trace(g, emb.X, gv.D)) / max(1.0, rc))
    for i in range(20):
        n = 2 * int(rng.integers(3, 40))
        g = random_connected_graph(rng, n)
        gv = size_transform(PartitionSpec.equal(n, 2))
        emb = embed(g, gv, seed=i)
        rc = relaxed_cost(emb.values, gv.D)
        half_err = max(half_err, abs(rc - n * emb.values[0] / 4) / max(1.0, rc))
    dt = time.perf_counter() - t0
    ok = trace_err <= 1e-8 and half_err <= 1e-8 and dt < 5.0
    record("AC5", ok, f"rel err vs trace {trace_err:.1e}, vs n*lambda2/4 {half_err:.1e}", dt, 5)


def test_ac6_procrustes_optimality():
    t0 = time.perf_counter()
    rng = np.random.default_rng(6)
    violations = 0
    worst_gap = np.inf
    for i in range(50):
        d = 1 + i % 7
        M = rng.standard_normal((d, d))
        best = np.trace(polar_factor(M).T @ M)
        Qs = np.stack([random_orthogonal(d, rng) for _ in range(1000)])
        others = np.einsum("qij,ij->q", Qs, M)
        gap = best - others.max()
        worst_gap = min(worst_gap, gap)
        violations += int(np.sum(others > best + 1e-12 * max(1.0, abs(best))))
    dt = time.perf_counter() - t0
    ok = violations == 0 and dt < 10.0
    record("AC6", ok, f"{violations} violations in 50000 comparisons, min gap {worst_gap:.2e}", dt, 10)


@pytest.mark.slow
def test_ac7_easy_regime():
    t0 = time.perf_counter()
    rows = sweep(PlantedSpec((400, 400, 400), 20, 0.85, seed=7), [0.85], 20, ["simplex", "kmeans"])
    dt = time.perf_counter() - t0
    acc = {r.method: r.mean_accuracy for r in rows}
    ok = all(v >= 0.97 for v in acc.values()) and dt < 120.0
    record("AC7", ok, f"simplex {acc['simplex']:.4f}, kmeans {acc['kmeans']:.4f} (need >= 0.97)", dt, 120)


@pytest.mark.slow
def test_ac8_unbalanced():
    sizes = (800, 300, 100)
    t0 = time.perf_counter()
    rows = sweep(PlantedSpec(sizes, 20, 0.55, seed=8), [0.55], 20, ["simplex", "kmeans"])
    dt = time.perf_counter() - t0
    r = {row.method: row for row in rows}
    base = chance_baseline(sizes)
    all_largest = max(sizes) / sum(sizes)
    s, km = r["simplex"].mean_accuracy, r["kmeans"].mean_accuracy
    ok = s >= base + 0.03 and s >= km - 0.02 and dt < 180.0
    # context: putting every vertex in the largest group already scores all_largest
    record(
        "AC8",
        ok,
        f"simplex {s:.4f} +- {r['simplex'].stderr:.4f}, kmeans {km:.4f}, chance {base:.4f}, "
        f"all-in-largest {all_largest:.4f}",
        dt,
        180,
    )


def test_ac9_chance_baseline():
    a = chance_baseline((1800, 1200, 600))
    b = chance_baseline((2400, 900, 300))
    # the stated 0.5135 is a rounded figure; the exact value is 0.51389, within 1e-4 of 0.5139
    ok = abs(a - 0.3889) <= 1e-4 and abs(b - 0.5139) <= 1e-4 and abs(b - 0.5135) <= 5e-4
    record("AC9", ok, f"(1800,1200,600) -> {a:.5f}, (2400,900,300) -> {b:.5f}")


@pytest.mark.slow
def test_ac10_performance():
    t0 = time.perf_counter()
    g, planted = generate(PlantedSpec((25000,) * 4, 20, 0.8, seed=10))
    t1 = time.perf_counter()
    rep = solve(g, PartitionSpec((25000,) * 4), seed=10)
    dt = time.perf_counter() - t0
    acc = accuracy(rep.partition, planted, 4)
    record("AC10", dt < 60.0, f"n=1e5 k=4: generate {t1 - t0:.1f}s, solve {dt - (t1 - t0):.1f}s, accuracy {acc:.4f}", dt, 60)


def power_grid_path():
    env = os.environ.get(POWER_GRID_ENV)
    path = Path(env) if env else POWER_GRID_DEFAULT
    return path if path.is_file() else None


@pytest.mark.slow
def test_ac11_power_grid():
    path = power_grid_path()
    if path is None:
        conftest.ACCEPTANCE_LINES.append(f"[AC11] SKIP power-grid edge list not supplied (set {POWER_GRID_ENV})")
        pytest.skip("power-grid edge list not supplied")
    g = read_edge_list(path)
    t0 = time.perf_counter()
    rep = solve(g, PartitionSpec((898, 1066, 1240, 1737)), restarts=50, seed=0)
    dt = time.perf_counter() - t0
    record("AC11", rep.partition.cut <= 60, f"n={g.n} m={g.m} cut {rep.partition.cut:g} (need <= 60)", dt, 600)
