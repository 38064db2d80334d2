"""Planted-partition graphs, accuracy scoring and benchmark sweeps."""

from __future__ import annotations

import csv
import itertools
import math
from dataclasses import dataclass, replace
from typing import IO, Callable, Sequence

import numpy as np

from .graph import Graph, GraphError, Partition, connected

MAX_TRIES = 100
MAX_PERMUTATION_K = 8
CSV_COLUMNS = ("f", "method", "mean_accuracy", "stderr", "mean_cut", "replicates")


class InfeasibleSpecError(ValueError):
    pass


@dataclass(frozen=True)
class PlantedSpec:
    """Planted partition with mean degree ``c`` and in-group edge fraction ``f``.

    ``p_in = f * (c n / 2) / W_in`` and ``p_out = (1 - f) * (c n / 2) / W_out``
    where ``W_in`` and ``W_out`` count the within- and between-group vertex
    pairs, so the expected edge count is ``c n / 2`` and the expected fraction
    of within-group edges is ``f``.
    """

    sizes: tuple[int, ...]
    mean_degree: float
    in_fraction: float
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "sizes", tuple(int(s) for s in self.sizes))
        if len(self.sizes) < 2 or min(self.sizes) < 1:
            raise InfeasibleSpecError("need at least two nonempty groups")
        if not self.mean_degree > 0:
            raise InfeasibleSpecError("mean degree must be positive")
        if not 0.0 <= self.in_fraction <= 1.0:
            raise InfeasibleSpecError("in-group fraction must lie in [0, 1]")

    @property
    def n(self) -> int:
        return sum(self.sizes)

    @property
    def k(self) -> int:
        return len(self.sizes)

    @property
    def pair_counts(self) -> tuple[int, int]:
        s = np.asarray(self.sizes, dtype=np.int64)
        w_in = int(np.sum(s * (s - 1) // 2))
        w_out = int((s.sum() ** 2 - np.sum(s * s)) // 2)
        return w_in, w_out

    @property
    def expected_edges(self) -> float:
        return self.mean_degree * self.n / 2.0

    @property
    def probabilities(self) -> tuple[float, float]:
        w_in, w_out = self.pair_counts
        m = self.expected_edges
        p_in = self.in_fraction * m / w_in if w_in else (0.0 if self.in_fraction == 0 else math.inf)
        p_out = (1.0 - self.in_fraction) * m / w_out
        return p_in, p_out

    def labels(self) -> np.ndarray:
        return np.repeat(np.arange(self.k), self.sizes)


def _sample_pairs(rng: np.random.Generator, total: int, p: float) -> np.ndarray:
    """Indices of a Bernoulli(p) subset of ``range(total)``."""
    if p <= 0 or total == 0:
        return np.empty(0, dtype=np.int64)
    m = rng.binomial(total, min(p, 1.0))
    return np.sort(rng.choice(total, size=m, replace=False))


def _triangle_decode(idx: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # idx enumerates pairs (i, j), j < i, in row-major order: idx = i(i-1)/2 + j
    i = ((1 + np.sqrt(1 + 8 * idx.astype(float))) / 2).astype(np.int64)
    # float rounding can be off by one for large idx
    i -= (i * (i - 1) // 2) > idx
    i += ((i + 1) * i // 2) <= idx
    j = idx - i * (i - 1) // 2
    return i, j


def sample_planted(spec: PlantedSpec, rng: np.random.Generator) -> Graph:
    """One draw from the ensemble, connected or not."""
    p_in, p_out = spec.probabilities
    if not (0.0 <= p_in <= 1.0 and 0.0 <= p_out <= 1.0):
        raise InfeasibleSpecError(
            f"infeasible density: p_in={p_in:.4g}, p_out={p_out:.4g} (must lie in [0, 1])"
        )
    starts = np.concatenate([[0], np.cumsum(spec.sizes)])
    us, vs = [], []
    for r, nr in enumerate(spec.sizes):
        i, j = _triangle_decode(_sample_pairs(rng, nr * (nr - 1) // 2, p_in))
        us.append(starts[r] + j)
        vs.append(starts[r] + i)
    for r, s in itertools.combinations(range(spec.k), 2):
        nr, ns = spec.sizes[r], spec.sizes[s]
        i, j = np.divmod(_sample_pairs(rng, nr * ns, p_out), ns)
        us.append(starts[r] + i)
        vs.append(starts[s] + j)
    return Graph.from_edges(spec.n, np.concatenate(us), np.concatenate(vs), check_duplicates=False)


def generate(spec: PlantedSpec, max_tries: int = MAX_TRIES) -> tuple[Graph, np.ndarray]:
    """Connected planted-partition graph and its planted labels.

    Disconnected draws are discarded and redrawn, up to ``max_tries``.
    Vertices ``0..n_1-1`` form group 0, the next ``n_2`` group 1, and so on.
    """
    rng = np.random.default_rng(spec.seed)
    for _ in range(max_tries):
        g = sample_planted(spec, rng)
        if connected(g):
            return g, spec.labels()
    raise GraphError(f"no connected sample in {max_tries} tries (disconnected ensemble)")


def confusion(found, planted, k: int) -> np.ndarray:
    return np.bincount(np.asarray(found) * k + np.asarray(planted), minlength=k * k).reshape(k, k)


def accuracy(found: Partition | Sequence[int] | np.ndarray, planted, k: int | None = None) -> float:
    """Best fraction of agreeing vertices over all relabelings of ``found``."""
    a = np.asarray(found.assignment if isinstance(found, Partition) else found, dtype=np.int64)
    b = np.asarray(planted, dtype=np.int64)
    if a.shape != b.shape:
        raise ValueError("assignments differ in length")
    if k is None:
        k = found.k if isinstance(found, Partition) else int(max(a.max(), b.max())) + 1
    if max(a.max(), b.max()) >= k:
        raise ValueError("group index exceeds k")
    if k > MAX_PERMUTATION_K:
        raise ValueError(f"permutation search limited to k <= {MAX_PERMUTATION_K}")
    C = confusion(a, b, k)
    rows = np.arange(k)
    best = max(int(C[rows, list(perm)].sum()) for perm in itertools.permutations(range(k)))
    return best / a.size


def chance_baseline(sizes: Sequence[int]) -> float:
    """Expected accuracy ``sum(nu_i**2)`` of a random split with these sizes."""
    s = np.asarray(sizes, dtype=float)
    if s.size == 0 or np.any(s < 0) or s.sum() <= 0:
        raise ValueError("invalid sizes")
    nu = s / s.sum()
    return float(np.sum(nu * nu))


def chance_fraction(sizes: Sequence[int]) -> float:
    """In-group fraction at which ``p_in == p_out``."""
    w_in, w_out = PlantedSpec(tuple(sizes), 1.0, 0.5).pair_counts
    return w_in / (w_in + w_out)


@dataclass(frozen=True)
class SweepRow:
    f: float
    method: str
    mean_accuracy: float
    stderr: float
    mean_cut: float
    replicates: int

    def as_tuple(self):
        return (self.f, self.method, self.mean_accuracy, self.stderr, self.mean_cut, self.replicates)


# name -> callable(graph, sizes, restarts, seed) -> Partition
Method = Callable[[Graph, Sequence[int], int, int], Partition]


def _simplex_method(g, sizes, restarts, seed):
    from .partitioner import solve
    from .simplex import PartitionSpec

    return solve(g, PartitionSpec(tuple(sizes)), restarts=restarts, seed=seed).partition


def _kmeans_method(g, sizes, restarts, seed):
    from .baseline import KMeansConfig, kmeans_partition

    return kmeans_partition(g, KMeansConfig(k=len(sizes), restarts=restarts, seed=seed))


METHODS: dict[str, Method] = {"simplex": _simplex_method, "kmeans": _kmeans_method}


def replicate_seed(base_seed: int, f_index: int, replicate: int) -> int:
    ss = np.random.SeedSequence([base_seed, f_index, replicate])
    return int(ss.generate_state(1, dtype=np.uint32)[0])


def sweep(
    base: PlantedSpec,
    f_values: Sequence[float],
    replicates: int,
    methods: Sequence[str] = ("simplex", "kmeans"),
    restarts: int = 10,
    progress: Callable[[str], None] | None = None,
) -> list[SweepRow]:
    """Mean accuracy and standard error per (f, method).

    Each replicate graph is shared by all methods; graph and partitioner
    seeds derive from ``(base.seed, f index, replicate index)``.
    """
    if replicates < 1:
        raise ValueError("replicates must be at least 1")
    unknown = [m for m in methods if m not in METHODS]
    if unknown:
        raise ValueError(f"unknown method(s): {', '.join(unknown)}")
    rows: list[SweepRow] = []
    for fi, f in enumerate(f_values):
        accs = {m: [] for m in methods}
        cuts = {m: [] for m in methods}
        for rep in range(replicates):
            s = replicate_seed(base.seed, fi, rep)
            g, planted = generate(replace(base, in_fraction=float(f), seed=s))
            for m in methods:
                p = METHODS[m](g, base.sizes, restarts, s)
                accs[m].append(accuracy(p, planted, base.k))
                cuts[m].append(p.cut)
        for m in methods:
            acc = np.asarray(accs[m])
            se = float(acc.std(ddof=1) / np.sqrt(acc.size)) if acc.size > 1 else 0.0
            rows.append(SweepRow(float(f), m, float(acc.mean()), se, float(np.mean(cuts[m])), replicates))
        if progress is not None:
            summary = " ".join(f"{r.method}={r.mean_accuracy:.4f}" for r in rows[-len(methods):])
            progress(f"f={f:g} {summary}")
    return rows


def write_csv(rows: Sequence[SweepRow], stream: IO[str]) -> None:
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in rows:
        w.writerow([f"{r.f:g}", r.method, f"{r.mean_accuracy:.6f}", f"{r.stderr:.6f}", f"{r.mean_cut:.3f}", r.replicates])
