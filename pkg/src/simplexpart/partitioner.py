"""Multiway spectral partitioning with simplex labels and Procrustes rounding."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .eigen import DEFAULT_TOL, EigenResult, smallest_nontrivial_eigenpairs
from .graph import Graph, GraphError, Partition, laplacian_apply, require_connected
from .simplex import (
    GroupVectors,
    PartitionSpec,
    SpecError,
    pair_eigenvalues,
    relaxed_cost,
    size_transform,
)

log = logging.getLogger(__name__)

MAX_ROUNDS = 100
DEFAULT_RESTARTS = 10

__all__ = [
    "Embedding",
    "SolveReport",
    "balance",
    "bisect",
    "embed",
    "procrustes_rotation",
    "random_orthogonal",
    "relaxed_cost",
    "round_to_nearest",
    "solve",
]


@dataclass(frozen=True, eq=False)
class Embedding:
    """Eigenvector columns ordered to match the axes of the group vectors."""

    X: np.ndarray
    values: np.ndarray
    eig: EigenResult = field(repr=False)


@dataclass(frozen=True, eq=False)
class SolveReport:
    partition: Partition
    relaxed_cost: float
    rounds: list[int]
    restarts: int
    chosen_restart: int
    restart_cuts: list[float]
    orientation: np.ndarray = field(repr=False)
    converged: list[bool] = field(default_factory=list)

    def summary(self) -> str:
        sizes = ",".join(str(s) for s in self.partition.sizes)
        return f"cut={self.partition.cut:g} sizes=[{sizes}] restarts={self.restarts}"


def _check_spec(g: Graph, spec: PartitionSpec) -> None:
    if spec.k > g.n:
        raise SpecError("k exceeds vertex count")
    if spec.n != g.n:
        raise SpecError(f"target sizes sum to {spec.n}, graph has {g.n} vertices")


def embed(g: Graph, gv: GroupVectors, tol: float = DEFAULT_TOL, seed: int = 0) -> Embedding:
    eig = smallest_nontrivial_eigenpairs(g, gv.k - 1, tol, seed=seed)
    perm = pair_eigenvalues(eig.values, gv.D)
    return Embedding(X=eig.vectors[:, perm], values=eig.values[perm], eig=eig)


def bisect(g: Graph, tol: float = DEFAULT_TOL, seed: int = 0) -> Partition:
    """Split by the signs of the Fiedler vector.

    Positive entries go to group 0, negative to group 1. Entries that are
    zero to rounding error are assigned one at a time, in vertex order, to
    whichever group is currently smaller.
    """
    require_connected(g)
    if g.n < 2:
        raise GraphError("bisection needs at least two vertices")
    x = smallest_nontrivial_eigenpairs(g, 1, tol, seed=seed).vectors[:, 0]
    zero = np.abs(x) <= 1e-10 * np.abs(x).max()
    a = (x < 0).astype(np.int64)
    sizes = [int(np.sum(~zero & (a == 0))), int(np.sum(~zero & (a == 1)))]
    for i in np.flatnonzero(zero):
        r = 0 if sizes[0] <= sizes[1] else 1
        a[i] = r
        sizes[r] += 1
    return Partition.from_assignment(g, a, 2)


def round_to_nearest(X, gv: GroupVectors, orientation=None) -> np.ndarray:
    """Assign each row of ``X`` to the nearest oriented group vector.

    The oriented group vectors are the rows of ``gv.transformed @ orientation``.
    Ties go to the lowest group index.
    """
    X = np.asarray(X, dtype=float)
    centres = gv.transformed if orientation is None else gv.transformed @ orientation
    if X.ndim != 2 or X.shape[1] != centres.shape[1]:
        raise ValueError(f"embedding has shape {X.shape}, group vectors have dimension {centres.shape[1]}")
    # |x - c|^2 up to the row-constant |x|^2
    d2 = (centres * centres).sum(axis=1) - 2.0 * (X @ centres.T)
    return np.argmin(d2, axis=1)


def procrustes_rotation(S, X) -> np.ndarray:
    """Orthogonal ``R`` maximizing ``Tr(R^T S^T X)``, i.e. minimizing ``|S R - X|``.

    ``R = U V^T`` from the SVD ``S^T X = U Sigma V^T``. Reflections are allowed.
    """
    return polar_factor(np.asarray(S, dtype=float).T @ np.asarray(X, dtype=float))


def polar_factor(M) -> np.ndarray:
    M = np.asarray(M, dtype=float)
    if not np.all(np.isfinite(M)):
        raise ValueError("non-finite entries in Procrustes input")
    U, _, Vt = np.linalg.svd(M)
    return U @ Vt


def random_orthogonal(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed orthogonal matrix (QR of a Gaussian, signs fixed by R's diagonal)."""
    Z = rng.standard_normal((dim, dim))
    Qm, Rm = np.linalg.qr(Z)
    s = np.sign(np.diag(Rm))
    s[s == 0] = 1.0
    return Qm * s


def _iterate(X, gv: GroupVectors, g: Graph, R: np.ndarray, max_rounds: int):
    """Alternate rounding and Procrustes re-orientation until memberships settle."""
    best = None
    prev = None
    for rounds in range(1, max_rounds + 1):
        a = round_to_nearest(X, gv, R)
        if prev is not None and np.array_equal(a, prev):
            return a, R, rounds, True
        cut = float(g.w[a[g.u] != a[g.v]].sum())
        if best is None or cut < best[0]:
            best = (cut, a, R)
        prev = a
        R = procrustes_rotation(gv.label_matrix(a), X)
    return best[1], best[2], max_rounds, False


def _selection_key(p: Partition) -> tuple[int, float]:
    # partitions with empty groups trivially lower the cut; rank them last
    return (sum(1 for s in p.sizes if s == 0), p.cut)


def solve(
    g: Graph,
    spec: PartitionSpec,
    restarts: int = DEFAULT_RESTARTS,
    seed: int = 0,
    *,
    tol: float = DEFAULT_TOL,
    max_rounds: int = MAX_ROUNDS,
    balanced: bool = False,
    embedding: Embedding | None = None,
) -> SolveReport:
    """Partition ``g`` into groups of (approximately) the target sizes.

    Each restart draws a random initial orientation of the group vectors and
    alternates nearest-vector rounding with Procrustes re-orientation until the
    assignment stops changing (or ``max_rounds`` is hit, keeping the best
    assignment seen). The restart with the smallest cut wins, lowest index on
    ties. With ``balanced=True`` every restart's result is first made to match
    the target sizes exactly.
    """
    require_connected(g)
    _check_spec(g, spec)
    if restarts < 1:
        raise ValueError("restarts must be at least 1")
    gv = size_transform(spec)
    if embedding is None:
        embedding = embed(g, gv, tol, seed=seed)
    X = embedding.X
    dim = spec.k - 1

    children = np.random.SeedSequence(seed).spawn(restarts)
    results = []
    for i, child in enumerate(children):
        R0 = random_orthogonal(dim, np.random.default_rng(child))
        a, R, rounds, conv = _iterate(X, gv, g, R0, max_rounds)
        p = Partition.from_assignment(g, a, spec.k)
        if balanced:
            p = balance(g, p, spec)
        log.debug("restart %d: cut=%g rounds=%d converged=%s", i, p.cut, rounds, conv)
        results.append((p, R, rounds, conv))

    chosen = min(range(restarts), key=lambda i: _selection_key(results[i][0]))
    return SolveReport(
        partition=results[chosen][0],
        relaxed_cost=relaxed_cost(embedding.values, gv.D),
        rounds=[r[2] for r in results],
        restarts=restarts,
        chosen_restart=chosen,
        restart_cuts=[r[0].cut for r in results],
        orientation=results[chosen][1],
        converged=[r[3] for r in results],
    )


def relaxed_trace(g: Graph, X, D) -> float:
    """``0.5 * Tr(X^T L X D^-2)`` evaluated with Laplacian products."""
    X = np.asarray(X, dtype=float)
    return float(0.5 * np.sum((X * laplacian_apply(g, X)).sum(axis=0) / np.asarray(D) ** 2))


def balance(g: Graph, p: Partition, spec: PartitionSpec) -> Partition:
    """Move vertices greedily until group sizes equal the targets exactly.

    Each move takes the vertex in an oversized group whose transfer to an
    undersized group raises the cut least (ties: lowest vertex, then lowest
    group). The cut may go up; only the sizes are guaranteed.
    """
    _check_spec(g, spec)
    if p.k != spec.k:
        raise SpecError(f"partition has {p.k} groups, spec has {spec.k}")
    target = np.asarray(spec.target_sizes)
    a = np.array(p.assignment, dtype=np.int64)
    sizes = np.bincount(a, minlength=spec.k)
    if np.array_equal(sizes, target):
        return p
    k = spec.k
    onehot = np.zeros((g.n, k))
    onehot[np.arange(g.n), a] = 1.0
    # link[i, r]: total weight from vertex i into group r
    link = np.asarray(g.adjacency @ onehot)
    A = g.adjacency
    while True:
        over = np.flatnonzero(sizes > target)
        if over.size == 0:
            break
        under = np.flatnonzero(sizes < target)
        cand = np.flatnonzero(np.isin(a, over))
        own = link[cand, a[cand]]
        gain = own[:, None] - link[np.ix_(cand, under)]  # cut increase per move
        flat = int(np.argmin(gain))
        i = int(cand[flat // under.size])
        dst = int(under[flat % under.size])
        src = int(a[i])
        lo, hi = A.indptr[i], A.indptr[i + 1]
        nbrs, wts = A.indices[lo:hi], A.data[lo:hi]
        link[nbrs, src] -= wts
        link[nbrs, dst] += wts
        a[i] = dst
        sizes[src] -= 1
        sizes[dst] += 1
    return Partition.from_assignment(g, a, k)
