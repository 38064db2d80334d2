"""k-means on Laplacian eigenvector rows, the standard multiway spectral baseline."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .eigen import DEFAULT_TOL, smallest_nontrivial_eigenpairs
from .graph import Graph, Partition, require_connected
from .simplex import SpecError


@dataclass(frozen=True)
class KMeansConfig:
    k: int
    restarts: int = 10
    max_iters: int = 300
    seed: int = 0

    def __post_init__(self):
        if self.k < 2:
            raise SpecError("k must be at least 2")
        if self.restarts < 1:
            raise ValueError("restarts must be at least 1")
        if self.max_iters < 1:
            raise ValueError("max_iters must be at least 1")


@dataclass(frozen=True, eq=False)
class KMeansResult:
    labels: np.ndarray
    centers: np.ndarray
    inertia: float
    history: list[float] = field(default_factory=list)


def _sqdist(P: np.ndarray, C: np.ndarray) -> np.ndarray:
    d = (P * P).sum(1)[:, None] - 2.0 * P @ C.T + (C * C).sum(1)[None, :]
    return np.maximum(d, 0.0)


def _seed_centers(P: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    """Greedy k-means++: each new centre is the best of a few D^2-weighted draws."""
    n = P.shape[0]
    trials = 2 + int(np.log(k))
    centers = [P[rng.integers(n)]]
    closest = _sqdist(P, centers[0][None, :])[:, 0]
    for _ in range(1, k):
        total = closest.sum()
        if total <= 0:
            idx = rng.integers(n, size=trials)
        else:
            idx = np.searchsorted(np.cumsum(closest), rng.random(trials) * total)
            idx = np.minimum(idx, n - 1)
        cand = np.minimum(closest[None, :], _sqdist(P, P[idx]).T)
        best = int(np.argmin(cand.sum(axis=1)))
        centers.append(P[idx[best]])
        closest = cand[best]
    return np.array(centers)


def lloyd(P: np.ndarray, centers: np.ndarray, max_iters: int) -> KMeansResult:
    """Lloyd iterations; a centre left without points is moved to the farthest point."""
    P = np.asarray(P, dtype=float)
    C = np.array(centers, dtype=float)
    k = C.shape[0]
    labels = None
    history = []
    for _ in range(max_iters):
        d = _sqdist(P, C)
        new = np.argmin(d, axis=1)
        dmin = d[np.arange(P.shape[0]), new]
        for r in range(k):
            if not np.any(new == r):
                far = int(np.argmax(dmin))
                new[far] = r
                dmin[far] = 0.0
        history.append(float(dmin.sum()))
        if labels is not None and np.array_equal(new, labels):
            break
        labels = new
        counts = np.bincount(labels, minlength=k)
        C = np.zeros_like(C)
        np.add.at(C, labels, P)
        C /= counts[:, None]
    inertia = float(((P - C[labels]) ** 2).sum())
    return KMeansResult(labels=labels, centers=C, inertia=inertia, history=history)


def kmeans(P, k: int, restarts: int = 10, max_iters: int = 300, seed: int = 0) -> KMeansResult:
    """Best-inertia k-means over ``restarts`` seeded runs."""
    P = np.asarray(P, dtype=float)
    if P.ndim == 1:
        P = P[:, None]
    if k > P.shape[0]:
        raise SpecError("k exceeds number of points")
    rng = np.random.default_rng(seed)
    best = None
    for _ in range(restarts):
        res = lloyd(P, _seed_centers(P, k, rng), max_iters)
        if best is None or res.inertia < best.inertia:
            best = res
    return best


def spectral_embedding(g: Graph, k: int, tol: float = DEFAULT_TOL, seed: int = 0) -> np.ndarray:
    """Rows of the unit-norm eigenvectors 2..k, unpaired and unnormalized by row."""
    return smallest_nontrivial_eigenpairs(g, k - 1, tol, seed=seed).vectors


def kmeans_partition(g: Graph, cfg: KMeansConfig, tol: float = DEFAULT_TOL) -> Partition:
    require_connected(g)
    if cfg.k > g.n:
        raise SpecError("k exceeds vertex count")
    P = spectral_embedding(g, cfg.k, tol, seed=cfg.seed)
    res = kmeans(P, cfg.k, cfg.restarts, cfg.max_iters, cfg.seed)
    return Partition.from_assignment(g, res.labels, cfg.k)
