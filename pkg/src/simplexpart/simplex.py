"""Regular simplex group labels and their size-dependent normalization.

Group ``r`` is labelled by a vertex ``w_r`` of a regular simplex centred on
the origin. For target sizes ``n_r`` the labels are translated, rotated and
scaled to ``D Q (w_r - t)`` so that the n x (k-1) label matrix ``S`` of any
assignment with those sizes has zero column sums and orthonormal columns.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np


class SpecError(ValueError):
    """Invalid group count or target sizes."""


@dataclass(frozen=True)
class PartitionSpec:
    target_sizes: tuple[int, ...]

    def __post_init__(self):
        sizes = tuple(int(s) for s in self.target_sizes)
        if len(sizes) < 2:
            raise SpecError("need at least two groups")
        if min(sizes) < 1:
            raise SpecError("every target size must be at least 1")
        object.__setattr__(self, "target_sizes", sizes)

    @classmethod
    def equal(cls, n: int, k: int) -> "PartitionSpec":
        """``k`` groups as equal as possible; the first ``n % k`` get one extra."""
        if k < 2:
            raise SpecError("need at least two groups")
        if k > n:
            raise SpecError("k exceeds vertex count")
        q, rem = divmod(n, k)
        return cls(tuple(q + (r < rem) for r in range(k)))

    @property
    def k(self) -> int:
        return len(self.target_sizes)

    @property
    def n(self) -> int:
        return sum(self.target_sizes)

    @property
    def fractions(self) -> np.ndarray:
        return np.asarray(self.target_sizes, dtype=float) / self.n


@lru_cache(maxsize=None)
def _simplex(k: int) -> np.ndarray:
    if k == 1:
        return np.zeros((1, 0))
    # w_1 = (a, 0, ...); the other k-1 vertices share first coordinate -1/(k a)
    # and their remaining coordinates form the (k-1)-simplex.
    a = np.sqrt(1.0 - 1.0 / k)
    out = np.zeros((k, k - 1))
    out[0, 0] = a
    out[1:, 0] = -1.0 / (k * a)
    out[1:, 1:] = _simplex(k - 1)
    return out


def regular_simplex(k: int) -> np.ndarray:
    """Rows are ``k`` vectors in ``k-1`` dimensions with ``w_r . w_s = delta_rs - 1/k``."""
    if k < 2:
        raise SpecError("k must be at least 2")
    return _simplex(k).copy()


@dataclass(frozen=True, eq=False)
class GroupVectors:
    """Raw simplex labels, the normalizing transform and the transformed labels.

    ``transformed[r] = D * (Q @ (raw[r] - t))``; ``D`` is stored as its
    diagonal.
    """

    spec: PartitionSpec
    raw: np.ndarray
    t: np.ndarray
    Q: np.ndarray
    D: np.ndarray
    transformed: np.ndarray

    @property
    def k(self) -> int:
        return self.spec.k

    def label_matrix(self, assignment) -> np.ndarray:
        """The n x (k-1) matrix whose row i is the label of vertex i's group."""
        return self.transformed[np.asarray(assignment)]


def size_transform(spec: PartitionSpec, raw: np.ndarray | None = None) -> GroupVectors:
    if raw is None:
        raw = regular_simplex(spec.k)
    raw = np.asarray(raw, dtype=float)
    if raw.shape != (spec.k, spec.k - 1):
        raise SpecError(f"expected {spec.k} simplex vectors of dimension {spec.k - 1}")
    sizes = np.asarray(spec.target_sizes, dtype=float)
    n = spec.n
    t = sizes @ raw / n
    centred = raw - t
    M = centred.T @ (sizes[:, None] * centred)
    delta, U = np.linalg.eigh(0.5 * (M + M.T))
    if delta.min() < 1e-10 * n:
        raise SpecError("degenerate target sizes: cannot normalize group vectors")
    Q = U.T
    D = delta**-0.5
    transformed = (centred @ Q.T) * D
    return GroupVectors(spec=spec, raw=raw, t=t, Q=Q, D=D, transformed=transformed)


def pair_eigenvalues(values: Sequence[float], D: Sequence[float]) -> np.ndarray:
    """Column ordering pairing the i-th smallest eigenvalue with the i-th smallest ``D``.

    Returns ``perm`` such that eigenvector column ``perm[a]`` belongs on
    axis ``a``. Ties keep ascending index order.
    """
    values = np.asarray(values, dtype=float)
    D = np.asarray(D, dtype=float)
    if values.shape != D.shape or values.ndim != 1:
        raise ValueError(f"length mismatch: {values.shape} eigenvalues vs {D.shape} scales")
    if np.any(D <= 0):
        raise ValueError("scale entries must be positive")
    perm = np.empty(values.size, dtype=np.int64)
    perm[np.argsort(D, kind="stable")] = np.argsort(values, kind="stable")
    return perm


def relaxed_cost(values: Sequence[float], D: Sequence[float]) -> float:
    """Relaxed cut size ``0.5 * sum(lam_i / D_i**2)`` of paired eigenvalues."""
    values = np.asarray(values, dtype=float)
    D = np.asarray(D, dtype=float)
    if values.shape != D.shape:
        raise ValueError("length mismatch")
    if np.any(D == 0):
        raise ValueError("zero scale entry")
    return float(0.5 * np.sum(values / D**2))
