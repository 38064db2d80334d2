"""Smallest nontrivial Laplacian eigenpairs.

The iterative solver is a thick-restart Lanczos iteration with full
reorthogonalization. Every basis vector is also orthogonalized against the
constant vector, so the trivial zero mode never enters the Krylov space.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph, GraphError, laplacian_apply, require_connected

DEFAULT_TOL = 1e-10
DENSE_LIMIT = 2000


class EigenConvergenceError(RuntimeError):
    def __init__(self, msg: str, values: np.ndarray, residuals: np.ndarray):
        super().__init__(f"{msg}; residuals={np.array2string(residuals, precision=3)}")
        self.values = values
        self.residuals = residuals


@dataclass(frozen=True, eq=False)
class EigenResult:
    values: np.ndarray
    vectors: np.ndarray
    residuals: np.ndarray
    matvecs: int = 0

    @property
    def count(self) -> int:
        return int(self.values.size)


def default_max_iter(count: int) -> int:
    return 20 * count + 200


def _check_count(g: Graph, count: int) -> None:
    if not 1 <= count <= g.n - 1:
        raise GraphError(f"count must lie in 1..{g.n - 1}, got {count}")


def _orthogonalize(r: np.ndarray, V: np.ndarray, ones: np.ndarray) -> np.ndarray:
    # two passes of classical Gram-Schmidt ("twice is enough")
    for _ in range(2):
        r = r - ones * (ones @ r)
        if V.shape[1]:
            r = r - V @ (V.T @ r)
    return r


def smallest_nontrivial_eigenpairs(
    g: Graph,
    count: int,
    tol: float = DEFAULT_TOL,
    *,
    max_iter: int | None = None,
    seed: int = 0,
    basis_size: int | None = None,
) -> EigenResult:
    """Eigenpairs ``2..count+1`` of the graph Laplacian, ascending.

    Parameters
    ----------
    g : Graph
        Connected graph.
    count : int
        Number of nontrivial eigenpairs wanted.
    tol : float
        Convergence requires ``|L x - lam x| <= tol * max(1, lam)`` for every
        returned pair.
    max_iter : int, optional
        Cap on restart cycles, default ``20 * count + 200``. Each cycle
        extends the Krylov basis to ``basis_size`` columns.
    seed : int
        Seed for the random starting vector.
    basis_size : int, optional
        Krylov basis size before a thick restart.

    Raises
    ------
    DisconnectedGraphError
        If ``g`` has more than one component.
    EigenConvergenceError
        If the residual criterion is not met within ``max_iter`` cycles.
    """
    require_connected(g)
    _check_count(g, count)
    n = g.n
    if max_iter is None:
        max_iter = default_max_iter(count)
    dim = n - 1  # dimension of the complement of the constant vector
    m = basis_size or max(2 * count + 20, 40)
    m = min(m, dim)
    keep = min(count + max(count, 8), m - 1) if m > count else count

    rng = np.random.default_rng(seed)
    ones = np.full(n, 1.0 / np.sqrt(n))
    # Gershgorin bound on the spectral radius, used to scale breakdown checks
    scale = max(2.0 * float(g.degrees.max()), 1.0)

    V = np.empty((n, m + 1))
    W = np.empty((n, m))

    def fresh(basis: np.ndarray) -> np.ndarray:
        r = _orthogonalize(rng.standard_normal(n), basis, ones)
        return r / np.linalg.norm(r)

    V[:, 0] = fresh(V[:, :0])
    j = 0  # columns of V with computed products
    matvecs = 0
    cycles = 0
    while True:
        cycles += 1
        while j < m:
            W[:, j] = laplacian_apply(g, V[:, j])
            matvecs += 1
            j += 1
            if j == dim:
                break
            r = _orthogonalize(W[:, j - 1], V[:, :j], ones)
            beta = np.linalg.norm(r)
            if beta <= 1e-10 * scale:
                # invariant subspace found; continue with a new direction
                V[:, j] = fresh(V[:, :j])
            else:
                V[:, j] = r / beta

        H = V[:, :j].T @ W[:, :j]
        theta, Y = np.linalg.eigh(0.5 * (H + H.T))
        nwant = min(count, j)
        X = V[:, :j] @ Y[:, :nwant]
        LX = W[:, :j] @ Y[:, :nwant]
        res = np.linalg.norm(LX - X * theta[:nwant], axis=0)
        done = nwant == count and np.all(res <= tol * np.maximum(1.0, theta[:nwant]))
        if done or j == dim:
            break
        if cycles >= max_iter:
            raise EigenConvergenceError(
                f"Lanczos did not converge in {cycles} restart cycles ({matvecs} Laplacian products)",
                theta[:nwant],
                res,
            )
        # thick restart: retain the lowest Ritz vectors plus the next Lanczos direction
        p = min(keep, j - 1)
        nxt = V[:, j].copy()
        V[:, :p] = V[:, :j] @ Y[:, :p]
        W[:, :p] = W[:, :j] @ Y[:, :p]
        V[:, p] = nxt
        j = p

    X = X - np.outer(ones, ones @ X)
    X /= np.linalg.norm(X, axis=0)
    res = np.linalg.norm(laplacian_apply(g, X) - X * theta[:count], axis=0)
    if not np.all(res <= tol * np.maximum(1.0, theta[:count])):
        raise EigenConvergenceError("Ritz vectors failed the residual check", theta[:count], res)
    return EigenResult(values=theta[:count].copy(), vectors=X, residuals=res, matvecs=matvecs)


def dense_eigen_oracle(g: Graph, count: int) -> EigenResult:
    """Full dense eigendecomposition; the trivial pair is dropped.

    Only for small graphs (``n <= 2000``). The graph need not be connected,
    in which case the returned values start with the extra zero modes.
    """
    if g.n > DENSE_LIMIT:
        raise GraphError(f"dense oracle limited to n <= {DENSE_LIMIT}, got {g.n}")
    _check_count(g, count)
    L = g.laplacian().toarray()
    lam, U = np.linalg.eigh(L)
    # drop the eigenvector most aligned with the constant vector
    ones = np.full(g.n, 1.0 / np.sqrt(g.n))
    triv = int(np.argmax(np.abs(ones @ U)))
    idx = [i for i in range(g.n) if i != triv][:count]
    vals, vecs = lam[idx], U[:, idx]
    res = np.linalg.norm(L @ vecs - vecs * vals, axis=0)
    return EigenResult(values=vals, vectors=vecs, residuals=res)
