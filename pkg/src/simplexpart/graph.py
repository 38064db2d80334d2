"""Undirected weighted graphs, Laplacian products, cut sizes and edge-list I/O."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import IO, Iterable, Sequence

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components
from scipy.spatial.distance import pdist


class GraphError(ValueError):
    """Invalid graph structure or invalid input to a graph operation."""


class EdgeListError(GraphError):
    """Malformed edge-list text."""

    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


class DisconnectedGraphError(GraphError):
    def __init__(self, msg: str = "graph is not connected"):
        super().__init__(msg)


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable undirected graph with strictly positive edge weights.

    Each undirected edge is stored once in ``(u, v, w)`` with ``u < v``.
    ``adjacency`` is the symmetric CSR matrix and ``degrees`` its row sums.
    """

    n: int
    u: np.ndarray
    v: np.ndarray
    w: np.ndarray
    adjacency: sp.csr_matrix = field(repr=False)
    degrees: np.ndarray = field(repr=False)

    @classmethod
    def from_edges(cls, n: int, u, v, w=None, *, check_duplicates: bool = True) -> "Graph":
        u = np.asarray(u, dtype=np.int64).ravel()
        v = np.asarray(v, dtype=np.int64).ravel()
        if w is None:
            w = np.ones(u.shape[0])
        w = np.asarray(w, dtype=float).ravel()
        if not (u.shape == v.shape == w.shape):
            raise GraphError("edge arrays must have equal length")
        if n < 0:
            raise GraphError("vertex count must be nonnegative")
        if u.size:
            if min(u.min(), v.min()) < 0 or max(u.max(), v.max()) >= n:
                raise GraphError(f"vertex id out of range for n={n}")
            if np.any(u == v):
                i = int(np.flatnonzero(u == v)[0])
                raise GraphError(f"self-loop at vertex {u[i]}")
            if not np.all(np.isfinite(w)) or np.any(w <= 0):
                raise GraphError("edge weights must be finite and strictly positive")
        lo, hi = np.minimum(u, v), np.maximum(u, v)
        if check_duplicates and lo.size:
            key = lo * n + hi
            if np.unique(key).size != key.size:
                raise GraphError("duplicate edge")
        rows = np.concatenate([lo, hi])
        cols = np.concatenate([hi, lo])
        A = sp.csr_matrix((np.concatenate([w, w]), (rows, cols)), shape=(n, n))
        A.sort_indices()
        degrees = np.asarray(A.sum(axis=1)).ravel()
        for arr in (lo, hi, w, degrees):
            arr.setflags(write=False)
        return cls(n=n, u=lo, v=hi, w=w, adjacency=A, degrees=degrees)

    @property
    def m(self) -> int:
        return int(self.u.size)

    @property
    def total_weight(self) -> float:
        return float(self.w.sum())

    def edges(self) -> Iterable[tuple[int, int, float]]:
        return zip(self.u.tolist(), self.v.tolist(), self.w.tolist())

    def laplacian(self) -> sp.csr_matrix:
        """Sparse ``L = D - A``."""
        return (sp.diags(self.degrees) - self.adjacency).tocsr()


@dataclass(frozen=True, eq=False)
class Partition:
    assignment: np.ndarray
    k: int
    sizes: tuple[int, ...]
    cut: float

    @classmethod
    def from_assignment(cls, g: Graph, assignment, k: int) -> "Partition":
        a = _check_assignment(g, assignment, k)
        sizes = tuple(int(c) for c in np.bincount(a, minlength=k))
        a.setflags(write=False)
        return cls(assignment=a, k=k, sizes=sizes, cut=_crossing_weight(g, a))

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "sizes": list(self.sizes),
            "cut": self.cut,
            "assignment": self.assignment.tolist(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _check_assignment(g: Graph, assignment, k: int) -> np.ndarray:
    a = np.array(assignment, dtype=np.int64).ravel()
    if a.shape[0] != g.n:
        raise GraphError(f"assignment has length {a.shape[0]}, graph has {g.n} vertices")
    if k < 1:
        raise GraphError("k must be positive")
    if a.size and (a.min() < 0 or a.max() >= k):
        raise GraphError(f"group index outside 0..{k - 1}")
    return a


def _crossing_weight(g: Graph, a: np.ndarray) -> float:
    return float(g.w[a[g.u] != a[g.v]].sum())


def cut_size(g: Graph, p: Partition) -> float:
    """Total weight of edges whose endpoints lie in different groups."""
    return _crossing_weight(g, _check_assignment(g, p.assignment, p.k))


def laplacian_apply(g: Graph, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape[0] != g.n or x.ndim > 2:
        raise GraphError(f"expected {g.n} rows, got shape {x.shape}")
    d = g.degrees if x.ndim == 1 else g.degrees[:, None]
    return d * x - g.adjacency @ x


def connected(g: Graph) -> bool:
    if g.n <= 1:
        return True
    ncomp, _ = connected_components(g.adjacency, directed=False)
    return ncomp == 1


def require_connected(g: Graph) -> None:
    if not connected(g):
        raise DisconnectedGraphError()


def load_edge_list(stream: IO[str] | Iterable[str], n: int | None = None) -> Graph:
    """Parse whitespace-separated ``u v [w]`` lines with 0-based ids.

    ``#`` starts a comment. The vertex count is ``1 + max id`` unless ``n``
    is given, in which case it must cover every id.
    """
    us: list[int] = []
    vs: list[int] = []
    ws: list[float] = []
    seen: set[tuple[int, int]] = set()
    for lineno, line in enumerate(stream, start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) not in (2, 3):
            raise EdgeListError(lineno, f"expected 'u v [w]', got {line!r}")
        try:
            a, b = int(parts[0]), int(parts[1])
            wt = float(parts[2]) if len(parts) == 3 else 1.0
        except ValueError:
            raise EdgeListError(lineno, f"cannot parse {line!r}") from None
        if a < 0 or b < 0:
            raise EdgeListError(lineno, "negative vertex id")
        if a == b:
            raise EdgeListError(lineno, f"self-loop at vertex {a}")
        if not np.isfinite(wt) or wt < 0:
            raise EdgeListError(lineno, f"invalid weight {parts[2]}")
        if wt == 0:
            raise EdgeListError(lineno, "zero weight (omit the edge instead)")
        key = (min(a, b), max(a, b))
        if key in seen:
            raise EdgeListError(lineno, f"duplicate edge {key[0]}-{key[1]}")
        seen.add(key)
        us.append(a)
        vs.append(b)
        ws.append(wt)
    nmax = 1 + max(max(us, default=-1), max(vs, default=-1))
    if n is None:
        n = nmax
    elif n < nmax:
        raise GraphError(f"vertex id {nmax - 1} exceeds n={n}")
    return Graph.from_edges(n, us, vs, ws, check_duplicates=False)


def read_edge_list(path, n: int | None = None) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return load_edge_list(fh, n=n)


def write_edge_list(g: Graph, stream: IO[str], weights: bool | None = None) -> None:
    """Write ``g`` in the edge-list format; weights are omitted if all are 1."""
    if weights is None:
        weights = bool(np.any(g.w != 1.0))
    stream.write(f"# n={g.n} m={g.m}\n")
    for a, b, wt in g.edges():
        stream.write(f"{a} {b} {wt!r}\n" if weights else f"{a} {b}\n")


def affinity_graph(points: Sequence[Sequence[float]] | np.ndarray, sigma: float) -> Graph:
    """Complete graph with Gaussian affinities ``exp(-|r_i - r_j|^2 / 2 sigma^2)``.

    Pairs whose affinity underflows to zero are left unconnected.
    """
    if not sigma > 0:
        raise GraphError("sigma must be positive")
    pts = np.asarray(points, dtype=float)
    if pts.ndim == 1:
        pts = pts[:, None]
    n = pts.shape[0]
    if n < 2:
        raise GraphError("need at least two points")
    w = np.exp(-pdist(pts, "sqeuclidean") / (2.0 * sigma * sigma))
    iu, ju = np.triu_indices(n, k=1)
    keep = w > 0
    return Graph.from_edges(n, iu[keep], ju[keep], w[keep], check_duplicates=False)
