import numpy as np
import pytest

from simplexpart.graph import Graph

ACCEPTANCE_LINES: list[str] = []


def random_connected_graph(rng, n, extra=None, weighted=False):
    """Random spanning tree plus ``extra`` random chords."""
    perm = rng.permutation(n)
    parents = [perm[rng.integers(i)] for i in range(1, n)]
    edges = {tuple(sorted((int(perm[i]), int(p)))) for i, p in zip(range(1, n), parents)}
    if extra is None:
        extra = 2 * n
    for _ in range(extra):
        a, b = rng.choice(n, 2, replace=False)
        edges.add((int(min(a, b)), int(max(a, b))))
    u, v = np.array(sorted(edges)).T
    w = rng.uniform(0.5, 2.0, u.size) if weighted else None
    return Graph.from_edges(n, u, v, w)


def random_assignment(rng, sizes):
    return rng.permutation(np.repeat(np.arange(len(sizes)), sizes))


def random_sizes(rng, k, n_max=60):
    n = int(rng.integers(2 * k, n_max + 1))
    cuts = np.sort(rng.choice(np.arange(1, n), k - 1, replace=False))
    return tuple(int(s) for s in np.diff(np.concatenate([[0], cuts, [n]])))


def path_graph(n):
    return Graph.from_edges(n, range(n - 1), range(1, n))


def complete_graph(n):
    iu, ju = np.triu_indices(n, 1)
    return Graph.from_edges(n, iu, ju)


def two_cliques(m=5):
    iu, ju = np.triu_indices(m, 1)
    u = np.concatenate([iu, iu + m, [m - 1]])
    v = np.concatenate([ju, ju + m, [m]])
    return Graph.from_edges(2 * m, u, v)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
