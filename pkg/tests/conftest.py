import numpy as np
import pytest

from clusterpursuit.graph import SparseGraph, build_graph


def clique_edges(vertices):
    vs = list(vertices)
    return [(u, v) for i, u in enumerate(vs) for v in vs[i + 1:]]


def disjoint_cliques(*sizes):
    """Disjoint cliques laid out contiguously; returns (graph, list of clusters)."""
    edges, clusters, start = [], [], 0
    for m in sizes:
        block = range(start, start + m)
        edges += clique_edges(block)
        clusters.append(np.arange(start, start + m))
        start += m
    return build_graph(edges, start), clusters


def random_graph(n, p, rng, connected=False, weighted=False):
    while True:
        upper = np.triu(rng.random((n, n)) < p, 1)
        W = upper * (rng.uniform(0.5, 2.0, (n, n)) if weighted else 1.0)
        g = SparseGraph(W + W.T)
        if not connected or g.is_connected():
            return g


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def path3():
    return build_graph([(0, 1), (1, 2)], 3)


def dense_clusters(sizes, rng, p=0.8, weighted=True):
    """Disconnected random dense blocks, each internally connected."""
    import scipy.linalg as sla

    blocks = []
    for m in sizes:
        while True:
            U = np.triu(rng.random((m, m)) < p, 1)
            if weighted:
                U = U * rng.uniform(0.5, 2.0, (m, m))
            B = U + U.T
            if SparseGraph(B).is_connected():
                break
        blocks.append(B.astype(float))
    g = SparseGraph(sla.block_diag(*blocks))
    bounds = np.cumsum([0, *sizes])
    return g, [np.arange(a, b) for a, b in zip(bounds[:-1], bounds[1:])]


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda l: int(l.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
