import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clusterpursuit.diffusion import DiffusionConfig, rw_thresh
from clusterpursuit.errors import BadParametersError, BadSparsityError, EmptyCutError, FullCutError
from clusterpursuit.generate import gen_sbm, family_params
from clusterpursuit.metrics import jaccard
from clusterpursuit.pursuit import (
    PursuitConfig,
    cluster_pursuit,
    cluster_pursuit_sweep,
    default_sp_iters,
    threshold_signed_support,
)

from conftest import dense_clusters, disjoint_cliques, random_graph
from oracles import perturbations, unique_signed_solution


def test_config_validation():
    with pytest.raises(BadParametersError):
        PursuitConfig(3, R=1.0)
    with pytest.raises(BadSparsityError):
        PursuitConfig(0)
    assert default_sp_iters(1000) == 10 and default_sp_iters(1024) == 10 and default_sp_iters(1025) == 11


def test_perfect_cut_is_fixed_point():
    g, (C1, _) = disjoint_cliques(8, 8)
    found, x = cluster_pursuit(g, C1, PursuitConfig(2), return_coefficients=True)
    np.testing.assert_array_equal(found, C1)
    assert not x.any()


def test_swap_one_each_way():
    g, (C1, C2) = disjoint_cliques(8, 8)
    omega = np.append(np.delete(C1, 3), C2[0])
    assert unique_signed_solution(g.laplacian_dense(), perturbations(C1, 16, 2), C1, 2).all()
    np.testing.assert_array_equal(cluster_pursuit(g, omega, PursuitConfig(2, 0.5)), C1)


@pytest.mark.parametrize("sizes", [(3, 4, 5), (5, 7), (4, 8, 8), (6, 6, 8), (7, 13)])
def test_exhaustive_recovery_on_cliques(sizes):
    g, clusters = disjoint_cliques(*sizes)
    C1 = clusters[0]
    s = (C1.size - 1) // 2
    omegas = perturbations(C1, g.n, s)
    assert unique_signed_solution(g.laplacian_dense(), omegas, C1, s).all()
    for om in omegas:
        np.testing.assert_array_equal(cluster_pursuit(g, np.flatnonzero(om), PursuitConfig(s)), C1)


def test_uniqueness_on_random_dense_clusters(rng):
    for sizes in [(5, 7), (6, 6, 8), (7, 13)]:
        g, clusters = dense_clusters(sizes, rng)
        C1 = clusters[0]
        s = (C1.size - 1) // 2
        assert unique_signed_solution(g.laplacian_dense(), perturbations(C1, g.n, s), C1, s).all()


@st.composite
def signed_sets_with_noise(draw):
    n = draw(st.integers(2, 50))
    labels = np.array(draw(st.lists(st.sampled_from([-1, 0, 1]), min_size=n, max_size=n)))
    scale = draw(st.sampled_from([0.05, 0.3, 0.8, 2.0]))
    seed = draw(st.integers(0, 2**31))
    noise = np.random.default_rng(seed).standard_normal(n) * scale
    return labels, noise


@given(signed_sets_with_noise())
@settings(max_examples=300, deadline=None)
def test_threshold_support_error_bound(case):
    labels, noise = case
    T1, T2 = np.flatnonzero(labels == 1), np.flatnonzero(labels == -1)
    v = labels + noise
    D = np.linalg.norm(noise)
    W, U = threshold_signed_support(v, 0.5)
    err = np.setxor1d(T1, W).size + np.setxor1d(T2, U).size
    assert err <= 4 * D**2 + 1e-12


def test_threshold_is_strict():
    W, U = threshold_signed_support(np.array([0.5, -0.5, 0.51, -0.51]), 0.5)
    assert list(W) == [2] and list(U) == [3]


def test_set_identity_and_errors(rng):
    g = random_graph(60, 0.1, rng, connected=True)
    omega = np.arange(20)
    found, x = cluster_pursuit(g, omega, PursuitConfig(6), return_coefficients=True)
    W, U = threshold_signed_support(x, 0.5)
    np.testing.assert_array_equal(found, np.union1d(np.setdiff1d(omega, W), U))
    assert found.max(initial=0) < g.n
    with pytest.raises(EmptyCutError):
        cluster_pursuit(g, [], PursuitConfig(2))
    with pytest.raises(FullCutError):
        cluster_pursuit(g, np.arange(60), PursuitConfig(2))
    with pytest.raises(BadSparsityError):
        cluster_pursuit(g, omega, PursuitConfig(60))


def test_sweep_keeps_lowest_conductance(rng):
    g, (C1, C2) = disjoint_cliques(8, 8)
    omega = np.append(np.delete(C1, 3), C2[0])
    best, best_s, scores = cluster_pursuit_sweep(g, omega, [1, 2, 3])
    assert scores[best_s] == min(v for v in scores.values() if v == v)
    np.testing.assert_array_equal(best, C1)


def test_improves_rwthresh_on_block_model():
    n1, improved = 200, 0
    for trial in range(20):
        g, truth = gen_sbm(family_params(1, n1, seed=1000 + trial))
        C1 = truth.cluster(0)
        gamma = np.random.default_rng(trial).choice(C1, 2, replace=False)
        omega = rw_thresh(g, gamma, DiffusionConfig(n1, 0.13, 3))
        found = cluster_pursuit(g, omega, PursuitConfig(52))
        improved += jaccard(found, C1) > jaccard(omega, C1)
    assert improved >= 18
