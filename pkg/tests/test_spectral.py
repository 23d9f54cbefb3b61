import math
import random

import numpy as np
import pytest

from spectral_lab import (
    Graph,
    GraphError,
    SolverError,
    adjacency_matrix,
    algebraic_connectivity,
    as_graph,
    bipartite_cycle,
    build_h2n,
    complement,
    complete_bipartite,
    cycle_graph,
    enumerate_cubic_bipartite,
    laplacian,
    path_fiedler_closed_form,
    path_fiedler_vector,
    path_graph,
    path_laplacian_eigenvalues,
    random_cubic_bipartite,
    rayleigh_quotient,
    spectral_gap,
    symmetric_eigen,
    symmetric_fiedler_h2n,
)
from oracles import exact_symmetric_eigenvalues


def _intmat(m):
    return [[int(round(v)) for v in row] for row in m]


def _small_corpus():
    """Connected graphs on <= 16 vertices used across invariant tests."""
    graphs = [path_graph(n) for n in (2, 3, 5, 8, 13, 16)]
    graphs += [cycle_graph(n) for n in (3, 5, 6, 8)]
    graphs += [complete_bipartite(3, 3).to_graph(), bipartite_cycle(4).to_graph(),
               build_h2n(6).to_graph(), build_h2n(7).to_graph(),
               build_h2n(8).to_graph()]
    rng = random.Random(77)
    graphs += [random_cubic_bipartite(rng.choice([5, 6, 7]), rng).to_graph()
               for _ in range(5)]
    return graphs


def test_laplacian_examples():
    assert np.array_equal(laplacian(path_graph(2)), [[1, -1], [-1, 1]])
    k33 = laplacian(complete_bipartite(3, 3))
    assert np.array_equal(np.diag(k33), [3] * 6)
    h = laplacian(build_h2n(6))
    assert np.allclose(h.sum(axis=1), 0)
    assert np.array_equal(h, h.T)


def test_symmetric_eigen_small():
    w, _ = symmetric_eigen(laplacian(path_graph(2)))
    assert np.allclose(w, [0, 2], atol=1e-12)
    w, _ = symmetric_eigen(laplacian(path_graph(3)))
    assert np.allclose(w, [0, 1, 3], atol=1e-12)  # roots of l(l-1)(l-3)


@pytest.mark.parametrize("n", [2, 3, 4, 7, 12, 25, 40])
def test_path_spectrum_closed_form(n):
    w, _ = symmetric_eigen(laplacian(path_graph(n)))
    assert np.allclose(w, path_laplacian_eigenvalues(n), atol=1e-10)


def test_symmetric_eigen_contract():
    rng = np.random.default_rng(0)
    for order in (2, 5, 9, 17):
        m = rng.normal(size=(order, order))
        m = m + m.T
        w, v = symmetric_eigen(m)
        assert np.all(np.diff(w) >= -1e-12)
        assert np.max(np.abs(v.T @ v - np.eye(order))) <= 1e-8
        sym = (m + m.T) / 2
        assert np.max(np.abs(sym @ v - v * w)) <= 1e-10 * order * np.max(np.abs(sym))


def test_symmetric_eigen_rejects_bad_input():
    with pytest.raises(ValueError):
        symmetric_eigen(np.array([[0.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(ValueError):
        symmetric_eigen(np.zeros((2, 3)))


def test_eigensolver_agrees_with_charpoly_oracle():
    graphs = [path_graph(n) for n in (2, 3, 4, 5, 6)]
    graphs += [cycle_graph(n) for n in (3, 4, 5, 6)]
    graphs += [complete_bipartite(3, 3).to_graph(),
               complete_bipartite(2, 3).to_graph()]
    rng = random.Random(8)
    for g in graphs:
        for mat in (laplacian(g), adjacency_matrix(g)):
            if mat.shape[0] > 6:
                continue
            w, _ = symmetric_eigen(mat)
            exact = exact_symmetric_eigenvalues(_intmat(mat))
            assert np.max(np.abs(w - np.array(exact))) <= 1e-8
    for _ in range(15):
        k = rng.randint(2, 6)
        m = [[0] * k for _ in range(k)]
        for i in range(k):
            for j in range(i, k):
                m[i][j] = m[j][i] = rng.randint(-4, 4)
        w, _ = symmetric_eigen(np.array(m, dtype=float))
        exact = exact_symmetric_eigenvalues(m)
        assert np.max(np.abs(w - np.array(exact))) <= 1e-8


@pytest.mark.parametrize("n", list(range(2, 30)) + [50, 100])
def test_path_algebraic_connectivity_closed_form(n):
    res = algebraic_connectivity(path_graph(n))
    assert abs(res.value - path_fiedler_closed_form(n)) <= 1e-8


def test_k33_connectivity():
    res = algebraic_connectivity(complete_bipartite(3, 3))
    # Laplacian of K33 has eigenvalues {0, 3,3,3,3, 6}
    assert abs(res.value - 3.0) <= 1e-9
    assert res.multiplicity == 4


def test_disconnected_graph_zero():
    res = algebraic_connectivity(Graph.from_edges(4, [(0, 1), (2, 3)]))
    assert abs(res.value) <= 1e-12
    assert abs(float(res.vector.sum())) <= 1e-9  # still orthogonal to ones


def test_fiedler_vector_contract():
    for g in _small_corpus():
        res = algebraic_connectivity(g)
        n = as_graph(g).n
        assert abs(np.linalg.norm(res.vector) - 1.0) <= 1e-9
        assert abs(float(res.vector.sum())) <= 1e-8
        assert res.residual <= 1e-8 * n
        i = int(np.argmax(np.abs(res.vector)))
        assert res.vector[i] > 0


def test_rayleigh_quotient():
    g = build_h2n(6)
    lap = laplacian(g)
    res = algebraic_connectivity(g)
    assert abs(rayleigh_quotient(lap, res.vector) - res.value) <= 1e-10
    assert rayleigh_quotient(lap, np.ones(12)) == 0.0
    assert rayleigh_quotient(laplacian(path_graph(2)), [1.0, -1.0]) == 2.0
    with pytest.raises(ValueError):
        rayleigh_quotient(lap, np.zeros(12))


def test_rayleigh_variational_lower_bound():
    rng = np.random.default_rng(5)
    for g in (path_graph(9), build_h2n(6), cycle_graph(7)):
        lap = laplacian(g)
        a = algebraic_connectivity(g).value
        n = lap.shape[0]
        for _ in range(50):
            z = rng.normal(size=n)
            z -= z.mean()
            assert rayleigh_quotient(lap, z) >= a - 1e-9


def test_spectral_gap():
    assert abs(spectral_gap(complete_bipartite(3, 3)) - 3.0) <= 1e-9
    h = build_h2n(6)
    assert abs(spectral_gap(h) - algebraic_connectivity(h).value) <= 1e-9
    c6 = cycle_graph(6)
    assert abs(spectral_gap(c6) - algebraic_connectivity(c6).value) <= 1e-9
    with pytest.raises(GraphError):
        spectral_gap(path_graph(3))


def test_path_closed_form_values():
    assert path_fiedler_closed_form(2) == 2.0
    assert abs(path_fiedler_closed_form(3) - 1.0) <= 1e-15
    assert abs(path_fiedler_closed_form(4) - (2 - math.sqrt(2))) <= 1e-15


def test_path_fiedler_vector_is_exact_eigenvector():
    for n in (2, 5, 17, 200, 700):
        lap = laplacian(path_graph(n))
        x = path_fiedler_vector(n)
        lam = path_fiedler_closed_form(n)
        assert np.max(np.abs(lap @ x - lam * x)) <= 1e-12
        assert abs(rayleigh_quotient(lap, x) - lam) <= 1e-12


@pytest.mark.parametrize("n", [6, 10])
def test_symmetric_fiedler_h2n(n):
    g = build_h2n(n)
    z = symmetric_fiedler_h2n(g)
    a = algebraic_connectivity(g).value
    lap = laplacian(g)
    assert np.max(np.abs(lap @ z - a * z)) <= 1e-8
    assert np.max(np.abs(z[:n] - z[n:])) <= 1e-8
    assert abs(rayleigh_quotient(lap, z) - a) <= 1e-9


def test_symmetric_fiedler_rejects_other_graphs():
    with pytest.raises(GraphError):
        symmetric_fiedler_h2n(complete_bipartite(3, 3))


def test_neighborhood_sum_identity_cubic():
    graphs = [build_h2n(n) for n in (6, 7, 9, 12)]
    graphs += list(enumerate_cubic_bipartite(6))
    rng = random.Random(3)
    graphs += [random_cubic_bipartite(7, rng) for _ in range(3)]
    for g in graphs:
        flat = g.to_graph()
        res = algebraic_connectivity(flat)
        x = res.vector
        adj = flat.adjacency
        for u in range(flat.n):
            lhs = (3.0 - res.value) * x[u]
            rhs = sum(x[w] for w in adj[u])
            assert abs(lhs - rhs) <= 1e-8


def test_complement_identity():
    corpus = _small_corpus() + [Graph.from_edges(4, [(0, 1), (2, 3)])]
    for g in corpus:
        gg = as_graph(g)
        if gg.n > 16:
            continue
        a = algebraic_connectivity(gg).value
        w, _ = symmetric_eigen(laplacian(complement(gg)))
        assert abs(a + float(w[-1]) - gg.n) <= 1e-8


def test_degree_bound():
    for g in _small_corpus():
        gg = as_graph(g)
        a = algebraic_connectivity(gg).value
        assert a <= min(gg.degrees()) + 1e-9


def test_fiedler_sublevel_sets_connected():
    for g in _small_corpus():
        gg = as_graph(g)
        res = algebraic_connectivity(gg)
        if res.multiplicity > 1:
            continue
        x = res.vector
        for r in (0.0, 1.0 / gg.n, 2.0 / gg.n):
            for keep in ({v for v in range(gg.n) if x[v] >= -r},
                         {v for v in range(gg.n) if x[v] <= r}):
                sub_edges = [(i, j) for i, j in gg.edges
                             if i in keep and j in keep]
                idx = {v: k for k, v in enumerate(sorted(keep))}
                sub = Graph.from_edges(len(keep),
                                       [(idx[i], idx[j]) for i, j in sub_edges])
                from spectral_lab import is_connected
                assert is_connected(sub)


@pytest.mark.parametrize("n", list(range(2, 101)))
def test_path_fiedler_skew_symmetry(n):
    x = algebraic_connectivity(path_graph(n)).vector
    assert np.max(np.abs(x + x[::-1])) <= 1e-8


def test_sandwich_sample():
    for n in (6, 7, 10, 20, 41, 80):
        a_h = algebraic_connectivity(build_h2n(n)).value
        assert path_fiedler_closed_form(n) - 1e-9 <= a_h
        assert a_h <= path_fiedler_closed_form(n - 4) + 1e-9


def test_empty_graph_rejected():
    with pytest.raises(GraphError):
        algebraic_connectivity(Graph(1, frozenset()))
