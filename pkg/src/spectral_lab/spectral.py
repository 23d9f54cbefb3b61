"""Laplacian and adjacency spectra: algebraic connectivity, Fiedler vectors,
spectral gap of regular graphs, and closed-form path facts."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graphs import BipartiteGraph, GraphError, as_graph, build_h2n

# Contract tolerances (see tests for the matching assertions).
EIG_RESIDUAL_FACTOR = 1e-10      # per eigenpair, times order * max|entry|
RESULT_RESIDUAL_FACTOR = 1e-8    # SpectralResult residual, times order
ORTHONORMALITY_TOL = 1e-8
MULTIPLICITY_RTOL = 1e-6
GAP_IDENTITY_TOL = 1e-9


class SolverError(RuntimeError):
    """Eigensolver failed to converge or to meet its accuracy contract."""


@dataclass(frozen=True)
class SpectralResult:
    """Algebraic connectivity with a unit Fiedler vector.

    vector is orthogonal to the all-ones vector and sign-normalized so its
    first largest-magnitude entry is positive; multiplicity counts the
    eigenvalues within tolerance of value; residual is ||L x - a x||_inf.
    """

    value: float
    vector: np.ndarray
    multiplicity: int
    residual: float


def laplacian(g) -> np.ndarray:
    """L = D - A as a dense symmetric float matrix."""
    graph = as_graph(g)
    mat = np.zeros((graph.n, graph.n))
    for i, j in graph.edges:
        mat[i, j] = mat[j, i] = -1.0
        mat[i, i] += 1.0
        mat[j, j] += 1.0
    return mat


def adjacency_matrix(g) -> np.ndarray:
    graph = as_graph(g)
    mat = np.zeros((graph.n, graph.n))
    for i, j in graph.edges:
        mat[i, j] = mat[j, i] = 1.0
    return mat


def symmetric_eigen(m: np.ndarray):
    """Full eigendecomposition of a symmetric matrix.

    Returns (eigenvalues ascending, orthonormal eigenvector columns) and
    verifies the solution: per-pair residual below EIG_RESIDUAL_FACTOR *
    order * max|entry| and orthonormality to ORTHONORMALITY_TOL. Any failure,
    including non-convergence, raises SolverError rather than degrading
    silently.
    """
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    order = m.shape[0]
    scale = float(np.max(np.abs(m))) if order else 0.0
    if order and float(np.max(np.abs(m - m.T))) > 1e-12 * max(scale, 1.0):
        raise ValueError("matrix is not symmetric")
    m = (m + m.T) / 2.0
    try:
        w, v = np.linalg.eigh(m)
    except np.linalg.LinAlgError as exc:
        raise SolverError(f"eigensolver did not converge: {exc}") from exc
    if order:
        resid = float(np.max(np.abs(m @ v - v * w)))
        bound = EIG_RESIDUAL_FACTOR * order * max(scale, 1e-300)
        if resid > bound:
            raise SolverError(f"eigenpair residual {resid:.3e} exceeds {bound:.3e}")
        ortho = float(np.max(np.abs(v.T @ v - np.eye(order))))
        if ortho > ORTHONORMALITY_TOL:
            raise SolverError(f"eigenvectors not orthonormal ({ortho:.3e})")
    return w, v


def _normalize_sign(x: np.ndarray) -> np.ndarray:
    i = int(np.argmax(np.abs(x)))
    return -x if x[i] < 0 else x


def algebraic_connectivity(g) -> SpectralResult:
    """Second-smallest Laplacian eigenvalue with a unit Fiedler vector."""
    graph = as_graph(g)
    if graph.n < 2:
        raise GraphError(f"need at least 2 vertices, got {graph.n}")
    lap = laplacian(graph)
    w, v = symmetric_eigen(lap)
    value = float(w[1])
    tol = MULTIPLICITY_RTOL * max(1.0, abs(value))
    cluster = np.nonzero(np.abs(w - value) <= tol)[0]
    multiplicity = int(cluster.size)
    ones = np.ones(graph.n) / math.sqrt(graph.n)
    vector = None
    for idx in cluster:
        cand = v[:, idx] - (v[:, idx] @ ones) * ones
        norm = float(np.linalg.norm(cand))
        if norm > 1e-8:
            vector = cand / norm
            break
    if vector is None:
        raise SolverError("no Fiedler vector orthogonal to the ones vector")
    vector = _normalize_sign(vector)
    residual = float(np.max(np.abs(lap @ vector - value * vector)))
    if residual > RESULT_RESIDUAL_FACTOR * graph.n:
        raise SolverError(f"Fiedler residual {residual:.3e} too large")
    return SpectralResult(value, vector, multiplicity, residual)


def rayleigh_quotient(lap: np.ndarray, z) -> float:
    z = np.asarray(z, dtype=float)
    denom = float(z @ z)
    if denom == 0.0:
        raise ValueError("Rayleigh quotient undefined for the zero vector")
    return float(z @ lap @ z) / denom


def spectral_gap(g) -> float:
    """Difference of the two largest adjacency eigenvalues of a regular graph."""
    graph = as_graph(g)
    if graph.n < 2:
        raise GraphError(f"need at least 2 vertices, got {graph.n}")
    degs = graph.degrees()
    if len(set(degs)) > 1:
        raise GraphError(f"graph is not regular (degrees {sorted(set(degs))})")
    w, _ = symmetric_eigen(adjacency_matrix(graph))
    return float(w[-1] - w[-2])


def path_fiedler_closed_form(n: int) -> float:
    """a(P_n) = 2 - 2 cos(pi/n)."""
    if n < 2:
        raise GraphError(f"path requires n >= 2, got {n}")
    return 2.0 - 2.0 * math.cos(math.pi / n)


def path_laplacian_eigenvalues(n: int) -> np.ndarray:
    """The path Laplacian spectrum 2 - 2 cos(pi j / n), j = 0..n-1, ascending."""
    if n < 1:
        raise GraphError(f"path requires n >= 1, got {n}")
    return 2.0 - 2.0 * np.cos(np.pi * np.arange(n) / n)


def path_fiedler_vector(n: int) -> np.ndarray:
    """Exact unit Fiedler vector of P_n: x_i = cos(pi (2i+1) / (2n))."""
    if n < 2:
        raise GraphError(f"path requires n >= 2, got {n}")
    x = np.cos(np.pi * (2.0 * np.arange(n) + 1.0) / (2.0 * n))
    return _normalize_sign(x / np.linalg.norm(x))


def symmetric_fiedler_h2n(g: BipartiteGraph) -> np.ndarray:
    """A unit Fiedler vector of H_2n taking equal values on u_i and v_i.

    Computed by symmetrizing any Fiedler vector x with its part-exchanged
    copy y (y_{u_i} = x_{v_i}, y_{v_i} = x_{u_i}); part exchange is an
    automorphism of H_2n, so x + y stays in the eigenspace.
    """
    n = g.n_left
    if g.edges != build_h2n(n).edges or g.n_right != n:
        raise GraphError("input is not the H_2n chain graph as constructed here")
    result = algebraic_connectivity(g)
    x = result.vector
    y = np.concatenate([x[n:], x[:n]])
    z = x + y
    norm = float(np.linalg.norm(z))
    if norm < 1e-8:
        x = -x
        y = np.concatenate([x[n:], x[:n]])
        z = x + y
        norm = float(np.linalg.norm(z))
        if norm < 1e-8:
            raise SolverError("symmetrized Fiedler vector vanished")
    z = _normalize_sign(z / norm)
    lap = laplacian(g)
    residual = float(np.max(np.abs(lap @ z - result.value * z)))
    if residual > RESULT_RESIDUAL_FACTOR * g.vertex_count:
        raise SolverError(f"symmetric Fiedler residual {residual:.3e} too large")
    if float(np.max(np.abs(z[:n] - z[n:]))) > 1e-8:
        raise SolverError("part symmetry z_u = z_v violated")
    return z
