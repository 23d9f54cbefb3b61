"""Connectivity-decreasing 2-edge swaps on bipartite graphs, the equality-case
certificate vector, and a monotone descent search over cubic bipartite graphs."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass

import numpy as np

from .graph6 import encode_graph6
from .graphs import (
    BipartiteGraph,
    GraphError,
    IndependentEdgePair,
    independent_edge_pairs,
    is_connected,
)
from .spectral import algebraic_connectivity, laplacian, rayleigh_quotient

STRICT_TAU = 1e-9        # open-inequality margin for x_{u1} > x_{u2}
EQUALITY_TOL = 1e-9      # |x_{v1} - x_{v2}| below this is the equality case
DECREASE_RTOL = 1e-12    # required relative decrease per descent step

TERMINAL_NO_SWAP = "no_qualifying_swap"
TERMINAL_MAX_ITER = "max_iterations"
TERMINAL_TIE = "numerical_tie"


@dataclass(frozen=True)
class SwapCandidate:
    """An oriented independent pair qualifying (or not) under the swap rule.

    The pair's first edge plays (u1, v1) and the second (u2, v2); u_part
    names which bipartition side takes the u role ("left" or "right").
    Qualification requires fiedler_u_gap > STRICT_TAU, fiedler_v_gap <= 0,
    equal v-degrees, and a connected swap result.
    """

    pair: IndependentEdgePair
    u_part: str
    fiedler_u_gap: float
    fiedler_v_gap: float
    degree_ok: bool
    result_connected: bool

    def qualifies(self) -> bool:
        return (self.fiedler_u_gap > STRICT_TAU
                and self.fiedler_v_gap <= 0.0
                and self.degree_ok
                and self.result_connected)

    def predicted_change(self) -> float:
        """Quadratic-form change of the strict case: 2 (u-gap) (v-gap)."""
        return 2.0 * self.fiedler_u_gap * self.fiedler_v_gap

    def role_vertices(self, g: BipartiteGraph):
        """Flattened indices (u1, u2, v1, v2) of the lemma roles."""
        off = g.n_left
        (a1, b1), (a2, b2) = self.pair.e1, self.pair.e2
        if self.u_part == "left":
            return a1, a2, off + b1, off + b2
        return off + b1, off + b2, a1, a2


def swap_edges(g: BipartiteGraph, pair: IndependentEdgePair) -> BipartiteGraph:
    """Replace edges (u1,v1),(u2,v2) by (u1,v2),(u2,v1).

    Requires a genuine independent pair of g; preserves the degree sequence
    and is an involution.
    """
    (u1, v1), (u2, v2) = pair.e1, pair.e2
    if pair.e1 not in g.edges or pair.e2 not in g.edges:
        raise GraphError("pair edges are not edges of the graph")
    if u1 == u2 or v1 == v2:
        raise GraphError("pair endpoints are not four distinct vertices")
    if (u1, v2) in g.edges or (u2, v1) in g.edges:
        raise GraphError("cross edges present: pair is not independent")
    edges = set(g.edges)
    edges.discard(pair.e1)
    edges.discard(pair.e2)
    edges.add((u1, v2))
    edges.add((u2, v1))
    return BipartiteGraph(g.n_left, g.n_right, frozenset(edges))


def _orientations(pair: IndependentEdgePair):
    yield pair, "left"
    yield pair, "right"
    flipped = IndependentEdgePair(pair.e2, pair.e1)
    yield flipped, "left"
    yield flipped, "right"


def scored_candidates(g: BipartiteGraph, x: np.ndarray):
    """Every independent pair in every orientation, scored but unfiltered,
    in deterministic order."""
    degs = g.degrees()
    out = []
    for pair in independent_edge_pairs(g):
        connected = is_connected(swap_edges(g, pair))
        for oriented, u_part in _orientations(pair):
            out.append(_score(g, oriented, u_part, x, degs, connected))
    return tuple(out)


def find_qualifying_swaps(g: BipartiteGraph, x: np.ndarray):
    """All oriented swap candidates satisfying the decrease rule for the
    Fiedler vector x (flattened vertex order), in deterministic order."""
    return tuple(c for c in scored_candidates(g, x) if c.qualifies())


def _score(g, pair, u_part, x, degs, connected) -> SwapCandidate:
    off = g.n_left
    (a1, b1), (a2, b2) = pair.e1, pair.e2
    if u_part == "left":
        u_gap = float(x[a1] - x[a2])
        v_gap = float(x[off + b1] - x[off + b2])
        degree_ok = degs[off + b1] == degs[off + b2]
    else:
        u_gap = float(x[off + b1] - x[off + b2])
        v_gap = float(x[a1] - x[a2])
        degree_ok = degs[a1] == degs[a2]
    return SwapCandidate(pair, u_part, u_gap, v_gap, degree_ok, connected)


def find_equality_candidates(g: BipartiteGraph, x: np.ndarray):
    """Oriented pairs in the equality case |x_{v1} - x_{v2}| <= EQUALITY_TOL
    with a strict u-side gap; diagnostic input for the certificate."""
    return tuple(c for c in scored_candidates(g, x)
                 if c.degree_ok and c.fiedler_u_gap > STRICT_TAU
                 and abs(c.fiedler_v_gap) <= EQUALITY_TOL)


def equality_case_certificate(g: BipartiteGraph, pair: IndependentEdgePair,
                              x: np.ndarray, k: int, u_part: str = "left"):
    """Perturbation vector of the equality case and its Rayleigh quotient on
    the swapped graph's Laplacian.

    z copies x except z_{v1,v2} = x_{v1} -+ (x_{u1} - x_{u2})/(k - a); the
    construction keeps z orthogonal to the ones vector and the quotient
    certifies a(G') < a(G).
    """
    swapped = swap_edges(g, pair)
    degs = g.degrees()
    cand = _score(g, pair, u_part, x, degs, is_connected(swapped))
    if abs(cand.fiedler_v_gap) > EQUALITY_TOL:
        raise ValueError(
            f"not an equality case: |v gap| = {abs(cand.fiedler_v_gap):.3e}")
    if not (cand.fiedler_u_gap > 0.0):
        raise ValueError("requires x_{u1} > x_{u2}")
    if not cand.degree_ok:
        raise ValueError("v-side degrees differ")
    x = np.asarray(x, dtype=float)
    lap = laplacian(g)
    a_value = rayleigh_quotient(lap, x)
    if float(np.max(np.abs(lap @ x - a_value * x))) > 1e-6 * g.vertex_count:
        raise ValueError("x is not an eigenvector of the Laplacian")
    if a_value >= k:
        raise ValueError(f"requires a(G) < k, got a={a_value:.6f}, k={k}")
    u1, u2, v1, v2 = cand.role_vertices(g)
    if degs[v1] != k:
        raise ValueError(f"k={k} does not match the common v-degree {degs[v1]}")
    delta = (x[u2] - x[u1]) / (k - a_value)
    z = x.copy()
    z[v1] = x[v1] + delta
    z[v2] = x[v1] - delta
    if abs(float(z.sum())) > 1e-9 * g.vertex_count:
        raise ValueError("perturbed vector is not orthogonal to ones")
    quotient = rayleigh_quotient(laplacian(swapped), z)
    return z, quotient


@dataclass(frozen=True)
class DescentStep:
    graph6: str
    a_value: float
    swap: dict | None   # {"removed": [...], "added": [...], "u_part": ...}


@dataclass(frozen=True)
class DescentTrace:
    steps: tuple
    terminal_reason: str

    def jsonl(self) -> str:
        lines = [json.dumps({"graph6": s.graph6, "a": s.a_value, "swap": s.swap})
                 for s in self.steps]
        lines.append(json.dumps({"terminal_reason": self.terminal_reason}))
        return "\n".join(lines) + "\n"


def _swap_description(cand: SwapCandidate) -> dict:
    (u1, v1), (u2, v2) = cand.pair.e1, cand.pair.e2
    return {
        "removed": [[u1, v1], [u2, v2]],
        "added": [[u1, v2], [u2, v1]],
        "u_part": cand.u_part,
    }


def descend(g0: BipartiteGraph, max_iter: int = 100) -> DescentTrace:
    """Apply the best qualifying swap until none remains.

    Best means most negative predicted change, ties broken lexicographically
    by pair and orientation. Every accepted step is re-verified to strictly
    decrease the algebraic connectivity; a non-improving step terminates the
    trace with reason numerical_tie instead of being recorded.
    """
    if not (is_connected(g0) and g0.is_cubic()):
        raise GraphError("descent expects a connected cubic bipartite graph")
    g = g0
    result = algebraic_connectivity(g)
    steps = [DescentStep(encode_graph6(g), result.value, None)]
    terminal = TERMINAL_MAX_ITER
    while len(steps) - 1 < max_iter:
        candidates = find_qualifying_swaps(g, result.vector)
        if not candidates:
            terminal = TERMINAL_NO_SWAP
            break
        order = {"left": 0, "right": 1}
        best = min(candidates,
                   key=lambda c: (c.predicted_change(), c.pair.e1, c.pair.e2,
                                  order[c.u_part]))
        nxt = swap_edges(g, best.pair)
        nxt_result = algebraic_connectivity(nxt)
        if not nxt_result.value < result.value - DECREASE_RTOL * abs(result.value):
            terminal = TERMINAL_TIE
            break
        g, result = nxt, nxt_result
        steps.append(DescentStep(encode_graph6(g), result.value,
                                 _swap_description(best)))
    return DescentTrace(tuple(steps), terminal)


def random_cubic_bipartite(n: int, rng: random.Random,
                           max_tries: int = 10000) -> BipartiteGraph:
    """Superimpose three random perfect matchings; reject multi-edges and
    disconnected results."""
    if n < 4:
        raise GraphError(f"need n >= 4 for a useful sample, got {n}")
    base = list(range(n))
    for _ in range(max_tries):
        perms = []
        for _ in range(3):
            p = base[:]
            rng.shuffle(p)
            perms.append(p)
        edges = set()
        clash = False
        for i in range(n):
            targets = {perms[0][i], perms[1][i], perms[2][i]}
            if len(targets) < 3:
                clash = True
                break
            edges.update((i, v) for v in targets)
        if clash:
            continue
        g = BipartiteGraph.from_edges(n, n, edges)
        if is_connected(g):
            return g
    raise GraphError(f"no connected cubic bipartite sample after {max_tries} tries")
