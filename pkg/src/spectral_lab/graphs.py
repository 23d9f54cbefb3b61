"""Graph types and constructions: bipartite graphs, paths, the extremal
chain graph on 2n vertices, independent edge pairs, and basic traversals."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable


class GraphError(ValueError):
    """Malformed graph construction or input."""


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1. Edges are (i, j) with i < j."""

    n: int
    edges: frozenset

    def __post_init__(self):
        if self.n < 0:
            raise GraphError(f"negative vertex count {self.n}")
        for i, j in self.edges:
            if not (0 <= i < j < self.n):
                raise GraphError(f"edge ({i},{j}) out of range for n={self.n}")

    @staticmethod
    def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        norm = set()
        for a, b in edges:
            if a == b:
                raise GraphError(f"self-loop at vertex {a}")
            norm.add((a, b) if a < b else (b, a))
        return Graph(n, frozenset(norm))

    @cached_property
    def edge_list(self) -> tuple:
        return tuple(sorted(self.edges))

    @cached_property
    def adjacency(self) -> tuple:
        adj = [set() for _ in range(self.n)]
        for i, j in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        return tuple(frozenset(s) for s in adj)

    def degrees(self) -> tuple:
        return tuple(len(s) for s in self.adjacency)

    def is_regular(self) -> bool:
        degs = self.degrees()
        return len(set(degs)) <= 1


@dataclass(frozen=True)
class BipartiteGraph:
    """Bipartite graph with parts U (size n_left) and V (size n_right).

    Edges are (u, v) pairs of 0-based indices into U and V; self-loops are
    impossible by construction. In the flattened vertex order (used for
    matrices and vectors) U comes first, then V shifted by n_left.
    """

    n_left: int
    n_right: int
    edges: frozenset

    def __post_init__(self):
        if self.n_left < 0 or self.n_right < 0:
            raise GraphError("negative part size")
        for u, v in self.edges:
            if not (0 <= u < self.n_left and 0 <= v < self.n_right):
                raise GraphError(
                    f"edge ({u},{v}) out of range for parts "
                    f"({self.n_left},{self.n_right})"
                )

    @staticmethod
    def from_edges(n_left: int, n_right: int,
                   edges: Iterable[tuple[int, int]]) -> "BipartiteGraph":
        return BipartiteGraph(n_left, n_right, frozenset((u, v) for u, v in edges))

    @property
    def vertex_count(self) -> int:
        return self.n_left + self.n_right

    @cached_property
    def edge_list(self) -> tuple:
        return tuple(sorted(self.edges))

    @cached_property
    def neighbors_of_left(self) -> tuple:
        adj = [set() for _ in range(self.n_left)]
        for u, v in self.edges:
            adj[u].add(v)
        return tuple(frozenset(s) for s in adj)

    @cached_property
    def neighbors_of_right(self) -> tuple:
        adj = [set() for _ in range(self.n_right)]
        for u, v in self.edges:
            adj[v].add(u)
        return tuple(frozenset(s) for s in adj)

    def degrees(self) -> tuple:
        left = tuple(len(s) for s in self.neighbors_of_left)
        right = tuple(len(s) for s in self.neighbors_of_right)
        return left + right

    def is_cubic(self) -> bool:
        return all(d == 3 for d in self.degrees())

    def to_graph(self) -> Graph:
        """Flatten to a plain graph; V-part indices are offset by n_left."""
        off = self.n_left
        return Graph.from_edges(self.vertex_count,
                                ((u, off + v) for u, v in self.edges))

    def swapped_parts(self) -> "BipartiteGraph":
        return BipartiteGraph(self.n_right, self.n_left,
                              frozenset((v, u) for u, v in self.edges))

    def biadjacency_rows(self) -> tuple:
        """Row bitmasks, one per U-vertex; column j is bit (n_right-1-j).

        With that bit order, integer comparison of two rows equals
        lexicographic comparison of their 0/1 strings.
        """
        rows = [0] * self.n_left
        for u, v in self.edges:
            rows[u] |= 1 << (self.n_right - 1 - v)
        return tuple(rows)


@dataclass(frozen=True)
class IndependentEdgePair:
    """Two edges of a bipartite graph whose four endpoints induce 2K2."""

    e1: tuple
    e2: tuple


def build_h2n(n: int) -> BipartiteGraph:
    """Construct the extremal chain graph H_2n on parts of size n each.

    u_i ~ v_j (1-based) iff:
      i in {1,2}:      j in {1,2,3}
      i = 3:           j in {1,2,4}
      4 <= i <= n-3:   j in {i-1, i, i+1}
      i = n-2:         j in {n-3, n-1, n}
      i in {n-1,n}:    j in {n-2, n-1, n}

    The result is connected, cubic and has exactly 3n edges.
    """
    if n < 6:
        raise GraphError(f"H_2n requires n >= 6, got {n}")
    edges = []
    for i in range(1, n + 1):
        if i <= 2:
            cols = (1, 2, 3)
        elif i == 3:
            cols = (1, 2, 4)
        elif i <= n - 3:
            cols = (i - 1, i, i + 1)
        elif i == n - 2:
            cols = (n - 3, n - 1, n)
        else:
            cols = (n - 2, n - 1, n)
        edges.extend((i - 1, j - 1) for j in cols)
    return BipartiteGraph.from_edges(n, n, edges)


def path_graph(n: int) -> Graph:
    """Path on n vertices, edges (i, i+1)."""
    if n < 2:
        raise GraphError(f"path requires n >= 2, got {n}")
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    """Cycle on n vertices."""
    if n < 3:
        raise GraphError(f"cycle requires n >= 3, got {n}")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def complete_bipartite(a: int, b: int) -> BipartiteGraph:
    return BipartiteGraph.from_edges(a, b, ((u, v) for u in range(a) for v in range(b)))


def bipartite_cycle(m: int) -> BipartiteGraph:
    """The 2m-cycle as a bipartite graph: u_i ~ v_i and u_{i+1} ~ v_i."""
    if m < 2:
        raise GraphError(f"bipartite cycle requires m >= 2, got {m}")
    edges = [(i, i) for i in range(m)] + [((i + 1) % m, i) for i in range(m)]
    return BipartiteGraph.from_edges(m, m, edges)


def independent_edge_pairs(g: BipartiteGraph) -> tuple:
    """All pairs of edges inducing 2K2, in lexicographic (e1, e2) order.

    Endpoints must be four distinct vertices with neither cross pair
    (u1, v2), (u2, v1) present; same-part pairs are never adjacent.
    """
    edges = g.edge_list
    es = g.edges
    out = []
    for a in range(len(edges)):
        u1, v1 = edges[a]
        for b in range(a + 1, len(edges)):
            u2, v2 = edges[b]
            if u1 == u2 or v1 == v2:
                continue
            if (u1, v2) in es or (u2, v1) in es:
                continue
            out.append(IndependentEdgePair(edges[a], edges[b]))
    return tuple(out)


def as_graph(g) -> Graph:
    return g.to_graph() if isinstance(g, BipartiteGraph) else g


def is_connected(g) -> bool:
    """BFS connectivity; accepts Graph or BipartiteGraph."""
    graph = as_graph(g)
    if graph.n == 0:
        return True
    adj = graph.adjacency
    seen = [False] * graph.n
    seen[0] = True
    stack = [0]
    count = 1
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if not seen[w]:
                seen[w] = True
                count += 1
                stack.append(w)
    return count == graph.n


def complement(g: Graph) -> Graph:
    edges = set()
    for i in range(g.n):
        for j in range(i + 1, g.n):
            if (i, j) not in g.edges:
                edges.add((i, j))
    return Graph(g.n, frozenset(edges))


def bridges(g) -> tuple:
    """Cut edges via iterative DFS lowlink."""
    graph = as_graph(g)
    adj = [sorted(s) for s in graph.adjacency]
    disc = [-1] * graph.n
    low = [0] * graph.n
    out = []
    timer = 0
    for root in range(graph.n):
        if disc[root] != -1:
            continue
        stack = [(root, -1, iter(adj[root]))]
        disc[root] = low[root] = timer
        timer += 1
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] == -1:
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, v, iter(adj[w])))
                    advanced = True
                    break
                elif w != parent:
                    low[v] = min(low[v], disc[w])
            if not advanced:
                stack.pop()
                if stack:
                    p = stack[-1][0]
                    low[p] = min(low[p], low[v])
                    if low[v] > disc[p]:
                        out.append((min(p, v), max(p, v)))
        # parent edges sharing both endpoints repeatedly are impossible in a
        # simple graph, so no multi-edge handling is needed
    return tuple(sorted(out))


def has_cut_edge(g) -> bool:
    return len(bridges(g)) > 0


def relabel_bipartite(g: BipartiteGraph, left_perm, right_perm) -> BipartiteGraph:
    """Apply part-preserving vertex relabelings (u -> left_perm[u] etc.)."""
    return BipartiteGraph.from_edges(
        g.n_left, g.n_right,
        ((left_perm[u], right_perm[v]) for u, v in g.edges))


def bipartite_to_json(g: BipartiteGraph) -> str:
    return json.dumps({
        "n_left": g.n_left,
        "n_right": g.n_right,
        "edges": [[u, v] for u, v in g.edge_list],
    })


def bipartite_from_json(text: str) -> BipartiteGraph:
    try:
        data = json.loads(text)
        return BipartiteGraph.from_edges(
            int(data["n_left"]), int(data["n_right"]),
            ((int(u), int(v)) for u, v in data["edges"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphError(f"bad bipartite JSON: {exc}") from exc
