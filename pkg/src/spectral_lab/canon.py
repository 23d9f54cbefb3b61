"""Canonical forms for bipartite graphs up to part-preserving relabelings,
plus the part-swapping map when both parts have equal size."""

from __future__ import annotations

from .graphs import BipartiteGraph


def _lex_min_matrix(rows, n_cols: int):
    """Lexicographically minimal 0/1 matrix over row and column permutations.

    Rows are placed one at a time (backtracking over ties); the column order
    is refined greedily, zeros before ones inside each block, which realizes
    the exact minimum over column permutations for a fixed row order.
    Returns the minimal matrix as a tuple of row bitmasks (column 0 = MSB).
    """
    n_rows = len(rows)
    if n_rows == 0 or n_cols == 0:
        return tuple(0 for _ in rows)
    colbit = [1 << (n_cols - 1 - c) for c in range(n_cols)]
    best = None

    def pattern_of(row, blocks):
        pat = 0
        for block in blocks:
            ones = 0
            for c in block:
                if row & colbit[c]:
                    ones += 1
            pat = (pat << len(block)) | ((1 << ones) - 1)
        return pat

    def refine(row, blocks):
        refined = []
        for block in blocks:
            zeros = tuple(c for c in block if not row & colbit[c])
            ones = tuple(c for c in block if row & colbit[c])
            if zeros:
                refined.append(zeros)
            if ones:
                refined.append(ones)
        return tuple(refined)

    def dfs(prefix, blocks, unused):
        nonlocal best
        if not unused:
            if best is None or prefix < best:
                best = prefix
            return
        depth = len(prefix)
        scored = [(pattern_of(rows[r], blocks), r) for r in unused]
        m = min(pat for pat, _ in scored)
        cand = prefix + (m,)
        if best is not None and cand > best[:depth + 1]:
            return
        for pat, r in scored:
            if pat != m:
                continue
            dfs(cand, refine(rows[r], blocks),
                tuple(x for x in unused if x != r))

    dfs((), (tuple(range(n_cols)),), tuple(range(n_rows)))
    return best


def _pack(n_left: int, n_right: int, patterns) -> bytes:
    width = (n_right + 7) // 8
    out = bytearray([n_left >> 8, n_left & 255, n_right >> 8, n_right & 255])
    for pat in patterns:
        out.extend(pat.to_bytes(width, "big"))
    return bytes(out)


def canonical_form(g: BipartiteGraph) -> bytes:
    """Byte string equal for two bipartite graphs iff they are isomorphic
    under part-preserving relabelings (and part swap for equal part sizes)."""
    m1 = _lex_min_matrix(g.biadjacency_rows(), g.n_right)
    if g.n_left == g.n_right:
        m2 = _lex_min_matrix(g.swapped_parts().biadjacency_rows(), g.n_left)
        if m2 < m1:
            m1 = m2
    return _pack(g.n_left, g.n_right, m1)
