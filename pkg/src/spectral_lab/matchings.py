"""Perfect-matching counts for bipartite graphs via the permanent of the
biadjacency matrix, with a brute-force oracle and the H_2n count profile."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .graphs import BipartiteGraph, GraphError, build_h2n

RYSER_MAX_ORDER = 30
BRUTEFORCE_MAX_ORDER = 10


@dataclass(frozen=True)
class Biadjacency:
    """Square 0/1 biadjacency matrix as row bitmasks (column 0 = MSB)."""

    order: int
    rows: tuple

    @staticmethod
    def from_graph(g: BipartiteGraph) -> "Biadjacency":
        if g.n_left != g.n_right:
            raise GraphError(
                f"biadjacency requires equal parts, got {g.n_left}+{g.n_right}")
        return Biadjacency(g.n_left, g.biadjacency_rows())

    @staticmethod
    def from_matrix(matrix) -> "Biadjacency":
        n = len(matrix)
        rows = []
        for row in matrix:
            if len(row) != n:
                raise GraphError("biadjacency matrix must be square")
            mask = 0
            for j, entry in enumerate(row):
                if entry not in (0, 1):
                    raise GraphError(f"entries must be 0/1, got {entry}")
                mask |= entry << (n - 1 - j)
            rows.append(mask)
        return Biadjacency(n, tuple(rows))

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i] >> (self.order - 1 - j)) & 1


def count_perfect_matchings(b: Biadjacency) -> int:
    """Exact permanent by Ryser inclusion-exclusion over column subsets.

    Subsets are visited in Gray-code order; the product of row sums is
    maintained incrementally (zero rows tracked separately), so each step
    costs O(column degree). Exact integer arithmetic throughout.
    """
    n = b.order
    if n > RYSER_MAX_ORDER:
        raise GraphError(f"permanent capped at order {RYSER_MAX_ORDER}, got {n}")
    if n == 0:
        return 1
    col_rows = [[i for i in range(n) if b.entry(i, j)] for j in range(n)]
    sums = [0] * n
    zeros = n
    prod = 1          # product of the nonzero row sums
    total = 0
    sign = 1          # (-1)^{|S|}, toggles once per Gray step
    gray = 0
    for g in range(1, 1 << n):
        low = g & -g
        j = low.bit_length() - 1
        gray ^= low
        adding = (gray & low) != 0
        sign = -sign
        for i in col_rows[j]:
            s = sums[i]
            t = s + 1 if adding else s - 1
            sums[i] = t
            if s == 0:
                zeros -= 1
                prod *= t
            elif t == 0:
                zeros += 1
                prod //= s
            else:
                prod = prod // s * t
        if zeros == 0:
            total += sign * prod
    return total if n % 2 == 0 else -total


def count_perfect_matchings_bruteforce(g: BipartiteGraph) -> int:
    """Oracle count by recursive matching extension over U in index order."""
    if g.n_left != g.n_right:
        raise GraphError(
            f"perfect matchings require equal parts, got {g.n_left}+{g.n_right}")
    n = g.n_left
    if n > BRUTEFORCE_MAX_ORDER:
        raise GraphError(f"brute force capped at n <= {BRUTEFORCE_MAX_ORDER}")
    if n == 0:
        return 1
    neighbors = [sorted(s) for s in g.neighbors_of_left]

    def extend(u: int, used: int) -> int:
        if u == n:
            return 1
        count = 0
        for v in neighbors[u]:
            bit = 1 << v
            if not used & bit:
                count += extend(u + 1, used | bit)
        return count

    return extend(0, 0)


def find_linear_recurrence(seq, max_order: int = 3):
    """Constant-coefficient linear recurrence satisfied by the whole integer
    sequence, if one of order <= max_order exists.

    Returns (order, coefficients c_1..c_r) with
    seq[i] = sum_k c_k * seq[i-k], or None.
    """
    for order in range(1, max_order + 1):
        if len(seq) < 2 * order:
            break
        rows = [[Fraction(seq[i - k]) for k in range(1, order + 1)]
                for i in range(order, 2 * order)]
        rhs = [Fraction(seq[i]) for i in range(order, 2 * order)]
        coeffs = _solve_exact(rows, rhs)
        if coeffs is None:
            continue
        ok = all(
            sum(coeffs[k] * seq[i - 1 - k] for k in range(order)) == seq[i]
            for i in range(order, len(seq)))
        if ok:
            return order, tuple(coeffs)
    return None


def _solve_exact(rows, rhs):
    """Gaussian elimination over Fractions; None if singular."""
    n = len(rows)
    a = [row[:] + [rhs[i]] for i, row in enumerate(rows)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return None
        a[col], a[pivot] = a[pivot], a[col]
        inv = a[col][col]
        a[col] = [x / inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                factor = a[r][col]
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
    return [a[r][n] for r in range(n)]


@dataclass(frozen=True)
class MatchingProfile:
    rows: tuple                  # (n, perfect matching count of H_2n)
    recurrence: tuple | None     # (order, coefficients) over the count column
    strictly_increasing: bool


def h2n_matching_profile(n_max: int) -> MatchingProfile:
    """Perfect-matching counts of H_2n for 6 <= n <= n_max, plus a discovered
    linear recurrence of order <= 3 when the data admits one (exploratory)."""
    if not 6 <= n_max <= 20:
        raise GraphError(f"profile supports 6 <= n_max <= 20, got {n_max}")
    rows = []
    for n in range(6, n_max + 1):
        count = count_perfect_matchings(Biadjacency.from_graph(build_h2n(n)))
        rows.append((n, count))
    counts = [c for _, c in rows]
    rec = find_linear_recurrence(counts, max_order=3)
    increasing = all(b > a for a, b in zip(counts, counts[1:]))
    return MatchingProfile(tuple(rows), rec, increasing)
