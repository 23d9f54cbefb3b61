"""Exhaustive generation of connected cubic bipartite graphs on 2n vertices,
a labeled brute-force oracle, and certification of the extremal theorems."""

from __future__ import annotations

import csv
import hashlib
import io
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations, permutations
from pathlib import Path

from .canon import canonical_form
from .descent import STRICT_TAU, scored_candidates
from .graph6 import encode_graph6
from .graphs import (
    BipartiteGraph,
    Graph,
    GraphError,
    build_h2n,
    has_cut_edge,
    is_connected,
)
from .matchings import Biadjacency, count_perfect_matchings
from .spectral import algebraic_connectivity

CACHE_ENV = "SPECTRAL_LAB_CACHE"
TIE_TOL = 1e-9
ENUM_MIN_N = 3
ENUM_MAX_N = 8
ORACLE_MAX_N = 6


class CertificationError(RuntimeError):
    """An enumerated invariant failed (would falsify a certified theorem)."""


def cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    base = Path(env) if env else Path.home() / ".cache" / "spectral-lab"
    base.mkdir(parents=True, exist_ok=True)
    return base


def _row_masks(n: int):
    """All weight-3 row bitmasks (column 0 = MSB), descending."""
    masks = []
    for cols in combinations(range(n), 3):
        masks.append(sum(1 << (n - 1 - c) for c in cols))
    return sorted(masks, reverse=True)


def _mask_cols(mask: int, n: int):
    return [c for c in range(n) if mask >> (n - 1 - c) & 1]


def _complete_rows(n, rows, counts, prefixes, candidates, cols_of, out):
    """Extend a partial matrix with non-increasing rows and column sums <= 3;
    emit completed row tuples with every column sum exactly 3.

    Column prefixes (top-to-bottom bit strings) are also kept non-increasing:
    the row-major lex-max representative of any class satisfies both
    orderings, so the restriction loses no class while pruning hard.
    """
    depth = len(rows)
    if depth == n:
        out.append(tuple(rows))
        return
    rows_left = n - depth
    forced = 0
    for c in range(n):
        need = 3 - counts[c]
        if need > rows_left:
            return
        if need == rows_left:
            forced |= 1 << (n - 1 - c)
    prev = rows[-1]
    for mask in candidates:
        if mask > prev:
            continue
        if mask & forced != forced:
            continue
        cols = cols_of[mask]
        if any(counts[c] == 3 for c in cols):
            continue
        new_prefixes = [(p << 1) | (mask >> (n - 1 - c) & 1)
                        for c, p in enumerate(prefixes)]
        if any(a < b for a, b in zip(new_prefixes, new_prefixes[1:])):
            continue
        for c in cols:
            counts[c] += 1
        rows.append(mask)
        _complete_rows(n, rows, counts, new_prefixes, candidates, cols_of, out)
        rows.pop()
        for c in cols:
            counts[c] -= 1


def _graph_from_rows(rows, n: int) -> BipartiteGraph:
    edges = []
    for u, mask in enumerate(rows):
        edges.extend((u, c) for c in _mask_cols(mask, n))
    return BipartiteGraph.from_edges(n, n, edges)


def _enumerate_subtree(n: int, second_row: int):
    """Orderly completions below a fixed (first, second) row pair; returns
    (canonical form, rows) for each connected completion."""
    candidates = _row_masks(n)
    cols_of = {m: _mask_cols(m, n) for m in candidates}
    top = candidates[0]
    counts = [0] * n
    for c in cols_of[top]:
        counts[c] += 1
    for c in cols_of[second_row]:
        counts[c] += 1
    if max(counts) > 3:
        return []
    prefixes = [(top >> (n - 1 - c) & 1) << 1 | (second_row >> (n - 1 - c) & 1)
                for c in range(n)]
    if any(a < b for a, b in zip(prefixes, prefixes[1:])):
        return []
    out = []
    _complete_rows(n, [top, second_row], counts, prefixes, candidates, cols_of, out)
    results = []
    for rows in out:
        g = _graph_from_rows(rows, n)
        if is_connected(g):
            results.append((canonical_form(g), rows))
    return results


def enumerate_cubic_bipartite(n: int, workers: int = 1):
    """One representative per isomorphism class of connected cubic bipartite
    graphs on n+n vertices, ordered by canonical form.

    Orderly backtracking over biadjacency matrices with non-increasing rows
    and first row (1,1,1,0,...,0), then canonical-form dedup and a
    connectivity filter. Every class has a representative of that shape, so
    the restriction loses nothing.
    """
    if not ENUM_MIN_N <= n <= ENUM_MAX_N:
        raise GraphError(
            f"enumeration supports {ENUM_MIN_N} <= n <= {ENUM_MAX_N}, got {n}")
    candidates = _row_masks(n)
    top = candidates[0]
    seconds = [m for m in candidates if m <= top]
    reps = {}
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = pool.map(_enumerate_subtree, [n] * len(seconds), seconds)
            for chunk in chunks:
                for key, rows in chunk:
                    reps.setdefault(key, rows)
    else:
        for second in seconds:
            for key, rows in _enumerate_subtree(n, second):
                reps.setdefault(key, rows)
    return tuple(_graph_from_rows(reps[key], n) for key in sorted(reps))


# ---------------------------------------------------------------------------
# Brute-force oracle: exhaustive labeled generation, then pairwise exhaustive
# isomorphism dedup. Independent of both the orderly pruning and the
# refinement-based canonical form that it cross-checks.

def _all_labeled_rows(n: int):
    candidates = _row_masks(n)
    cols_of = {m: _mask_cols(m, n) for m in candidates}
    out = []

    def rec(depth, rows, counts):
        if depth == n:
            out.append(tuple(rows))
            return
        rows_left = n - depth
        for c in range(n):
            if 3 - counts[c] > rows_left:
                return
        for mask in candidates:
            cols = cols_of[mask]
            if any(counts[c] == 3 for c in cols):
                continue
            for c in cols:
                counts[c] += 1
            rows.append(mask)
            rec(depth + 1, rows, counts)
            rows.pop()
            for c in cols:
                counts[c] -= 1

    rec(0, [], [0] * n)
    return out


def _columns_of(rows, n: int):
    cols = [0] * n
    for i, r in enumerate(rows):
        for c in _mask_cols(r, n):
            cols[c] |= 1 << i
    return cols


def _iso_part_preserving(rows_a, rows_b, n: int) -> bool:
    """Exhaustive scan over row permutations; column order is absorbed by
    comparing sorted column multisets."""
    target = sorted(_columns_of(rows_b, n))
    cols_a = _columns_of(rows_a, n)
    for perm in permutations(range(n)):
        permuted = []
        for col in cols_a:
            v = 0
            for k in range(n):
                v |= ((col >> perm[k]) & 1) << k
            permuted.append(v)
        if sorted(permuted) == target:
            return True
    return False


def _transpose_rows(rows, n: int):
    cols = _columns_of(rows, n)
    # column ints use bit i = row i; convert back to MSB-first row masks
    out = []
    for c in range(n):
        mask = 0
        for i in range(n):
            if cols[c] >> i & 1:
                mask |= 1 << (n - 1 - i)
        out.append(mask)
    return tuple(out)


def _iso_with_swap(rows_a, rows_b, n: int) -> bool:
    return (_iso_part_preserving(rows_a, rows_b, n)
            or _iso_part_preserving(rows_a, _transpose_rows(rows_b, n), n))


def _invariant_key(rows, n: int):
    cols = _columns_of(rows, n)
    row_cn = sorted(bin(a & b).count("1")
                    for a, b in combinations(rows, 2))
    col_cn = sorted(bin(a & b).count("1")
                    for a, b in combinations(cols, 2))
    pair = sorted([tuple(row_cn), tuple(col_cn)])
    return (pair[0], pair[1])


@dataclass(frozen=True)
class OracleResult:
    n: int
    labeled_count: int
    class_count: int            # isomorphism classes, connected or not
    connected: tuple            # connected class representatives


def enumerate_cubic_bipartite_bruteforce(n: int, use_cache: bool = True) -> OracleResult:
    """Oracle class list: generate every labeled matrix with line sums 3,
    collapse row permutations, then dedup by exhaustive isomorphism tests."""
    if not ENUM_MIN_N <= n <= ORACLE_MAX_N:
        raise GraphError(
            f"oracle supports {ENUM_MIN_N} <= n <= {ORACLE_MAX_N}, got {n}")
    cache_file = cache_dir() / f"bruteforce_n{n}.json"
    if use_cache and cache_file.exists():
        cached = _load_oracle_cache(cache_file, n)
        if cached is not None:
            return cached

    labeled = _all_labeled_rows(n)
    by_sorted_rows = {}
    for rows in labeled:
        by_sorted_rows.setdefault(tuple(sorted(rows, reverse=True)), rows)

    buckets = {}
    reps = []
    for rows in by_sorted_rows.values():
        key = _invariant_key(rows, n)
        bucket = buckets.setdefault(key, [])
        if not any(_iso_with_swap(rows, other, n) for other in bucket):
            bucket.append(rows)
            reps.append(rows)

    connected = tuple(sorted(rows for rows in reps
                             if is_connected(_graph_from_rows(rows, n))))
    result = OracleResult(n, len(labeled), len(reps), connected)
    if use_cache:
        _store_oracle_cache(cache_file, result)
    return result


def _oracle_payload(result: OracleResult) -> dict:
    return {
        "n": result.n,
        "labeled_count": result.labeled_count,
        "class_count": result.class_count,
        "connected_rows": [list(rows) for rows in result.connected],
    }


def _store_oracle_cache(path: Path, result: OracleResult):
    payload = _oracle_payload(result)
    blob = json.dumps(payload, sort_keys=True)
    payload["content_hash"] = hashlib.sha256(blob.encode()).hexdigest()
    path.write_text(json.dumps(payload, sort_keys=True))


def _load_oracle_cache(path: Path, n: int):
    try:
        payload = json.loads(path.read_text())
        digest = payload.pop("content_hash")
        blob = json.dumps(payload, sort_keys=True)
        if hashlib.sha256(blob.encode()).hexdigest() != digest:
            return None
        if payload["n"] != n:
            return None
        connected = tuple(tuple(rows) for rows in payload["connected_rows"])
        return OracleResult(n, payload["labeled_count"],
                            payload["class_count"], connected)
    except (KeyError, ValueError, OSError):
        return None


def oracle_graphs(result: OracleResult):
    return tuple(_graph_from_rows(rows, result.n) for rows in result.connected)


# ---------------------------------------------------------------------------
# Records and certification.

@dataclass(frozen=True)
class EnumerationRecord:
    canonical: bytes
    graph6: str
    a_value: float
    pm_count: int
    is_h2n: bool
    graph: BipartiteGraph


def build_records(n: int, workers: int = 1):
    """EnumerationRecord per class, sorted by canonical form; checks the
    connectivity and matching invariants every cubic bipartite class obeys."""
    h2n_key = canonical_form(build_h2n(n)) if n >= 6 else None
    records = []
    for g in enumerate_cubic_bipartite(n, workers=workers):
        key = canonical_form(g)
        a_value = algebraic_connectivity(g).value
        if not a_value > 0:
            raise CertificationError(f"enumerated class not connected: a={a_value}")
        pm = count_perfect_matchings(Biadjacency.from_graph(g))
        if pm < 1:
            raise CertificationError(
                "cubic bipartite graph without a perfect matching contradicts "
                f"Hall/Koenig: {encode_graph6(g)}")
        records.append(EnumerationRecord(
            key, encode_graph6(g), a_value, pm, key == h2n_key, g))
    return tuple(sorted(records, key=lambda r: r.canonical))


@dataclass(frozen=True)
class MinimizerCertificate:
    n: int
    class_count: int
    argmin_graph6: str
    argmin_a: float
    runner_up_gap: float | None
    unique: bool
    matches_h2n: bool | None
    passed: bool


def certify_minimizer(n: int, records=None, workers: int = 1,
                      tie_tol: float = TIE_TOL) -> MinimizerCertificate:
    """Assert H_2n is the strict unique minimizer of a(G) over all classes
    (n >= 6); for n in {3,4,5} report the argmin without asserting identity."""
    if records is None:
        records = build_records(n, workers=workers)
    by_a = sorted(records, key=lambda r: (r.a_value, r.canonical))
    best = by_a[0]
    gap = by_a[1].a_value - best.a_value if len(by_a) > 1 else None
    unique = gap is None or gap > tie_tol
    matches = best.is_h2n if n >= 6 else None
    passed = unique and (matches is not False)
    return MinimizerCertificate(n, len(records), best.graph6, best.a_value,
                                gap, unique, matches, passed)


@dataclass(frozen=True)
class EquivalenceCertificate:
    n: int
    argmin_graph6: str
    argmax_graph6: str
    argmax_pm: int
    argmax_unique: bool
    same_class: bool
    passed: bool


def certify_equivalence(n: int, records=None, workers: int = 1,
                        tie_tol: float = TIE_TOL) -> EquivalenceCertificate:
    """Assert the unique argmax of the matching count and the unique argmin
    of a(G) are the same class."""
    if records is None:
        records = build_records(n, workers=workers)
    by_a = sorted(records, key=lambda r: (r.a_value, r.canonical))
    by_pm = sorted(records, key=lambda r: (-r.pm_count, r.canonical))
    top = by_pm[0]
    pm_unique = len(by_pm) < 2 or by_pm[1].pm_count < top.pm_count
    a_unique = (len(by_a) < 2
                or by_a[1].a_value - by_a[0].a_value > tie_tol)
    same = top.canonical == by_a[0].canonical
    return EquivalenceCertificate(n, by_a[0].graph6, top.graph6, top.pm_count,
                                  pm_unique, same,
                                  pm_unique and a_unique and same)


@dataclass(frozen=True)
class SpotCheckReport:
    graph6: str
    no_cut_edge: bool
    multiplicity: int
    p2_pairs_checked: int
    p2_all_cuts: bool
    p2_skipped: bool


def structural_spot_checks(g: BipartiteGraph) -> SpotCheckReport:
    """Check the minimizer has no cut edge and that every pair satisfying the
    swap inequalities is a 2-edge cut (skipped when a(G) is not simple)."""
    no_cut = not has_cut_edge(g)
    result = algebraic_connectivity(g)
    if result.multiplicity > 1:
        return SpotCheckReport(encode_graph6(g), no_cut, result.multiplicity,
                               0, True, True)
    checked = 0
    all_cuts = True
    flat = g.to_graph()
    for cand in scored_candidates(g, result.vector):
        if not (cand.degree_ok and cand.fiedler_u_gap > STRICT_TAU
                and cand.fiedler_v_gap <= 0.0):
            continue
        checked += 1
        (u1, v1), (u2, v2) = cand.pair.e1, cand.pair.e2
        off = g.n_left
        removed = {(u1, off + v1), (u2, off + v2)}
        trimmed = Graph(flat.n, frozenset(e for e in flat.edges
                                          if e not in removed))
        if is_connected(trimmed):
            all_cuts = False
    return SpotCheckReport(encode_graph6(g), no_cut, result.multiplicity,
                           checked, all_cuts, False)


def records_to_csv(records) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["canonical", "graph6", "a_value", "pm_count", "is_h2n"])
    for r in records:
        writer.writerow([r.canonical.hex(), r.graph6,
                         f"{r.a_value:.12f}", r.pm_count, int(r.is_h2n)])
    return buf.getvalue()


def records_to_json(records) -> str:
    return json.dumps([{
        "canonical": r.canonical.hex(),
        "graph6": r.graph6,
        "a_value": r.a_value,
        "pm_count": r.pm_count,
        "is_h2n": r.is_h2n,
    } for r in records], indent=2)
