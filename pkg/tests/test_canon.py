import random
from itertools import combinations

from spectral_lab import (
    BipartiteGraph,
    build_h2n,
    canonical_form,
    complete_bipartite,
    enumerate_cubic_bipartite,
    relabel_bipartite,
)
from oracles import are_isomorphic_bipartite


def _random_relabel(g, rng):
    left = list(range(g.n_left))
    right = list(range(g.n_right))
    rng.shuffle(left)
    rng.shuffle(right)
    return relabel_bipartite(g, left, right)


def test_invariance_under_100_relabelings():
    g = build_h2n(6)
    want = canonical_form(g)
    rng = random.Random(123)
    for _ in range(100):
        assert canonical_form(_random_relabel(g, rng)) == want


def test_invariance_random_graphs():
    rng = random.Random(9)
    for _ in range(8):
        nl = rng.randint(2, 7)
        nr = rng.randint(2, 7)
        edges = {(u, v) for u in range(nl) for v in range(nr)
                 if rng.random() < 0.45}
        g = BipartiteGraph.from_edges(nl, nr, edges)
        want = canonical_form(g)
        for _ in range(15):
            assert canonical_form(_random_relabel(g, rng)) == want


def test_part_swap_invariance():
    for g in (build_h2n(6), complete_bipartite(4, 4), *enumerate_cubic_bipartite(6)):
        assert canonical_form(g.swapped_parts()) == canonical_form(g)


def test_forms_separate_classes_iff_non_isomorphic():
    classes = list(enumerate_cubic_bipartite(5)) + list(enumerate_cubic_bipartite(6))
    for a, b in combinations(classes, 2):
        same_form = canonical_form(a) == canonical_form(b)
        assert same_form == are_isomorphic_bipartite(a, b)


def test_h12_differs_from_other_class():
    h12 = build_h2n(6)
    others = [g for g in enumerate_cubic_bipartite(6)
              if canonical_form(g) != canonical_form(h12)]
    assert len(others) == 4
    assert all(not are_isomorphic_bipartite(h12, g) for g in others)


def test_unequal_parts_keep_orientation():
    g = BipartiteGraph.from_edges(2, 3, [(0, 0), (0, 1), (1, 2)])
    assert canonical_form(g) != canonical_form(g.swapped_parts())
    rng = random.Random(4)
    want = canonical_form(g)
    for _ in range(10):
        assert canonical_form(_random_relabel(g, rng)) == want
