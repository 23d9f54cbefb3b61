import pytest

from spectral_lab import (
    GraphError,
    algebraic_connectivity,
    build_h2n,
    build_records,
    canonical_form,
    certify_equivalence,
    certify_minimizer,
    complete_bipartite,
    enumerate_cubic_bipartite,
    enumerate_cubic_bipartite_bruteforce,
    is_connected,
    oracle_graphs,
    records_to_csv,
    records_to_json,
    structural_spot_checks,
)

# connected isomorphism classes of cubic bipartite graphs on n+n vertices,
# anchored to the labeled brute-force oracle for n <= 6
CLASS_COUNTS = {3: 1, 4: 1, 5: 2, 6: 5, 7: 13, 8: 38}

# labeled matrices with all line sums 3; n=4 is the permutation-matrix
# complement count 4!, the rest confirmed by exhaustive generation
LABELED_COUNTS = {3: 1, 4: 24, 5: 2040, 6: 297200}


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
def test_class_counts(n):
    assert len(enumerate_cubic_bipartite(n)) == CLASS_COUNTS[n]


def test_class_count_n8():
    assert len(enumerate_cubic_bipartite(8)) == CLASS_COUNTS[8]


def test_n3_is_k33():
    (g,) = enumerate_cubic_bipartite(3)
    assert canonical_form(g) == canonical_form(complete_bipartite(3, 3))


def test_enumerated_are_connected_cubic():
    for n in (3, 4, 5, 6, 7):
        for g in enumerate_cubic_bipartite(n):
            assert g.n_left == g.n_right == n
            assert g.is_cubic()
            assert is_connected(g)


def test_deterministic_order():
    first = [canonical_form(g) for g in enumerate_cubic_bipartite(6)]
    second = [canonical_form(g) for g in enumerate_cubic_bipartite(6)]
    assert first == second == sorted(first)


def test_workers_agree_with_serial():
    serial = [canonical_form(g) for g in enumerate_cubic_bipartite(6)]
    parallel = [canonical_form(g) for g in enumerate_cubic_bipartite(6, workers=2)]
    assert serial == parallel


@pytest.mark.parametrize("n", [3, 4, 5])
def test_completeness_against_oracle(n):
    oracle = enumerate_cubic_bipartite_bruteforce(n, use_cache=False)
    assert oracle.labeled_count == LABELED_COUNTS[n]
    got = sorted(canonical_form(g) for g in enumerate_cubic_bipartite(n))
    want = sorted(canonical_form(g) for g in oracle_graphs(oracle))
    assert got == want
    assert len(set(want)) == len(want)


def test_completeness_against_oracle_n6(tmp_path, monkeypatch):
    monkeypatch.setenv("SPECTRAL_LAB_CACHE", str(tmp_path))
    oracle = enumerate_cubic_bipartite_bruteforce(6)
    assert oracle.labeled_count == LABELED_COUNTS[6]
    assert oracle.class_count == 6          # five connected plus K33 + K33
    assert len(oracle.connected) == 5
    got = sorted(canonical_form(g) for g in enumerate_cubic_bipartite(6))
    want = sorted(canonical_form(g) for g in oracle_graphs(oracle))
    assert got == want
    # second call hits the cache and agrees
    again = enumerate_cubic_bipartite_bruteforce(6)
    assert again == oracle
    assert (tmp_path / "bruteforce_n6.json").exists()


def test_oracle_cache_tamper_recomputes(tmp_path, monkeypatch):
    monkeypatch.setenv("SPECTRAL_LAB_CACHE", str(tmp_path))
    oracle = enumerate_cubic_bipartite_bruteforce(5)
    path = tmp_path / "bruteforce_n5.json"
    path.write_text(path.read_text().replace("2040", "2041", 1))
    again = enumerate_cubic_bipartite_bruteforce(5)
    assert again.labeled_count == oracle.labeled_count == 2040


def test_range_guards():
    for n in (2, 9):
        with pytest.raises(GraphError):
            enumerate_cubic_bipartite(n)
    with pytest.raises(GraphError):
        enumerate_cubic_bipartite_bruteforce(7)


def test_records_shape():
    records = build_records(6)
    assert [r.canonical for r in records] == sorted(r.canonical for r in records)
    assert all(r.a_value > 0 for r in records)
    assert all(r.pm_count >= 1 for r in records)
    assert sum(r.is_h2n for r in records) == 1
    csv_text = records_to_csv(records)
    assert csv_text.splitlines()[0] == "canonical,graph6,a_value,pm_count,is_h2n"
    assert len(csv_text.splitlines()) == len(records) + 1
    assert records_to_json(records).count("graph6") == len(records)


@pytest.mark.parametrize("n", [6, 7])
def test_minimizer_certification(n):
    cert = certify_minimizer(n)
    assert cert.passed
    assert cert.unique
    assert cert.matches_h2n
    assert cert.runner_up_gap > 1e-6


def test_minimizer_gaps_pinned():
    assert abs(certify_minimizer(6).runner_up_gap - 0.3254848353090418) < 1e-9
    assert abs(certify_minimizer(7).runner_up_gap - 0.0908643313755849) < 1e-9


def test_small_n_report_only():
    cert = certify_minimizer(3)
    assert cert.passed
    assert cert.matches_h2n is None
    assert cert.class_count == 1


def test_equivalence_n7_passes():
    cert = certify_equivalence(7)
    assert cert.passed
    assert cert.argmax_pm == 32
    assert cert.same_class


def test_equivalence_n6_fails_on_prism_tie():
    # the hexagonal prism C6 x K2 also attains the maximum of 20 perfect
    # matchings on 12 vertices, so the argmax is not unique; the equivalence
    # claim is falsified at this size (acceptance criterion 5 records this)
    records = build_records(6)
    cert = certify_equivalence(6, records=records)
    assert not cert.passed
    assert not cert.argmax_unique
    top = sorted(r.pm_count for r in records)[-2:]
    assert top == [20, 20]
    argmax = [r for r in records if r.pm_count == 20]
    assert sorted(r.is_h2n for r in argmax) == [False, True]
    prism = next(r for r in argmax if not r.is_h2n)
    assert abs(algebraic_connectivity(prism.graph).value - 1.0) <= 1e-9


def test_spot_checks_on_minimizers():
    spot6 = structural_spot_checks(build_h2n(6))
    assert spot6.no_cut_edge
    assert not spot6.p2_skipped
    assert spot6.p2_pairs_checked == 2
    assert spot6.p2_all_cuts
    spot7 = structural_spot_checks(build_h2n(7))
    assert spot7.no_cut_edge
    assert spot7.p2_pairs_checked == 0   # no pair meets the inequalities
    assert spot7.p2_all_cuts
