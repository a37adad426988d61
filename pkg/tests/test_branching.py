import random

import pytest

from branchforge import geometries as geo
from branchforge.branching import (
    NO_WITNESS_SYSTEM,
    VALENCE_TOO_LOW,
    BadParams,
    BadSubset,
    BranchingCertificate,
    BranchingFailure,
    BranchingSearch,
    check_branching,
    max_branching_n,
    oriented_paths,
    result_from_json,
    result_to_json,
    verify_certificate,
    witness_extension,
)
from branchforge.graph import cycle_graph, girth, parse_edge_list

from bruteforce import branching_oracle, largest_component, random_graph


def test_pentagon_is_1_5_branching():
    result = check_branching(cycle_graph(5), 1, 5)
    assert isinstance(result, BranchingCertificate)
    # the pentagon itself is the only witness cycle anywhere
    for e in result.entries:
        assert all(len(c) == 5 for c in e.cycles)


def test_heawood_is_1_6_but_not_2_6(corpus):
    g = corpus["P2"].graph
    assert isinstance(check_branching(g, 1, 6), BranchingCertificate)
    failure = check_branching(g, 2, 6)
    assert isinstance(failure, BranchingFailure)
    assert failure.reason == NO_WITNESS_SYSTEM
    assert len(failure.path) == 2  # a single-edge witness


def test_projective_q3_is_3_6(corpus):
    result = check_branching(corpus["P3"].graph, 3, 6)
    assert isinstance(result, BranchingCertificate)
    ok, problems = verify_certificate(corpus["P3"].graph, result)
    assert ok, problems[:3]


def test_biaffine_q3_is_2_6(corpus):
    assert isinstance(check_branching(corpus["B3"].graph, 2, 6), BranchingCertificate)


def test_tutte_coxeter_is_2_8(corpus):
    result = check_branching(corpus["GQ2"].graph, 2, 8)
    assert isinstance(result, BranchingCertificate)
    ok, problems = verify_certificate(corpus["GQ2"].graph, result)
    assert ok, problems[:3]


def test_valence_failure():
    failure = check_branching(cycle_graph(5), 2, 6)
    assert isinstance(failure, BranchingFailure)
    assert failure.reason == VALENCE_TOO_LOW
    assert failure.path == () and len(failure.subset) == 1


def test_octagon_observed_behavior(corpus):
    # valence 2 caps n at 1; the only cycle has length 8
    g = corpus["B2"].graph
    assert isinstance(check_branching(g, 1, 8), BranchingCertificate)
    r = check_branching(g, 1, 7)
    assert isinstance(r, BranchingFailure) and r.reason == NO_WITNESS_SYSTEM


def test_max_branching_table(corpus):
    assert max_branching_n(corpus["P2"].graph, 6) == 1
    assert max_branching_n(corpus["P3"].graph, 6) == 3
    assert max_branching_n(corpus["A3"].graph, 6) == 2
    assert max_branching_n(corpus["B3"].graph, 6) == 2
    assert max_branching_n(cycle_graph(7), 6) == 0


def test_bad_params():
    with pytest.raises(BadParams):
        check_branching(cycle_graph(5), 0, 6)
    with pytest.raises(BadParams):
        check_branching(cycle_graph(5), 1, 4)


def test_witness_extension_examples(corpus):
    g = corpus["P3"].graph
    path = (0, g.neighbors(0)[0])
    pool = [x for x in g.neighbors(path[0]) if x not in path]
    entry = witness_extension(g, path, tuple(pool[:3]), 3, 6)
    assert entry is not None
    assert all(len(c) == 6 for c in entry.cycles)
    assert len(set(entry.v_choices)) == 3

    c5 = cycle_graph(5)
    entry = witness_extension(c5, (0, 1), (4,), 1, 5)
    assert entry.cycles == ((4, 0, 1, 2, 3),)


def test_witness_extension_bad_subset():
    c5 = cycle_graph(5)
    with pytest.raises(BadSubset):
        witness_extension(c5, (0, 1), (1,), 1, 5)  # subset meets the path
    with pytest.raises(BadSubset):
        witness_extension(c5, (0, 1), (3,), 1, 5)  # not a neighbor of u
    with pytest.raises(BadSubset):
        witness_extension(c5, (0, 1), (4, 4), 2, 5)  # repeats


def test_memoization_and_determinism(corpus):
    g = corpus["P3"].graph
    search = BranchingSearch(g, 6)
    path = (0, g.neighbors(0)[0])
    pool = [x for x in g.neighbors(0) if x not in path]
    first = search.witness(path, tuple(pool[:2]))
    second = search.witness(path, tuple(reversed(pool[:2])))
    assert first is second  # memo hit is order-insensitive
    a = check_branching(g, 2, 6)
    b = check_branching(g, 2, 6)
    assert result_to_json(g, a) == result_to_json(g, b)


def test_threads_do_not_change_output(corpus):
    g = corpus["B3"].graph
    a = check_branching(g, 2, 6, threads=1)
    b = check_branching(g, 2, 6, threads=4)
    assert result_to_json(g, a) == result_to_json(g, b)


def test_failure_serialization_round_trip(corpus):
    g = corpus["P2"].graph
    failure = check_branching(g, 2, 6)
    text = result_to_json(g, failure)
    loaded = result_from_json(g, text)
    assert isinstance(loaded, BranchingFailure)
    assert (loaded.path, loaded.subset, loaded.reason) == (
        failure.path,
        failure.subset,
        failure.reason,
    )


def test_certificate_serialization_round_trip(corpus):
    g = corpus["B3"].graph
    cert = check_branching(g, 2, 6)
    text = result_to_json(g, cert)
    loaded = result_from_json(g, text)
    assert isinstance(loaded, BranchingCertificate)
    ok, problems = verify_certificate(g, loaded)
    assert ok, problems[:3]
    # and the round trip survives an edge-list reload with permuted indices
    h = parse_edge_list(g.to_edge_list())
    reloaded = result_from_json(h, text)
    ok, problems = verify_certificate(h, reloaded)
    assert ok, problems[:3]


def test_verify_rejects_tampered_certificate(corpus):
    g = corpus["B3"].graph
    cert = check_branching(g, 2, 6)
    cert.entries[0].cycles = cert.entries[0].cycles[::-1]  # misalign u_i
    ok, problems = verify_certificate(g, cert)
    assert not ok


def test_monotonicity_on_p3(corpus):
    g = corpus["P3"].graph
    search = BranchingSearch(g, 6)
    assert isinstance(check_branching(g, 3, 6, search=search), BranchingCertificate)
    assert isinstance(check_branching(g, 2, 6, search=search), BranchingCertificate)
    assert isinstance(check_branching(g, 3, 7), BranchingCertificate)


def test_automorphism_reuse_matches_plain_run(corpus):
    levi = geo.biaffine_levi(3)
    g = levi.graph
    duality = geo.biaffine_duality(levi)
    plain = check_branching(g, 2, 6)
    assisted = check_branching(g, 2, 6, automorphisms=[duality])
    assert isinstance(assisted, BranchingCertificate)
    assert {(e.path, e.subset) for e in plain.entries} == {
        (e.path, e.subset) for e in assisted.entries
    }
    ok, problems = verify_certificate(g, assisted)
    assert ok, problems[:3]


def test_scan_order_edges_before_two_paths(corpus):
    paths = oriented_paths(corpus["P2"].graph)
    lengths = [len(p) for p in paths]
    assert lengths == sorted(lengths)


def test_oracle_agreement_small_sample():
    rng = random.Random(1123)
    for _ in range(60):
        g = largest_component(
            random_graph(rng, rng.randint(5, 10), rng.uniform(0.2, 0.55))
        )
        if g.V < 3:
            continue
        n = rng.randint(1, 2)
        m = rng.randint(5, 7)
        got = check_branching(g, n, m)
        want_flag, want_witness = branching_oracle(g, n, m)
        assert isinstance(got, BranchingCertificate) == want_flag
        if not want_flag:
            assert (got.path, got.subset) == want_witness


def test_certified_implies_girth_at_least_5():
    rng = random.Random(907)
    seen = 0
    for _ in range(200):
        g = largest_component(random_graph(rng, 10, rng.uniform(0.2, 0.5)))
        if g.V < 5:
            continue
        if isinstance(check_branching(g, 1, 6), BranchingCertificate):
            seen += 1
            assert girth(g) >= 5
    # random dense-ish graphs essentially never certify; corpus members do
    assert isinstance(
        check_branching(geo.projective_levi(2).graph, 1, 6), BranchingCertificate
    )
