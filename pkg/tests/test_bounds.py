import math

import mpmath
import pytest

from branchforge.bounds import (
    BadParams,
    confdim_lower_branching,
    confdim_lower_mackay,
    genm_branching_params,
    genus_lower_bound,
    min_edges,
    report,
)

mpmath.mp.dps = 60


def test_branching_bound_trivial_n1():
    for m in (5, 6, 9, 20):
        assert confdim_lower_branching(1, m) == 1.0


def test_branching_bound_value():
    got = confdim_lower_branching(3, 6)
    want = 1 + math.log(3) / math.log(11)
    assert got == want
    assert abs(got - 1.4581569) < 1e-6


def test_branching_bound_monotone_in_n():
    values = [confdim_lower_branching(q, 6) for q in range(2, 48)]
    assert all(a < b for a, b in zip(values, values[1:]))


def test_mackay_examples():
    assert confdim_lower_mackay(2, 2) == 2.0
    assert confdim_lower_mackay(3, 11) == confdim_lower_branching(3, 6)


def test_mackay_matches_branching_exactly():
    for n in range(2, 12):
        for m in range(5, 12):
            assert confdim_lower_branching(n, m) == confdim_lower_mackay(n, 3 * m - 7)


def test_high_precision_oracle_20_points():
    cases = [(n, m) for n in (2, 3, 4, 5, 9) for m in (5, 6, 8, 11)]
    assert len(cases) == 20
    for n, m in cases:
        got = confdim_lower_branching(n, m)
        exact = 1 + mpmath.log(n) / mpmath.log(3 * m - 7)
        assert abs(got - float(exact)) <= 1e-12 * float(exact)


def test_genus_bound_example():
    assert genus_lower_bound(3, 34) == pytest.approx(2.7, abs=1e-12)


def test_genus_bound_domain():
    with pytest.raises(BadParams):
        genus_lower_bound(2, 10)
    with pytest.raises(BadParams):
        genus_lower_bound(3, 0)


def test_min_edges_values():
    assert min_edges(1) == 5
    assert min_edges(2) == 15
    assert min_edges(3) == 34


def test_genus_bound_superlinear_along_min_edges():
    values = [genus_lower_bound(n, min_edges(n)) for n in range(3, 11)]
    assert all(a < b for a, b in zip(values, values[1:]))
    # superlinear: successive differences increase
    diffs = [b - a for a, b in zip(values, values[1:])]
    assert all(a < b for a, b in zip(diffs, diffs[1:]))


def test_genm_params():
    assert genm_branching_params(4, 2) == (2, 8)
    assert genm_branching_params(3, 4) == (3, 6)
    assert genm_branching_params(3, 2) == (1, 6)
    assert genm_branching_params(3, 3) == (2, 6)
    assert genm_branching_params(6, 3) == (3, 12)
    assert genm_branching_params(8, 2) == (2, 16)


def test_genm_rejects_digons():
    with pytest.raises(BadParams):
        genm_branching_params(2, 4)


def test_reports():
    rep = report("branching", n=3, m=6)
    assert rep.value == confdim_lower_branching(3, 6)
    assert rep.as_dict()["inputs"] == {"m": 6, "n": 3}
    rep = report("genm", m=4, q=2)
    assert "(2, 8)" in rep.formula
    with pytest.raises(BadParams):
        report("nonsense")
