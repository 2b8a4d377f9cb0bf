from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from geobound.errors import DomainError
from geobound.growth import (
    DODECAHEDRON,
    SURFACE,
    growth_report,
    growth_table,
    hall_count,
    log_ratio,
    oracle_count,
)


@pytest.mark.parametrize("r", [1, 2, 3])
@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_hall_matches_enumeration(r, n):
    assert hall_count(r, n) == oracle_count(r, n)


def test_known_values():
    assert [hall_count(2, n) for n in range(1, 6)] == [1, 3, 13, 71, 461]
    assert [hall_count(3, n) for n in range(1, 6)] == [1, 7, 97, 2143, 68641]


@given(st.integers(1, 60))
def test_cyclic_case(n):
    assert hall_count(1, n) == 1


@given(st.integers(2, 4), st.integers(1, 30))
def test_cumulative_bound(d, n):
    total = sum(hall_count(d, k) for k in range(1, n + 1))
    assert total >= math.factorial(n) ** (d - 1)


@given(st.integers(2, 4), st.integers(2, 25))
def test_transitive_count_dominates(d, n):
    # N_d(n) * (n-1)! counts transitive d-tuples, at most all (n!)^d of them
    assert 0 < hall_count(d, n) * math.factorial(n - 1) <= math.factorial(n) ** d


def test_large_index():
    # N_2(n) ~ n * n! with relative error O(1/n)
    n = 400
    ratio = hall_count(2, n) / (n * math.factorial(n))
    assert 0.99 < ratio < 1.0


def test_domain():
    with pytest.raises(DomainError):
        hall_count(0, 3)
    with pytest.raises(DomainError):
        oracle_count(2, 9)
    with pytest.raises(DomainError):
        growth_table(3, 0)


def test_surface_table():
    t = growth_report(SURFACE, 3)
    assert [r.index for r in t.rows] == [8, 16, 24]
    assert [r.measure for r in t.rows] == [Fraction(32), Fraction(64), Fraction(96)]
    assert t.measure_text(t.rows[0]) == "32π"
    assert t.ok


def test_dodecahedron_table():
    t = growth_report(DODECAHEDRON, 2)
    assert t.measure_text(t.rows[1]) == "16vol(D)"
    assert "scenario dodecahedron" in t.text()


def test_records_are_strings_for_big_ints():
    rec = growth_table(3, 30).records()[-1]
    assert rec["count"] == str(hall_count(3, 30))
    assert rec["meets_bound"]


def test_log_ratio_increases():
    vals = [log_ratio(3, n) for n in range(10, 51, 10)]
    assert vals == sorted(vals)
    assert 1.4 < vals[0] < vals[-1] < 2
