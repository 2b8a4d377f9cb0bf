from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from geobound.errors import ShapeError
from geobound.exactring import GoldenInt, GoldenRational, QuotientRing
from geobound.linalg import GoldenMatrix, ModMatrix, bareiss_det, nullspace, rank

PHI = (1 + 5 ** 0.5) / 2

entry = st.builds(GoldenInt, st.integers(-20, 20), st.integers(-20, 20))


def matrices(n):
    return st.lists(st.lists(entry, min_size=n, max_size=n), min_size=n, max_size=n)


def to_float(m: GoldenMatrix) -> np.ndarray:
    return m.a.astype(float) + PHI * m.b.astype(float)


@given(matrices(3), matrices(3))
def test_product_matches_floats(x, y):
    a, b = GoldenMatrix.from_rows(x), GoldenMatrix.from_rows(y)
    assert np.allclose(to_float(a @ b), to_float(a) @ to_float(b))


@given(matrices(3), matrices(3))
def test_det_multiplicative(x, y):
    a, b = GoldenMatrix.from_rows(x), GoldenMatrix.from_rows(y)
    assert (a @ b).det() == a.det() * b.det()


@given(matrices(4))
def test_det_matches_floats(x):
    m = GoldenMatrix.from_rows(x)
    d = m.det()
    ref = np.linalg.det(to_float(m))
    assert abs(float(d) - ref) <= 1e-6 * max(1.0, abs(ref))


def test_det_needs_square():
    with pytest.raises(ShapeError):
        bareiss_det([[1, 2]])


def test_identity_and_transpose():
    i = GoldenMatrix.identity(3)
    assert i.is_identity()
    m = GoldenMatrix.from_rows([[1, GoldenInt(0, 1)], [2, 3]])
    assert m.T.T == m
    assert m[0, 1] == GoldenInt(0, 1)


def test_big_entries_stay_exact():
    big = GoldenInt(2 ** 40, 2 ** 40)
    m = GoldenMatrix.from_rows([[big, 0], [0, big]])
    p = m @ m @ m
    assert p[0, 0] == big ** 3


@given(matrices(3), matrices(3), st.sampled_from([3, 7, 11]))
def test_reduction_commutes_with_product(x, y, p):
    ring = QuotientRing(p, golden=True)
    a, b = GoldenMatrix.from_rows(x), GoldenMatrix.from_rows(y)
    assert (a @ b).reduce(ring) == a.reduce(ring) @ b.reduce(ring)


@given(matrices(2), st.integers(0, 40))
def test_fast_power(x, k):
    ring = QuotientRing(7, golden=True)
    m = GoldenMatrix.from_rows(x).reduce(ring)
    slow = ModMatrix.identity(ring, 2)
    for _ in range(k):
        slow = slow @ m
    assert m ** k == slow


def test_integer_reduction_refuses_irrational():
    m = GoldenMatrix.from_rows([[GoldenInt(0, 1)]])
    with pytest.raises(ShapeError):
        m.reduce(QuotientRing(4))


@given(st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=4))
def test_rank_nullity(rows):
    r = rank(rows)
    assert r == np.linalg.matrix_rank(np.array(rows, dtype=float))
    basis = nullspace(rows, 4)
    assert len(basis) == 4 - r
    zero = GoldenRational.coerce(0)
    for v in basis:
        for row in rows:
            total = zero
            for a, b in zip(row, v):
                total = total + GoldenRational.coerce(a) * b
            assert total == zero


def test_rank_over_golden_field():
    w = GoldenInt(0, 1)
    # second row is w times the first
    assert rank([[1, w], [w, w + 1]]) == 1
