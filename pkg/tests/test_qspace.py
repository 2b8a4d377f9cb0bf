from __future__ import annotations

from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from geobound.errors import CrystallographicError, DomainError, RootError
from geobound.exactring import GoldenInt
from geobound.qspace import (
    PARALLEL,
    ULTRAPARALLEL,
    QuadraticForm,
    QuadraticSpace,
    admissible,
    bilinear,
    check_root,
    classify_pair,
    reflection_matrix,
)

LOR3 = QuadraticForm.lorentzian(3)
W = GoldenInt(0, 1)

# every integral root of norm 1 or 2 with small coordinates in the form -x0^2 + x1^2 + x2^2 + x3^2
SMALL_ROOTS = [
    v for v in product(range(-2, 3), repeat=4)
    if bilinear(LOR3, v, v) in (GoldenInt(1), GoldenInt(2))
]

vec = st.lists(st.integers(-5, 5), min_size=4, max_size=4)


def test_small_root_pool_nonempty():
    assert len(SMALL_ROOTS) > 50


@given(st.sampled_from(SMALL_ROOTS))
def test_reflection_identities(e):
    r = reflection_matrix(LOR3, e)
    assert all(r.check(LOR3, e).values())


@given(st.sampled_from(SMALL_ROOTS), vec, vec)
def test_reflection_preserves_form(e, x, y):
    R = reflection_matrix(LOR3, e).matrix
    assert bilinear(LOR3, R.apply(x), R.apply(y)) == bilinear(LOR3, x, y)


@given(st.sampled_from(SMALL_ROOTS), vec)
def test_reflection_fixes_orthogonal_complement(e, x):
    R = reflection_matrix(LOR3, e).matrix
    # project x to e-perp over Z by x' = n x - <x,e> e
    n = bilinear(LOR3, e, e)
    p = bilinear(LOR3, x, e)
    xp = [n * a - p * b for a, b in zip(x, e)]
    assert R.apply(xp) == [GoldenInt.coerce(c) for c in xp]


def test_golden_reflection():
    form = QuadraticForm(((-1, -1), 1, 1), "Z[w]")  # -w x0^2 + x1^2 + x2^2
    r = reflection_matrix(form, (0, 1, 0))
    assert all(r.check(form, (0, 1, 0)).values())


def test_bad_roots():
    with pytest.raises(RootError):
        reflection_matrix(LOR3, (1, 1, 0, 0))
    with pytest.raises(RootError):
        reflection_matrix(LOR3, (1, 0, 0, 0))
    with pytest.raises(CrystallographicError):
        reflection_matrix(LOR3, (0, 1, 1, 1))  # norm 3 does not divide 2


def test_check_root_statuses():
    assert check_root(LOR3, (0, 1, 0, 0), 1).status == "ok"
    assert check_root(LOR3, (1, 1, 0, 0), 1).status == "isotropic"
    assert check_root(LOR3, (2, 1, 0, 0), 1).status == "timelike"
    assert check_root(LOR3, (0, 1, 1, 1), 1).status == "non-crystallographic"
    assert check_root(LOR3, (0, 1, 1, 0), 1, expected_norm=1).status == "norm-mismatch"


def test_pair_classes():
    assert classify_pair(LOR3, (0, 1, 0, 0), (0, 0, 1, 0)).label == 2
    assert classify_pair(LOR3, (0, 1, 0, 0), (0, -1, 1, 0)).label == 4
    assert classify_pair(LOR3, (0, 1, -1, 0), (0, 0, 1, -1)).label == 3
    assert classify_pair(LOR3, (0, 1, 0, 0), (1, -1, 0, 0)).kind == "invalid"  # isotropic root
    assert classify_pair(LOR3, (0, -1, 0, 0), (1, 1, 1, 0)).label == PARALLEL
    assert classify_pair(LOR3, (0, -1, 0, 0), (1, 2, 0, 0)).label == ULTRAPARALLEL
    assert classify_pair(LOR3, (0, 1, 0, 0), (0, 1, 1, 0)).kind == "invalid"  # obtuse


def test_pentagonal_angle_over_golden_ring():
    form = QuadraticForm((-1, 1, 1, 1), "Z[w]")
    a = (0, 2, 0, 0)
    b = (0, -W, 1, W - 1)  # (w - 1)^2 = 2 - w, so b has norm 4
    assert bilinear(form, b, b) == GoldenInt(4)
    assert classify_pair(form, a, b).label == 5


def test_admissibility():
    assert admissible(LOR3).ok
    assert not admissible(QuadraticForm((1, 1, 1))).ok
    assert admissible(QuadraticForm(((1, -2), 1, 1), "Z[w]")).ok  # 1 - 2w < 0, conjugate 1 + 2/w > 0
    with pytest.raises(DomainError):
        QuadraticForm(((0, 1), 1), "Z")


def test_space_restrict_and_validate():
    space = QuadraticSpace(LOR3, {1: (0, 1, 0, 0), 2: (0, 0, 1, 0), 3: (1, 1, 0, 0)})
    rep = space.validate()
    assert rep.by_status() == {"ok": [1, 2], "isotropic": [3]}
    assert space.valid_labels() == [1, 2]
    assert space.restrict([2]).labels == [2]
