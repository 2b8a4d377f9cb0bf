from __future__ import annotations

from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from geobound.colouring import (
    DODECAHEDRON_COLOURS,
    OCTAGON_COLOURS,
    Colouring,
    cell120_colouring,
    check_orientable,
    check_proper,
    colouring_rank,
    extend_colouring,
    gf2_rank,
    independent,
    verify_witness,
)
from geobound.errors import DataError, DomainError
from geobound.polymodel import octagon_model, polygon_model


def colourings(max_facets=8, s=3):
    return st.integers(1, max_facets).flatmap(
        lambda m: st.lists(st.integers(0, 2 ** s - 1), min_size=m, max_size=m)
    ).map(lambda cols: Colouring.from_list(cols, s))


def odd_zero_subsets(c: Colouring):
    labels = c.labels
    for k in range(1, len(labels) + 1, 2):
        for sub in combinations(labels, k):
            acc = 0
            for f in sub:
                acc ^= c[f]
            if acc == 0:
                yield sub


@given(colourings())
def test_orientability_against_brute_force(c):
    rep = check_orientable(c)
    witnesses = list(odd_zero_subsets(c))
    assert rep.orientable == (not witnesses)
    if rep.orientable:
        x = rep.functional
        assert all(bin(x & c[f]).count("1") % 2 == 1 for f in c.labels)
    else:
        assert verify_witness(c, rep.witness)
        smallest = min(len(w) for w in witnesses)
        if smallest <= 3:
            assert rep.witness == min(w for w in witnesses if len(w) == smallest)


@given(colourings())
def test_rank_matches_span_size(c):
    span = {0}
    for f in c.labels:
        span |= {x ^ c[f] for x in span}
    assert colouring_rank(c).index == len(span)


@given(st.lists(st.integers(0, 63), max_size=7))
def test_independent_iff_full_rank(vs):
    assert independent(vs) == (gf2_rank(vs) == len(vs))


def test_octagon_colouring():
    c = Colouring.from_list(OCTAGON_COLOURS, 3)
    m = octagon_model()
    assert check_proper(m, c).ok
    rep = check_orientable(c)
    assert not rep.orientable and rep.witness == (1, 5, 6)


def test_improper_colouring_reported():
    m = polygon_model((1, 2, 3, 4), "square")
    c = Colouring.from_list((1, 1, 2, 2), 2)
    rep = check_proper(m, c)
    assert not rep.ok
    assert {v.facets for v in rep.violations} == {(1, 2), (3, 4)}
    assert "violation" in rep.text().lower() or rep.violations


def test_missing_colours():
    rep = check_proper(octagon_model(), Colouring.from_list((1, 2, 3), 3))
    assert not rep.ok and rep.missing


def test_all_ones_is_orientable():
    c = Colouring.from_list((1, 2, 4, 7), 3)
    rep = check_orientable(c)
    assert rep.orientable and rep.functional == 7


def test_extension():
    lam = cell120_colouring()
    assert lam[13] == 8 and lam[120] == 2 ** 110
    assert lam[5] == DODECAHEDRON_COLOURS[4]
    assert colouring_rank(lam).rank == 111
    with pytest.raises(DomainError):
        extend_colouring(Colouring.from_list((1, 2)), 1)


@given(colourings())
def test_file_roundtrip(c):
    assert Colouring.loads(c.dumps()) == c


def test_file_errors():
    with pytest.raises(DataError):
        Colouring.loads("1: 3\n")
    with pytest.raises(DataError):
        Colouring.loads("s 2\n1: 9\n")


def test_colour_vectors():
    c = Colouring.from_list((6,), 3)
    assert c.vector(1) == (1, 1, 0)
