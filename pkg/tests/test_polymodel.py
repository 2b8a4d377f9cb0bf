from __future__ import annotations

import random

import pytest

from geobound.colouring import (
    BIPYRAMID_COLOURS,
    DODECAHEDRON_COLOURS,
    bipyramid_constraints,
    dodecahedron_constraints,
    find_proper_labelling,
)
from geobound.errors import DataError, DomainError
from geobound.exactring import GoldenInt
from geobound.polymodel import (
    BIPYRAMID_LABELLING,
    DODECAHEDRON_LABELLING,
    ICOSIAN_ADJACENT,
    FacetComplex,
    bipyramid_model,
    cell120_model,
    dodecahedron_model,
    face_graph,
    graph_isomorphism,
    icosian_graph,
    icosians,
    level2_model,
    load_model,
    octagon_model,
    quat_dot,
    quat_mul,
    raw_dodecahedron,
)

TWO = GoldenInt(2)


def test_octagon():
    m = octagon_model()
    assert len(m.facets) == 8 and len(m.vertices) == 8
    assert m.neighbours(1) == [5, 6]
    assert not m.adjacent(1, 2)
    assert m.sanity() == []


def test_dodecahedron_counts():
    m = dodecahedron_model()
    assert (len(m.facets), len(m.vertices), len(m.edges)) == (12, 20, 30)
    assert all(len(v) == 3 for v in m.vertices)
    assert all(len(m.neighbours(f)) == 5 for f in m.facets)
    assert m.sanity() == []


def test_dodecahedron_pentagon_around_face_5():
    m = dodecahedron_model()
    ring = (1, 3, 9, 11, 6)
    assert m.neighbours(5) == sorted(ring)
    assert all(m.adjacent(ring[i], ring[(i + 1) % 5]) for i in range(5))


def test_dodecahedron_labelling_is_first_search_result():
    res = find_proper_labelling(raw_dodecahedron(), DODECAHEDRON_COLOURS, dodecahedron_constraints())
    assert res.found
    assert res.mapping == DODECAHEDRON_LABELLING


def test_bipyramid_labelling_is_first_search_result():
    _, raw = level2_model(3)
    res = find_proper_labelling(raw, BIPYRAMID_COLOURS, bipyramid_constraints())
    assert res.mapping == BIPYRAMID_LABELLING


def test_bipyramid_census():
    m = bipyramid_model()
    assert len(m.facets) == 6
    assert (len(m.vertices), len(m.ideal_vertices)) == (2, 3)
    assert m.sanity() == []


def test_icosians_form_a_group():
    qs = icosians()
    assert len(qs) == 120 == len(set(qs))
    pool = set(qs)
    rng = random.Random(0)
    for _ in range(200):
        p, q = rng.choice(qs), rng.choice(qs)
        assert quat_mul(p, q) in pool
    for q in qs:
        assert quat_dot(q, q) == GoldenInt(4)  # doubled unit quaternions


def test_icosian_graph_regular_and_left_invariant():
    g = icosian_graph()
    qs = icosians()
    assert all(len(v) == 12 for v in g.values())
    index = {q: i for i, q in enumerate(qs)}
    rng = random.Random(1)
    for _ in range(5):
        h = rng.choice(qs)
        for i in range(120):
            for j in g[i]:
                a = index[quat_mul(h, qs[i])]
                b = index[quat_mul(h, qs[j])]
                assert b in g[a]
    i, j = 0, min(g[0])
    assert quat_dot(qs[i], qs[j]) == ICOSIAN_ADJACENT


def test_cell120_model():
    m = cell120_model()
    assert len(m.facets) == 120
    assert all(len(m.neighbours(f)) == 12 for f in m.facets)
    assert len(m.vertices) == 600 and all(len(v) == 4 for v in m.vertices)
    assert len(m.edges) == 1200
    assert m.sanity() == []


def test_cell120_neighbourhood_is_labelled_dodecahedron():
    m = cell120_model()
    assert m.neighbours(120) == list(range(1, 13))
    local = {f: frozenset(x for x in m.neighbours(f) if x <= 12) for f in range(1, 13)}
    assert local == face_graph(dodecahedron_model())


def test_graph_isomorphism_negative():
    square = {0: frozenset({1, 3}), 1: frozenset({0, 2}), 2: frozenset({1, 3}), 3: frozenset({0, 2})}
    star = {0: frozenset({1, 2, 3}), 1: frozenset({0}), 2: frozenset({0}), 3: frozenset({0})}
    assert graph_isomorphism(square, star) is None
    assert graph_isomorphism(square, square) is not None


@pytest.mark.parametrize("n, facets", [(3, 6), (4, 10), (5, 16), (6, 27), (7, 56), (8, 240)])
def test_level2_facet_counts(n, facets):
    # n <= 4: n + C(n,2); n = 5 carries one further root 2v0 + v1 + ... + v5 in the data
    _, m = level2_model(n)
    assert len(m.facets) == facets


def test_level2_range():
    with pytest.raises(DomainError):
        level2_model(9)


def test_export_parse_roundtrip():
    for m in (octagon_model(), dodecahedron_model(), bipyramid_model()):
        back = FacetComplex.parse(m.export())
        assert back.facets == m.facets
        assert set(back.vertices) == set(m.vertices)
        assert set(back.edges) == set(m.edges)
        assert set(back.ideal_vertices) == set(m.ideal_vertices)


def test_relabel_must_be_injective():
    with pytest.raises(DomainError):
        octagon_model().relabel({1: 2})


def test_unknown_model():
    with pytest.raises(DataError):
        load_model("cube")
