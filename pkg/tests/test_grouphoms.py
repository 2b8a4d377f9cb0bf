from __future__ import annotations

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from geobound.colouring import Colouring
from geobound.coxdiagram import CoxeterDiagram, classify_subdiagram, derive_diagram
from geobound.datasets import load_dataset
from geobound.errors import DomainError, OrderOverflow
from geobound.exactring import factorize
from geobound.grouphoms import (
    ColouringMap,
    MatrixRep,
    ReductionMap,
    RetractionMap,
    Word,
    coset_enumerate,
    coxeter_presentation,
    newman_premise,
    no_torsion_premise,
    orientation_parity,
    reduction_order,
    retraction_check,
    subgroup_lemma_check,
)
from geobound.qspace import ULTRAPARALLEL

P4 = load_dataset("P4-cusped")
words4 = st.lists(st.integers(1, 10), max_size=12).map(lambda xs: Word(tuple(xs)))


@given(st.lists(st.integers(1, 300), max_size=20))
def test_word_roundtrip(xs):
    w = Word(tuple(xs))
    assert Word.parse(w.serialize()) == w
    assert Word.parse(" ".join(f"s{x}" for x in xs)) == w
    assert (w * w.inverse()).reduced() == Word()


def test_word_text():
    assert str(Word.parse("1 2 7")) == "s1s2s7"
    assert str(Word()) == "1"
    assert Word.parse("1,2") ** 2 == Word((1, 2, 1, 2))
    with pytest.raises(DomainError):
        Word.parse("a b")
    with pytest.raises(DomainError):
        Word((0,))


@given(words4, words4)
def test_retraction_is_multiplicative_on_words(u, v):
    r = RetractionMap(frozenset({3, 4, 6}))
    assert r.evaluate(u * v) == (r.evaluate(u) * r.evaluate(v)).reduced()


@given(words4)
def test_parity_agrees_with_determinant(w):
    assert orientation_parity(w, MatrixRep(P4)) in (-1, 1)


@given(words4, words4)
def test_colouring_map_homomorphism(u, v):
    c = ColouringMap(Colouring.from_list([1, 2, 4, 3, 5, 6, 7, 1, 2, 4], 3))
    assert c.evaluate(u * v) == c.evaluate(u) ^ c.evaluate(v)


@given(st.lists(st.integers(1, 10), min_size=1, max_size=6), st.sampled_from([3, 4, 5]))
def test_reduction_order_is_exact_order(xs, m):
    w = Word(tuple(xs))
    k = reduction_order(P4, w, m)
    phi = ReductionMap(P4, m)
    g = phi.evaluate(w)
    assert (g ** k.value).is_identity()
    for p in k.primes():
        assert not (g ** (k.value // p)).is_identity()


@given(st.lists(st.integers(1, 10), min_size=1, max_size=5), st.lists(st.integers(1, 10), max_size=4))
def test_order_conjugation_invariant(xs, us):
    w, u = Word(tuple(xs)), Word(tuple(us))
    assert reduction_order(P4, u * w * u.inverse(), 3) == reduction_order(P4, w, 3)


def test_order_cap():
    with pytest.raises(OrderOverflow):
        reduction_order(load_dataset("P5-compact"), "1 2 3 4 7", 7, cap=100)


def test_compact_orders():
    p5 = load_dataset("P5-compact")
    assert reduction_order(p5, "1 2 3 4 7", 7) == factorize(800)
    assert reduction_order(p5, "1 2 3 4 7", 11) == factorize(8052)


def lemma_oracle(k1: int, k2: int) -> bool:
    """No j gives the same nontrivial order in Z/k1 and Z/k2 (a torsion element in the preimage)."""
    for j in range(1, math.lcm(k1, k2)):
        o1, o2 = k1 // math.gcd(j, k1), k2 // math.gcd(j, k2)
        if o1 == o2 > 1:
            return False
    return True


@given(st.integers(1, 120), st.integers(1, 120))
def test_lemma_condition_against_cyclic_oracle(k1, k2):
    lem = subgroup_lemma_check(k1, k2)
    assert lem.holds == lemma_oracle(k1, k2)
    assert lem.lcm.value == math.lcm(k1, k2)
    assert subgroup_lemma_check(k2, k1).holds == lem.holds


def test_lemma_examples():
    lem = subgroup_lemma_check(800, 8052)
    assert lem.holds and lem.lcm.value == 1610400
    assert lem.shared == ((2, 5, 2),)
    assert not subgroup_lemma_check(4, 4).holds
    assert subgroup_lemma_check(84, 34).holds
    with pytest.raises(DomainError):
        subgroup_lemma_check(0, 3)


def test_premises():
    assert no_torsion_premise(7, 57600)
    assert no_torsion_premise(11, factorize(230400))
    assert not no_torsion_premise(5, 57600)
    assert not no_torsion_premise(2, 9)
    assert not no_torsion_premise(9, 8)
    assert newman_premise(3) and newman_premise(4) and not newman_premise(2)


def test_retraction_check():
    d = CoxeterDiagram([1, 2, 3], {(1, 2): 3, (2, 3): 4})
    assert not retraction_check(d, [1]).ok
    assert retraction_check(d, [1, 2]).ok
    assert retraction_check(d, [3]).ok
    with pytest.raises(DomainError):
        retraction_check(d, [9])


def test_retraction_p6():
    d = derive_diagram(load_dataset("P6-compact"))
    assert retraction_check(d, [6, 9, 17]).ok


TRI = CoxeterDiagram([1, 2, 3], {(1, 2): ULTRAPARALLEL, (1, 3): ULTRAPARALLEL})  # (2, inf, inf)


def test_coset_index_infinite_triangle_group():
    res = coset_enumerate(coxeter_presentation(TRI), ["1 2", "3 1 2 3"])
    assert res.complete and res.index == 4


def test_coset_cap():
    res = coset_enumerate(coxeter_presentation(TRI), ["1 2"], max_cosets=500)
    assert res.status == "cap-exceeded"


finite_labels = st.sampled_from([2, 3, 4, 5, 6])


@given(finite_labels, finite_labels, st.sets(st.integers(1, 3), max_size=2))
def test_parabolic_index_is_order_ratio(a, b, sub):
    d = CoxeterDiagram([1, 2, 3], {(1, 2): a, (2, 3): b})
    whole = classify_subdiagram(d, [1, 2, 3])
    if whole.kind != "elliptic":
        return
    part = classify_subdiagram(d, sorted(sub)).order if sub else 1
    res = coset_enumerate(coxeter_presentation(d), [[x] for x in sorted(sub)], max_cosets=5000)
    assert res.index == whole.order // part
