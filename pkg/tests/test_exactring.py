from __future__ import annotations

import math
from decimal import Decimal, getcontext

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from geobound.errors import DomainError, ModulusError
from geobound.exactring import (
    OMEGA,
    FactoredInt,
    GoldenInt,
    GoldenRational,
    QuotientRing,
    exact_div,
    factorize,
    golden_reduce,
    is_prime,
    lcm_factored,
)

PHI = (1 + math.sqrt(5)) / 2

small = st.integers(-10 ** 6, 10 ** 6)
golden = st.builds(GoldenInt, small, small)


def test_omega_squared():
    assert OMEGA * OMEGA == OMEGA + 1
    assert OMEGA.norm() == -1
    assert (OMEGA - 1) * OMEGA == 1


def test_str_forms():
    assert str(GoldenInt(2, 1)) in {"2+w", "2 + w"}
    assert str(GoldenInt(0, 0)) == "0"


@given(golden, golden, golden)
def test_ring_axioms(x, y, z):
    assert (x + y) * z == x * z + y * z
    assert (x * y) * z == x * (y * z)
    assert x * y == y * x
    assert x - x == GoldenInt(0, 0)


@given(golden, golden)
def test_norm_multiplicative(x, y):
    assert (x * y).norm() == x.norm() * y.norm()
    assert (x * y).conj() == x.conj() * y.conj()


@given(golden)
def test_sign_matches_float(x):
    f = x.a + x.b * PHI
    assume(abs(f) > 1e-6 * (abs(x.a) + abs(x.b) + 1))
    assert x.sign() == (1 if f > 0 else -1)


@given(golden, golden)
def test_order_total_and_translation_invariant(x, y):
    assert (x < y) + (y < x) + (x == y) == 1
    assert (x < y) == (x + 5 < y + 5)


def test_sign_near_cancellation():
    # F_{k+1} - F_k * phi shrinks like phi^-k; compare against 120-digit decimals
    getcontext().prec = 120
    phi = (1 + Decimal(5).sqrt()) / 2
    f = [0, 1]
    while len(f) < 90:
        f.append(f[-1] + f[-2])
    for k in range(1, 88):
        for x in (GoldenInt(f[k + 1], -f[k]), GoldenInt(-f[k + 1], f[k])):
            ref = Decimal(x.a) + Decimal(x.b) * phi
            assert x.sign() == (1 if ref > 0 else -1)


@given(golden, golden)
def test_exact_div_roundtrip(x, y):
    assume(not y.is_zero())
    assert exact_div(x * y, y) == x


def test_exact_div_refuses_inexact():
    with pytest.raises(DomainError):
        exact_div(GoldenInt(1, 0), GoldenInt(2, 0))


@given(golden, golden)
def test_rational_field_inverse(x, y):
    assume(not y.is_zero())
    q = GoldenRational.coerce(x) / GoldenRational.coerce(y)
    assert q * GoldenRational.coerce(y) == GoldenRational.coerce(x)


@given(st.integers(1, 10 ** 7))
def test_factorize_product(n):
    f = factorize(n)
    assert f.value == n
    assert all(is_prime(p) for p in f.primes())


def test_factored_text():
    assert str(factorize(800)) == "800 = 2^5 * 5^2"
    assert factorize(8052).primes() == [2, 3, 11, 61]


@given(st.integers(1, 10 ** 6), st.integers(1, 10 ** 6))
def test_lcm_gcd(a, b):
    fa, fb = factorize(a), factorize(b)
    assert fa.lcm(fb).value == math.lcm(a, b)
    assert fa.gcd(fb).value == math.gcd(a, b)
    assert lcm_factored([a, b]).value == math.lcm(a, b)


def test_lcm_of_orders():
    assert factorize(800).lcm(factorize(8052)).value == 1610400


def test_is_prime_small():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_quotient_rings():
    assert QuotientRing(7, golden=True).is_field()  # 5 is a non-residue mod 7
    assert not QuotientRing(11, golden=True).is_field()  # 11 splits
    assert QuotientRing(4).size == 4
    with pytest.raises(ModulusError):
        QuotientRing(9, golden=True)
    with pytest.raises(ModulusError):
        QuotientRing(1)
    with pytest.raises(DomainError):
        QuotientRing(3).reduce(OMEGA)


@given(golden, golden, st.sampled_from([3, 7, 11, 13, 29]))
def test_reduction_is_ring_homomorphism(x, y, p):
    r = QuotientRing(p, golden=True)
    assert r(x * y) == r(x) * r(y)
    assert r(x + y) == r(x) + r(y)
    assert golden_reduce(x, p) == r(x)


def test_omega_mod_p_satisfies_minimal_polynomial():
    r = QuotientRing(11, golden=True)
    w = r(OMEGA)
    assert (w * w - w - 1).is_zero()


def test_factored_int_equality():
    assert factorize(12) == FactoredInt({2: 2, 3: 1})
    assert factorize(1).value == 1
