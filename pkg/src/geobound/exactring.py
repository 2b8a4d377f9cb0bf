"""Exact arithmetic in Z, Z[w] (w^2 = w + 1), Q(sqrt 5) and finite quotient rings.

Elements of Z[w] are stored as integer pairs ``(a, b)`` meaning ``a + b*w``; the
real embedding sends ``w`` to ``(1 + sqrt 5)/2`` and Galois conjugation sends it to
``1 - w``.  Everything here is exact: signs are decided with integer arithmetic,
never with floats.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering
from math import gcd, isqrt
from typing import Iterable, Iterator, Mapping, Union

from .errors import DomainError, ModulusError

IntLike = Union[int, "GoldenInt"]


def _sign_sqrt5(u: int, v: int) -> int:
    """Sign of u + v*sqrt(5) for integers u, v."""
    if v == 0:
        return (u > 0) - (u < 0)
    if u == 0 or (u > 0) == (v > 0):
        return 1 if (u > 0 or (u == 0 and v > 0)) else -1
    # opposite signs: compare u^2 with 5 v^2
    if u * u > 5 * v * v:
        return 1 if u > 0 else -1
    return 1 if v > 0 else -1


@total_ordering
@dataclass(frozen=True, slots=True)
class GoldenInt:
    """The golden integer ``a + b*w``."""

    a: int = 0
    b: int = 0

    @classmethod
    def coerce(cls, x: IntLike) -> GoldenInt:
        if isinstance(x, GoldenInt):
            return x
        if isinstance(x, int):
            return cls(x, 0)
        raise TypeError(f"cannot coerce {type(x).__name__} to GoldenInt")

    @classmethod
    def from_pair(cls, pair: Iterable[int]) -> GoldenInt:
        a, b = pair
        return cls(int(a), int(b))

    def to_pair(self) -> list[int]:
        return [self.a, self.b]

    # ring structure
    def __add__(self, other: IntLike) -> GoldenInt:
        o = GoldenInt.coerce(other)
        return GoldenInt(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other: IntLike) -> GoldenInt:
        o = GoldenInt.coerce(other)
        return GoldenInt(self.a - o.a, self.b - o.b)

    def __rsub__(self, other: IntLike) -> GoldenInt:
        return GoldenInt.coerce(other) - self

    def __neg__(self) -> GoldenInt:
        return GoldenInt(-self.a, -self.b)

    def __mul__(self, other: IntLike) -> GoldenInt:
        o = GoldenInt.coerce(other)
        bd = self.b * o.b
        return GoldenInt(self.a * o.a + bd, self.a * o.b + self.b * o.a + bd)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> GoldenInt:
        if k < 0:
            raise DomainError("negative powers are not ring elements")
        result, base = GoldenInt(1, 0), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conj(self) -> GoldenInt:
        """Galois conjugate: w -> 1 - w."""
        return GoldenInt(self.a + self.b, -self.b)

    def norm(self) -> int:
        """Field norm x * conj(x), an ordinary integer."""
        return self.a * self.a + self.a * self.b - self.b * self.b

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_rational(self) -> bool:
        return self.b == 0

    def sign(self) -> int:
        """Sign under the identity embedding w = (1 + sqrt 5)/2."""
        # a + b(1 + sqrt5)/2 has the sign of (2a + b) + b sqrt5
        return _sign_sqrt5(2 * self.a + self.b, self.b)

    def conj_sign(self) -> int:
        """Sign under the Galois-conjugate embedding."""
        return self.conj().sign()

    def __lt__(self, other: IntLike) -> bool:
        return (self - other).sign() < 0

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self.b == 0 and self.a == other
        if isinstance(other, GoldenInt):
            return self.a == other.a and self.b == other.b
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.a, self.b))

    def divides(self, other: IntLike) -> bool:
        try:
            exact_div(other, self)
        except DomainError:
            return False
        return True

    def __float__(self) -> float:
        return self.a + self.b * (1 + 5 ** 0.5) / 2

    def __repr__(self) -> str:
        return f"GoldenInt({self.a}, {self.b})"

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        w = "w" if abs(self.b) == 1 else f"{abs(self.b)}w"
        if self.a == 0:
            return w if self.b > 0 else f"-{w}"
        return f"{self.a} {'+' if self.b > 0 else '-'} {w}"


OMEGA = GoldenInt(0, 1)
ZERO = GoldenInt(0, 0)
ONE = GoldenInt(1, 0)


def exact_div(x: IntLike, y: IntLike) -> GoldenInt:
    """Return x / y in Z[w], raising DomainError when y does not divide x."""
    x, y = GoldenInt.coerce(x), GoldenInt.coerce(y)
    n = y.norm()
    if n == 0:
        raise DomainError("division by zero")
    p = x * y.conj()
    if p.a % n or p.b % n:
        raise DomainError(f"{y} does not divide {x} in Z[w]")
    return GoldenInt(p.a // n, p.b // n)


@total_ordering
@dataclass(frozen=True, slots=True)
class GoldenRational:
    """Element of Q(sqrt 5) stored as GoldenInt numerator over a positive integer."""

    num: GoldenInt
    den: int = 1

    def __post_init__(self) -> None:
        if self.den == 0:
            raise DomainError("zero denominator")
        num, den = self.num, self.den
        if den < 0:
            num, den = -num, -den
        g = gcd(gcd(num.a, num.b), den)
        if g > 1:
            num, den = GoldenInt(num.a // g, num.b // g), den // g
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @classmethod
    def coerce(cls, x: Union[int, GoldenInt, GoldenRational]) -> GoldenRational:
        if isinstance(x, GoldenRational):
            return x
        return cls(GoldenInt.coerce(x), 1)

    def __add__(self, other) -> GoldenRational:
        o = GoldenRational.coerce(other)
        return GoldenRational(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> GoldenRational:
        return GoldenRational(-self.num, self.den)

    def __sub__(self, other) -> GoldenRational:
        return self + (-GoldenRational.coerce(other))

    def __rsub__(self, other) -> GoldenRational:
        return GoldenRational.coerce(other) - self

    def __mul__(self, other) -> GoldenRational:
        o = GoldenRational.coerce(other)
        return GoldenRational(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> GoldenRational:
        o = GoldenRational.coerce(other)
        if o.num.is_zero():
            raise DomainError("division by zero")
        # (n1/d1) / (n2/d2) = n1 d2 conj(n2) / (d1 N(n2))
        n2 = o.num.norm()
        return GoldenRational(self.num * o.num.conj() * o.den, self.den * n2)

    def __rtruediv__(self, other) -> GoldenRational:
        return GoldenRational.coerce(other) / self

    def sign(self) -> int:
        return self.num.sign()

    def __lt__(self, other) -> bool:
        return (self - other).sign() < 0

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, GoldenInt)):
            other = GoldenRational.coerce(other)
        if isinstance(other, GoldenRational):
            return self.num == other.num and self.den == other.den
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __float__(self) -> float:
        return float(self.num) / self.den

    def __repr__(self) -> str:
        return f"GoldenRational({self.num!r}, {self.den})"

    def __str__(self) -> str:
        return str(self.num) if self.den == 1 else f"({self.num})/{self.den}"


# ---------------------------------------------------------------------------
# primes and factored integers


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


@dataclass(frozen=True)
class FactoredInt:
    """A positive integer together with its prime factorisation."""

    factors: Mapping[int, int]

    def __post_init__(self) -> None:
        clean = {int(p): int(e) for p, e in sorted(self.factors.items()) if e}
        for p, e in clean.items():
            if e < 0 or not is_prime(p):
                raise DomainError(f"invalid factor {p}^{e}")
        object.__setattr__(self, "factors", clean)

    @property
    def value(self) -> int:
        out = 1
        for p, e in self.factors.items():
            out *= p ** e
        return out

    def __int__(self) -> int:
        return self.value

    def exponent(self, p: int) -> int:
        return self.factors.get(p, 0)

    def primes(self) -> list[int]:
        return list(self.factors)

    def lcm(self, other: FactoredInt) -> FactoredInt:
        keys = set(self.factors) | set(other.factors)
        return FactoredInt({p: max(self.exponent(p), other.exponent(p)) for p in keys})

    def gcd(self, other: FactoredInt) -> FactoredInt:
        keys = set(self.factors) & set(other.factors)
        return FactoredInt({p: min(self.exponent(p), other.exponent(p)) for p in keys})

    def __mul__(self, other: FactoredInt) -> FactoredInt:
        keys = set(self.factors) | set(other.factors)
        return FactoredInt({p: self.exponent(p) + other.exponent(p) for p in keys})

    def divides(self, n: int) -> bool:
        return n % self.value == 0

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self.value == other
        if isinstance(other, FactoredInt):
            return dict(self.factors) == dict(other.factors)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(tuple(self.factors.items()))

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.factors.items())

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        body = " * ".join(f"{p}^{e}" for p, e in self.factors.items())
        return f"{self.value} = {body}"

    def to_json(self) -> dict:
        return {"value": self.value, "factors": {str(p): e for p, e in self.factors.items()}}


def factorize(n: int) -> FactoredInt:
    """Prime factorisation by trial division."""
    if n < 1:
        raise DomainError(f"cannot factor {n}")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return FactoredInt(out)


def lcm_factored(values: Iterable[int | FactoredInt]) -> FactoredInt:
    out = FactoredInt({})
    for v in values:
        out = out.lcm(v if isinstance(v, FactoredInt) else factorize(v))
    return out


# ---------------------------------------------------------------------------
# quotient rings


@dataclass(frozen=True)
class QuotientRing:
    """Z/m (``golden=False``) or Z[w]/(p) realised as F_p[t]/(t^2 - t - 1)."""

    modulus: int
    golden: bool = False

    def __post_init__(self) -> None:
        if self.golden:
            if self.modulus % 2 == 0 or not is_prime(self.modulus):
                raise ModulusError(f"Z[w] reductions need an odd prime, got {self.modulus}")
        elif self.modulus < 2:
            raise ModulusError(f"modulus must be >= 2, got {self.modulus}")

    def __call__(self, x: IntLike) -> QuotientElem:
        return self.reduce(x)

    def reduce(self, x: IntLike) -> QuotientElem:
        x = GoldenInt.coerce(x)
        if not self.golden and x.b:
            raise DomainError("cannot reduce an irrational element modulo an integer of Z")
        return QuotientElem(self, x.a % self.modulus, x.b % self.modulus)

    def is_field(self) -> bool:
        """Whether the quotient is a field (inert prime over Z[w], prime m over Z)."""
        p = self.modulus
        if not self.golden:
            return is_prime(p)
        if p == 5:
            return False
        # t^2 - t - 1 irreducible iff its discriminant 5 is a non-residue
        return pow(5, (p - 1) // 2, p) == p - 1

    @property
    def size(self) -> int:
        return self.modulus ** 2 if self.golden else self.modulus

    def __str__(self) -> str:
        return f"Z[w]/({self.modulus})" if self.golden else f"Z/{self.modulus}"


@dataclass(frozen=True, slots=True)
class QuotientElem:
    """Canonical representative of a class in a QuotientRing."""

    ring: QuotientRing
    a: int
    b: int = 0

    def _check(self, other: QuotientElem | IntLike) -> QuotientElem:
        if not isinstance(other, QuotientElem):
            return self.ring.reduce(other)
        if other.ring != self.ring:
            raise ModulusError("elements of different quotient rings")
        return other

    def __add__(self, other) -> QuotientElem:
        o = self._check(other)
        m = self.ring.modulus
        return QuotientElem(self.ring, (self.a + o.a) % m, (self.b + o.b) % m)

    __radd__ = __add__

    def __neg__(self) -> QuotientElem:
        m = self.ring.modulus
        return QuotientElem(self.ring, -self.a % m, -self.b % m)

    def __sub__(self, other) -> QuotientElem:
        return self + (-self._check(other))

    def __mul__(self, other) -> QuotientElem:
        o = self._check(other)
        m = self.ring.modulus
        bd = self.b * o.b
        return QuotientElem(self.ring, (self.a * o.a + bd) % m, (self.a * o.b + self.b * o.a + bd) % m)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def to_pair(self) -> list[int]:
        return [self.a, self.b]


def golden_reduce(x: IntLike, p: int) -> QuotientElem:
    """Class of x in Z[w]/(p) for an odd rational prime p."""
    return QuotientRing(p, golden=True).reduce(x)
