"""Matrices over Z[w], its finite quotients, and Q(sqrt 5).

A matrix over Z[w] is a pair of integer arrays ``(A, B)`` standing for ``A + B*w``.
Products use ``w^2 = w + 1``:

    (A + Bw)(C + Dw) = (AC + BD) + (AD + BC + BD) w

Exact matrices use int64 while the entries are small enough that a product cannot
overflow, and fall back to Python integers (object arrays) otherwise.
"""
from __future__ import annotations

from typing import Sequence

import numpy as np

from .errors import ShapeError
from .exactring import GoldenInt, GoldenRational, QuotientRing

_INT64_SAFE = 2 ** 62


def _pair_matmul(a, b, c, d):
    bd = b @ d
    return a @ c + bd, a @ d + b @ c + bd


def _fits_int64(*arrays, n: int) -> bool:
    m = max((int(np.abs(x).max()) if x.size else 0) for x in arrays)
    return 3 * n * m * m < _INT64_SAFE


class GoldenMatrix:
    """Exact square or rectangular matrix with entries in Z[w]."""

    __slots__ = ("a", "b")

    def __init__(self, a, b=None):
        a = np.asarray(a)
        b = np.zeros_like(a) if b is None else np.asarray(b)
        if a.shape != b.shape or a.ndim != 2:
            raise ShapeError("GoldenMatrix needs two equal-shape 2-d arrays")
        self.a, self.b = a, b

    @classmethod
    def identity(cls, n: int) -> GoldenMatrix:
        return cls(np.eye(n, dtype=np.int64), np.zeros((n, n), dtype=np.int64))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[GoldenInt]]) -> GoldenMatrix:
        a = [[int(GoldenInt.coerce(x).a) for x in r] for r in rows]
        b = [[int(GoldenInt.coerce(x).b) for x in r] for r in rows]
        return cls._build(a, b)

    @classmethod
    def _build(cls, a, b) -> GoldenMatrix:
        a = np.array(a, dtype=object)
        b = np.array(b, dtype=object)
        n = a.shape[1] if a.ndim == 2 else 1
        if _fits_int64(a, b, n=n):
            a, b = a.astype(np.int64), b.astype(np.int64)
        return cls(a, b)

    @property
    def shape(self) -> tuple[int, int]:
        return self.a.shape

    def __getitem__(self, ij) -> GoldenInt:
        i, j = ij
        return GoldenInt(int(self.a[i, j]), int(self.b[i, j]))

    def to_rows(self) -> list[list[GoldenInt]]:
        r, c = self.shape
        return [[self[i, j] for j in range(c)] for i in range(r)]

    @property
    def T(self) -> GoldenMatrix:
        return GoldenMatrix(self.a.T.copy(), self.b.T.copy())

    def __matmul__(self, other: GoldenMatrix) -> GoldenMatrix:
        if self.shape[1] != other.shape[0]:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        arrays = (self.a, self.b, other.a, other.b)
        if any(x.dtype == object for x in arrays) or not _fits_int64(*arrays, n=self.shape[1]):
            arrays = tuple(x.astype(object) for x in arrays)
        a, b = _pair_matmul(*arrays)
        return GoldenMatrix._build(a, b) if a.dtype == object else GoldenMatrix(a, b)

    def __neg__(self) -> GoldenMatrix:
        return GoldenMatrix(-self.a, -self.b)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GoldenMatrix):
            return NotImplemented
        return (
            self.shape == other.shape
            and bool(np.all(self.a == other.a))
            and bool(np.all(self.b == other.b))
        )

    __hash__ = None

    def is_identity(self) -> bool:
        n, m = self.shape
        return n == m and self == GoldenMatrix.identity(n)

    def apply(self, v: Sequence[GoldenInt]) -> list[GoldenInt]:
        col = GoldenMatrix.from_rows([[x] for x in v])
        return [row[0] for row in (self @ col).to_rows()]

    def det(self) -> GoldenInt:
        return bareiss_det(self.to_rows())

    def reduce(self, ring: QuotientRing) -> ModMatrix:
        if not ring.golden and np.any(self.b != 0):
            raise ShapeError(f"matrix has irrational entries; cannot reduce into {ring}")
        m = ring.modulus
        a = np.array(self.a % m, dtype=np.int64)
        b = np.array(self.b % m, dtype=np.int64)
        return ModMatrix(ring, a, b)

    def __repr__(self) -> str:
        rows = ["[" + ", ".join(str(x) for x in r) + "]" for r in self.to_rows()]
        return "GoldenMatrix(" + ", ".join(rows) + ")"


class ModMatrix:
    """Matrix over Z/m or over Z[w]/(p) = F_p[t]/(t^2 - t - 1), as int64 pairs."""

    __slots__ = ("ring", "a", "b")

    def __init__(self, ring: QuotientRing, a: np.ndarray, b: np.ndarray):
        n = a.shape[0]
        if 3 * n * (ring.modulus - 1) ** 2 >= _INT64_SAFE:
            raise ShapeError("modulus too large for machine-word reduction kernels")
        self.ring, self.a, self.b = ring, a, b

    @classmethod
    def identity(cls, ring: QuotientRing, n: int) -> ModMatrix:
        return cls(ring, np.eye(n, dtype=np.int64), np.zeros((n, n), dtype=np.int64))

    @property
    def shape(self) -> tuple[int, int]:
        return self.a.shape

    def __matmul__(self, other: ModMatrix) -> ModMatrix:
        m = self.ring.modulus
        if self.ring.golden:
            a, b = _pair_matmul(self.a, self.b, other.a, other.b)
            return ModMatrix(self.ring, a % m, b % m)
        return ModMatrix(self.ring, (self.a @ other.a) % m, self.b)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ModMatrix):
            return NotImplemented
        return (
            self.ring == other.ring
            and bool(np.array_equal(self.a, other.a))
            and bool(np.array_equal(self.b, other.b))
        )

    __hash__ = None

    def is_identity(self) -> bool:
        n = self.shape[0]
        return bool(np.array_equal(self.a, np.eye(n, dtype=np.int64))) and not self.b.any()

    def __pow__(self, k: int) -> ModMatrix:
        result = ModMatrix.identity(self.ring, self.shape[0])
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result


def bareiss_det(rows: Sequence[Sequence[GoldenInt]]) -> GoldenInt:
    """Fraction-free determinant over the integral domain Z[w]."""
    from .exactring import exact_div

    m = [[GoldenInt.coerce(x) for x in r] for r in rows]
    n = len(m)
    if any(len(r) != n for r in m):
        raise ShapeError("determinant of a non-square matrix")
    if n == 0:
        return GoldenInt(1, 0)
    sign, prev = 1, GoldenInt(1, 0)
    for k in range(n - 1):
        if m[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not m[i][k].is_zero()), None)
            if swap is None:
                return GoldenInt(0, 0)
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = exact_div(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev)
        prev = m[k][k]
    d = m[n - 1][n - 1]
    return d if sign > 0 else -d


def _rref(rows: Sequence[Sequence]) -> tuple[list[list[GoldenRational]], list[int]]:
    m = [[GoldenRational.coerce(x) for x in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c].num), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = GoldenRational(GoldenInt(1, 0)) / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c].num:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    """Rank over Q(sqrt 5) of a list of rows with Z[w] or Q(sqrt 5) entries."""
    return len(_rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[list[GoldenRational]]:
    """Basis of the right kernel {x : rows @ x = 0} over Q(sqrt 5)."""
    if not rows:
        one, zero = GoldenRational.coerce(1), GoldenRational.coerce(0)
        return [[one if i == j else zero for i in range(ncols)] for j in range(ncols)]
    red, pivots = _rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [GoldenRational.coerce(0)] * ncols
        x[f] = GoldenRational.coerce(1)
        for row, p in zip(red, pivots):
            x[p] = -row[f]
        basis.append(x)
    return basis
