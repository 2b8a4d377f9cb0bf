"""Diagonal quadratic forms of signature (n, 1) over Z or Z[w], their roots and reflections.

The reflection in a spacelike root ``e`` is ``x -> x - 2<x,e>/<e,e> e``.  Dihedral
angles between facets are read off exactly from

    t^2 = <e_i,e_j>^2 / (<e_i,e_i><e_j,e_j>)

compared in Q(sqrt 5) with cos^2(pi/m) for the labels realisable there.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import CrystallographicError, DomainError, RootError, ShapeError
from .exactring import GoldenInt, GoldenRational, exact_div
from .linalg import GoldenMatrix

Vector = tuple[GoldenInt, ...]

PARALLEL = "parallel"
ULTRAPARALLEL = "ultraparallel"

_Q = GoldenRational
# cos^2(pi/m) for every label whose cosine squared lies in Q(sqrt 5)
COS2 = {
    2: _Q(GoldenInt(0, 0)),
    3: _Q(GoldenInt(1, 0), 4),
    4: _Q(GoldenInt(1, 0), 2),
    5: _Q(GoldenInt(1, 1), 4),
    6: _Q(GoldenInt(3, 0), 4),
    10: _Q(GoldenInt(2, 1), 4),
}


def is_finite_label(label) -> bool:
    return isinstance(label, int)


def label_str(label) -> str:
    if label == PARALLEL:
        return "inf"
    if label == ULTRAPARALLEL:
        return "dashed"
    return str(label)


def parse_label(text: str):
    if text in ("inf", PARALLEL):
        return PARALLEL
    if text in ("dashed", ULTRAPARALLEL):
        return ULTRAPARALLEL
    return int(text)


def as_vector(coords: Iterable) -> Vector:
    out = []
    for c in coords:
        if isinstance(c, (list, tuple)):
            out.append(GoldenInt.from_pair(c))
        else:
            out.append(GoldenInt.coerce(c))
    return tuple(out)


@dataclass(frozen=True)
class QuadraticForm:
    """Diagonal form d_0 x_0^2 + ... + d_n x_n^2."""

    diag: Vector
    ring: str = "Z"

    def __post_init__(self) -> None:
        object.__setattr__(self, "diag", as_vector(self.diag))
        if self.ring not in ("Z", "Z[w]"):
            raise DomainError(f"unknown ring tag {self.ring!r}")
        if self.ring == "Z" and any(not d.is_rational() for d in self.diag):
            raise DomainError("irrational coefficient in a form over Z")

    @classmethod
    def lorentzian(cls, n: int, d0: int = -1, extra: Mapping[int, int] | None = None) -> QuadraticForm:
        """d0 x_0^2 + x_1^2 + ... + x_n^2, with optional overrides for some coefficients."""
        diag = [d0] + [1] * n
        for k, v in (extra or {}).items():
            diag[k] = v
        return cls(tuple(GoldenInt(d) for d in diag), "Z")

    @property
    def dim(self) -> int:
        return len(self.diag) - 1

    def gram(self) -> GoldenMatrix:
        n = len(self.diag)
        rows = [[self.diag[i] if i == j else GoldenInt() for j in range(n)] for i in range(n)]
        return GoldenMatrix.from_rows(rows)

    def to_json(self) -> list[list[int]]:
        return [d.to_pair() for d in self.diag]


def bilinear(form: QuadraticForm, u: Sequence, v: Sequence) -> GoldenInt:
    if len(u) != len(form.diag) or len(v) != len(form.diag):
        raise ShapeError(f"vectors of length {len(u)}, {len(v)} for a form in {len(form.diag)} variables")
    total = GoldenInt()
    for d, x, y in zip(form.diag, u, v):
        total = total + d * GoldenInt.coerce(x) * GoldenInt.coerce(y)
    return total


@dataclass(frozen=True)
class AdmissibilityReport:
    ok: bool
    signature_ok: bool
    conjugate_ok: bool
    offending: tuple[tuple[int, str], ...] = ()


def admissible(form: QuadraticForm) -> AdmissibilityReport:
    """Signature (n, 1) at the identity embedding; positive definite Galois conjugate."""
    bad: list[tuple[int, str]] = []
    for i, d in enumerate(form.diag):
        s = d.sign()
        if i == 0 and s >= 0:
            bad.append((0, "leading coefficient is not negative"))
        elif i > 0 and s <= 0:
            bad.append((i, "coefficient is not positive"))
    sig_ok = not bad
    conj_ok = True
    if form.ring == "Z[w]":
        for i, d in enumerate(form.diag):
            if d.conj_sign() <= 0:
                conj_ok = False
                bad.append((i, "Galois conjugate is not positive"))
    return AdmissibilityReport(sig_ok and conj_ok, sig_ok, conj_ok, tuple(bad))


def reflection_coefficients(form: QuadraticForm, e: Sequence) -> list[GoldenInt]:
    """The row c with c_j = 2<b_j, e>/<e, e>; raises on bad roots."""
    e = as_vector(e)
    n = bilinear(form, e, e)
    s = n.sign()
    if s == 0:
        raise RootError(f"root {_fmt(e)} is isotropic")
    if s < 0:
        raise RootError(f"root {_fmt(e)} is timelike (norm {n})")
    try:
        return [exact_div(2 * d * x, n) for d, x in zip(form.diag, e)]
    except DomainError as exc:
        raise CrystallographicError(f"root {_fmt(e)} of norm {n} is not crystallographic") from exc


@dataclass(frozen=True)
class ReflectionMatrix:
    matrix: GoldenMatrix
    root_label: int | None = None

    def check(self, form: QuadraticForm, e: Sequence) -> dict[str, bool]:
        """Exact checks of R^2 = I, det R = -1, R^T G R = G and R e = -e."""
        R, G = self.matrix, form.gram()
        e = as_vector(e)
        return {
            "involution": (R @ R).is_identity(),
            "det": R.det() == GoldenInt(-1, 0),
            "isometry": R.T @ G @ R == G,
            "negates_root": R.apply(e) == [-x for x in e],
        }


def reflection_matrix(form: QuadraticForm, e: Sequence, label: int | None = None) -> ReflectionMatrix:
    e = as_vector(e)
    c = reflection_coefficients(form, e)
    size = len(e)
    rows = [
        [(GoldenInt(1) if i == j else GoldenInt()) - e[i] * c[j] for j in range(size)]
        for i in range(size)
    ]
    return ReflectionMatrix(GoldenMatrix.from_rows(rows), label)


@dataclass(frozen=True)
class PairClass:
    """Relative position of two facet hyperplanes."""

    kind: str  # "finite", "parallel", "ultraparallel", "invalid"
    label: object = None
    t2: GoldenRational | None = None
    reason: str = ""

    @property
    def ok(self) -> bool:
        return self.kind != "invalid"


def classify_pair(form: QuadraticForm, ei: Sequence, ej: Sequence) -> PairClass:
    ei, ej = as_vector(ei), as_vector(ej)
    ni, nj = bilinear(form, ei, ei), bilinear(form, ej, ej)
    if ni.sign() <= 0 or nj.sign() <= 0:
        return PairClass("invalid", reason="root is not spacelike")
    p = bilinear(form, ei, ej)
    t2 = GoldenRational(p * p) / GoldenRational(ni * nj)
    if p.is_zero():
        return PairClass("finite", 2, t2)
    if p.sign() > 0:
        return PairClass("invalid", t2=t2, reason="positive product (obtuse angle)")
    one = GoldenRational.coerce(1)
    if t2 == one:
        return PairClass("parallel", PARALLEL, t2)
    if t2 > one:
        return PairClass("ultraparallel", ULTRAPARALLEL, t2)
    for m, c in COS2.items():
        if m != 2 and t2 == c:
            return PairClass("finite", m, t2)
    return PairClass("invalid", t2=t2, reason=f"t^2 = {t2} is not cos^2(pi/m) for m in 3,4,5,6,10")


@dataclass(frozen=True)
class RootCheck:
    label: int
    norm: GoldenInt
    spacelike: bool
    crystallographic: bool
    norm_matches: bool | None
    status: str

    @property
    def ok(self) -> bool:
        return self.status == "ok"


@dataclass(frozen=True)
class FamilyCheck:
    """Cross-check of a generated family against the index range it is declared on."""

    first: int
    last: int
    generated: int
    pattern: str = ""

    @property
    def declared(self) -> int:
        return self.last - self.first + 1

    @property
    def ok(self) -> bool:
        return self.generated == self.declared


@dataclass(frozen=True)
class ValidationReport:
    roots: tuple[RootCheck, ...] = ()
    families: tuple[FamilyCheck, ...] = ()

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.roots) and all(f.ok for f in self.families)

    def failing(self) -> list[RootCheck]:
        return [r for r in self.roots if not r.ok]

    def by_status(self) -> dict[str, list[int]]:
        out: dict[str, list[int]] = {}
        for r in self.roots:
            out.setdefault(r.status, []).append(r.label)
        return out


def check_root(form: QuadraticForm, e: Sequence, label: int, expected_norm=None) -> RootCheck:
    e = as_vector(e)
    n = bilinear(form, e, e)
    s = n.sign()
    spacelike = s > 0
    cryst = spacelike and _integral(form, e, n)
    matches = None if expected_norm is None else n == GoldenInt.coerce(expected_norm)
    if s == 0:
        status = "isotropic"
    elif s < 0:
        status = "timelike"
    elif not cryst:
        status = "non-crystallographic"
    elif matches is False:
        status = "norm-mismatch"
    else:
        status = "ok"
    return RootCheck(label, n, spacelike, cryst, matches, status)


def _integral(form: QuadraticForm, e: Vector, n: GoldenInt) -> bool:
    return all(n.divides(2 * d * x) for d, x in zip(form.diag, e))


def validate_roots(
    form: QuadraticForm,
    normals: Sequence[Sequence],
    expected_norm=None,
    labels: Sequence[int] | None = None,
    families: Sequence[FamilyCheck] = (),
) -> ValidationReport:
    labels = list(labels) if labels is not None else list(range(1, len(normals) + 1))
    checks = tuple(check_root(form, e, lab, expected_norm) for lab, e in zip(labels, normals))
    return ValidationReport(checks, tuple(families))


@dataclass
class QuadraticSpace:
    """A form together with labelled outer normals (1-based labels, possibly with gaps)."""

    form: QuadraticForm
    roots: dict[int, Vector]
    name: str = ""
    families: list[FamilyCheck] = field(default_factory=list)

    def __post_init__(self) -> None:
        n = len(self.form.diag)
        self.roots = {int(k): as_vector(v) for k, v in sorted(self.roots.items())}
        for k, v in self.roots.items():
            if len(v) != n:
                raise ShapeError(f"root {k} has {len(v)} coordinates, form has {n}")
        self._reflections: dict[int, ReflectionMatrix] = {}

    @property
    def dim(self) -> int:
        return self.form.dim

    @property
    def labels(self) -> list[int]:
        return list(self.roots)

    def root(self, label: int) -> Vector:
        try:
            return self.roots[label]
        except KeyError:
            raise KeyError(f"{self.name or 'space'} has no root e_{label}") from None

    def bilinear(self, i: int, j: int) -> GoldenInt:
        return bilinear(self.form, self.root(i), self.root(j))

    @cached_property
    def norms(self) -> dict[int, GoldenInt]:
        return {k: bilinear(self.form, v, v) for k, v in self.roots.items()}

    def reflection(self, label: int) -> ReflectionMatrix:
        if label not in self._reflections:
            self._reflections[label] = reflection_matrix(self.form, self.root(label), label)
        return self._reflections[label]

    def validate(self, expected_norm=None) -> ValidationReport:
        return validate_roots(
            self.form, list(self.roots.values()), expected_norm, self.labels, self.families
        )

    def valid_labels(self) -> list[int]:
        return [r.label for r in self.validate().roots if r.ok]

    def restrict(self, labels: Iterable[int]) -> QuadraticSpace:
        keep = set(labels)
        return QuadraticSpace(self.form, {k: v for k, v in self.roots.items() if k in keep}, self.name)


def _fmt(v: Sequence[GoldenInt]) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"
