"""F_2^s colourings of polytope facets.

Colours are integers whose bits are the coordinates of a vector in F_2^s, so
``lambda_i = sum_k lambda(i)_k 2^k``.  Linear algebra over F_2 works on these
bitsets directly.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Callable, Iterable, Sequence

from .errors import DataError, DomainError
from .polymodel import FacetComplex


@dataclass(frozen=True)
class Colouring:
    s: int
    colours: dict[int, int]

    def __post_init__(self) -> None:
        if self.s < 0:
            raise DomainError("colour space dimension must be non-negative")
        for lab, c in self.colours.items():
            if not 0 <= c < 2 ** self.s:
                raise DomainError(f"colour {c} of facet {lab} does not fit in F_2^{self.s}")
        object.__setattr__(self, "colours", dict(sorted(self.colours.items())))

    @classmethod
    def from_list(cls, colours: Sequence[int], s: int | None = None) -> Colouring:
        """Colours of facets 1, 2, ... in order; ``s`` defaults to the widest colour."""
        if s is None:
            s = max((c.bit_length() for c in colours), default=0)
        return cls(s, {i + 1: c for i, c in enumerate(colours)})

    @property
    def labels(self) -> list[int]:
        return list(self.colours)

    def __getitem__(self, label: int) -> int:
        return self.colours[label]

    def as_list(self) -> list[int]:
        return [self.colours[k] for k in sorted(self.colours)]

    def relabel(self, mapping: dict[int, int]) -> Colouring:
        return Colouring(self.s, {mapping.get(k, k): c for k, c in self.colours.items()})

    def transform(self, matrix: Sequence[int]) -> Colouring:
        """Apply the F_2-linear map whose k-th column is ``matrix[k]`` (a bitset)."""
        def image(c):
            out = 0
            for k, col in enumerate(matrix):
                if c >> k & 1:
                    out ^= col
            return out

        return Colouring(self.s, {k: image(c) for k, c in self.colours.items()})

    def vector(self, label: int) -> tuple[int, ...]:
        """Coordinates of a colour, high bit first, as in (1,0,0)^t notation for 4."""
        c = self.colours[label]
        return tuple(c >> k & 1 for k in reversed(range(self.s)))

    def dumps(self) -> str:
        lines = [f"s {self.s}"] + [f"{k}: {c}" for k, c in self.colours.items()]
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> Colouring:
        s = None
        colours: dict[int, int] = {}
        for n, line in enumerate(text.splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                if line.startswith("s "):
                    s = int(line[2:])
                else:
                    k, c = line.split(":")
                    colours[int(k)] = int(c)
            except ValueError:
                raise DataError(f"line {n}: expected 's <int>' or '<label>: <colour>', got {line!r}") from None
        if s is None:
            raise DataError("colouring file has no 's' header")
        try:
            return cls(s, colours)
        except DomainError as exc:
            raise DataError(str(exc)) from exc

    @classmethod
    def load(cls, path: str | Path) -> Colouring:
        try:
            return cls.loads(Path(path).read_text())
        except OSError as exc:
            raise DataError(f"cannot read colouring file {path}: {exc}") from exc


def gf2_rank(vectors: Iterable[int]) -> int:
    basis: list[int] = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
    return len(basis)


def independent(vectors: Sequence[int]) -> bool:
    return gf2_rank(vectors) == len(vectors)


# ---------------------------------------------------------------------------
# properness


@dataclass(frozen=True)
class Violation:
    kind: str  # "vertex" or "edge"
    index: int
    facets: tuple[int, ...]
    colours: tuple[int, ...]

    def __str__(self) -> str:
        return f"{self.kind} {self.index}: facets {list(self.facets)} colours {list(self.colours)} dependent"


@dataclass(frozen=True)
class ProperReport:
    ok: bool
    violations: tuple[Violation, ...] = ()
    checked_vertices: int = 0
    checked_edges: int = 0
    missing: tuple[int, ...] = ()

    def text(self) -> str:
        head = "proper" if self.ok else "not proper"
        lines = [f"{head} ({self.checked_vertices} vertices, {self.checked_edges} edges checked)"]
        if self.missing:
            lines.append(f"uncoloured facets: {list(self.missing)}")
        lines += [f"  {v}" for v in self.violations]
        return "\n".join(lines)


def check_proper(model: FacetComplex, c: Colouring) -> ProperReport:
    """Independence of colours at every simple vertex and at every edge."""
    missing = tuple(f for f in model.facets if f not in c.colours)
    if missing:
        return ProperReport(False, (), 0, 0, missing)
    bad = []
    for kind, cells in (("vertex", model.vertices), ("edge", model.edges)):
        for idx, cell in enumerate(cells):
            facets = tuple(sorted(cell))
            cols = tuple(c[f] for f in facets)
            if not independent(cols):
                bad.append(Violation(kind, idx, facets, cols))
    return ProperReport(not bad, tuple(bad), len(model.vertices), len(model.edges))


# ---------------------------------------------------------------------------
# orientability


@dataclass(frozen=True)
class OrientabilityReport:
    orientable: bool
    functional: int | None = None  # x with popcount(x & lambda_i) odd for all i
    witness: tuple[int, ...] | None = None  # odd set of facets with zero colour sum

    def text(self) -> str:
        if self.orientable:
            return f"orientable: functional x = {self.functional} evaluates to 1 on every colour"
        return f"non-orientable: witness {list(self.witness)} has odd size and zero colour sum"


def verify_witness(c: Colouring, facets: Iterable[int]) -> bool:
    facets = list(facets)
    total = 0
    for f in facets:
        total ^= c[f]
    return len(facets) % 2 == 1 and len(set(facets)) == len(facets) and total == 0


def _small_witness(c: Colouring) -> tuple[int, ...] | None:
    labels = c.labels
    for k in labels:
        if c[k] == 0:
            return (k,)
    first: dict[int, tuple[int, int]] = {}
    for a, b in combinations(labels, 2):
        first.setdefault(c[a] ^ c[b], (a, b))
    best = None
    for k in labels:
        pair = first.get(c[k])
        if pair is None:
            continue
        # pairs are recorded lexicographically first; any pair avoiding k works
        cand = tuple(sorted((k,) + pair)) if k not in pair else None
        if cand is None:
            for a, b in combinations([x for x in labels if x != k], 2):
                if c[a] ^ c[b] == c[k]:
                    cand = tuple(sorted((k, a, b)))
                    break
        if cand is not None and (best is None or cand < best):
            best = cand
    return best


def check_orientable(c: Colouring) -> OrientabilityReport:
    """Decide whether some x in F_2^s has x . lambda_i = 1 for every facet.

    Solvable: orientable, with x returned.  Unsolvable: elimination produces an odd
    combination of facets with zero colour sum; a smallest witness (size 1 or 3,
    lexicographically first) is reported when one exists.
    """
    labels = c.labels
    # rows are (lambda_i | 1), each tagged with the set of facets combined into it
    pivots: list[tuple[int, int, int]] = []  # (vector, parity bit, facet bitmask)
    certificate = None
    for idx, lab in enumerate(labels):
        v, rhs, mask = c[lab], 1, 1 << idx
        for pv, pr, pm in pivots:
            if v ^ pv < v:
                v, rhs, mask = v ^ pv, rhs ^ pr, mask ^ pm
        if v:
            pivots.append((v, rhs, mask))
            pivots.sort(reverse=True)
        elif rhs and certificate is None:
            certificate = mask
    if certificate is None:
        x = 0
        # back-substitute: process pivots from the lowest leading bit upwards
        for pv, pr, _ in sorted(pivots):
            lead = pv.bit_length() - 1
            if bin(x & pv).count("1") % 2 != pr:
                x ^= 1 << lead
        return OrientabilityReport(True, functional=x)
    small = _small_witness(c)
    if small is not None:
        return OrientabilityReport(False, witness=small)
    witness = tuple(lab for idx, lab in enumerate(labels) if certificate >> idx & 1)
    return OrientabilityReport(False, witness=witness)


@dataclass(frozen=True)
class RankReport:
    rank: int
    index: int  # size of the image, i.e. the index of the kernel


def colouring_rank(c: Colouring) -> RankReport:
    r = gf2_rank(c.colours.values())
    return RankReport(r, 2 ** r)


def extend_colouring(base: Colouring, total_facets: int, first_bit: int | None = None) -> Colouring:
    """Keep the base colours and give facets ``len(base)+1 .. total_facets`` fresh basis vectors.

    Facet ``k + j`` (j = 1, 2, ...) gets ``2^(first_bit + j - 1)``; ``first_bit``
    defaults to ``base.s``, so a 12-facet base in F_2^3 sends facet 13 to 2^3.
    """
    k = len(base.colours)
    if sorted(base.colours) != list(range(1, k + 1)):
        raise DomainError("base colouring must cover facets 1..k")
    if total_facets < k:
        raise DomainError(f"cannot extend a {k}-facet colouring to {total_facets} facets")
    first_bit = base.s if first_bit is None else first_bit
    if first_bit < base.s:
        raise DomainError("fresh bits must lie above the base colours")
    colours = dict(base.colours)
    for j in range(1, total_facets - k + 1):
        colours[k + j] = 1 << (first_bit + j - 1)
    s = first_bit + total_facets - k if total_facets > k else base.s
    return Colouring(s, colours)


# ---------------------------------------------------------------------------
# labelling search

Constraint = tuple[tuple[int, ...], Callable[..., bool]]


@dataclass
class LabellingSearch:
    mapping: dict[int, int] | None  # label -> model facet
    nodes: int = 0
    reason: str = ""

    @property
    def found(self) -> bool:
        return self.mapping is not None


def find_proper_labelling(
    model: FacetComplex,
    colours: Sequence[int],
    constraints: Sequence[Constraint] = (),
) -> LabellingSearch:
    """Assign labels 1..m (with the given colours) to the model's facets.

    The result makes the colouring proper and satisfies every constraint
    ``(labels, predicate)``; a predicate receives the model and the facets assigned
    to its labels, once all of them are placed.  Facets are tried in sorted order, so
    the first solution is deterministic.
    """
    m = len(model.facets)
    if len(colours) != m:
        raise DomainError(f"{len(colours)} colours for {m} facets")
    facets = list(model.facets)
    cells = {f: [] for f in facets}
    for cell in model.vertices + model.edges:
        for f in cell:
            cells[f].append(cell)
    pending = {k: [] for k in range(1, m + 1)}
    for labs, pred in constraints:
        pending[max(labs)].append((labs, pred))
    colour_of: dict[int, int] = {}  # model facet -> colour
    assign: dict[int, int] = {}  # label -> model facet
    nodes = 0

    def consistent(f: int) -> bool:
        for cell in cells[f]:
            cols = [colour_of[x] for x in cell if x in colour_of]
            if not independent(cols):
                return False
        return True

    def rec(label: int) -> bool:
        nonlocal nodes
        if label > m:
            return True
        for f in facets:
            if f in colour_of:
                continue
            nodes += 1
            colour_of[f] = colours[label - 1]
            assign[label] = f
            if consistent(f) and all(pred(model, *(assign[x] for x in labs)) for labs, pred in pending[label]):
                if rec(label + 1):
                    return True
            del colour_of[f]
            del assign[label]
        return False

    if rec(1):
        return LabellingSearch(dict(assign), nodes)
    return LabellingSearch(None, nodes, "search space exhausted: no proper labelling satisfies the constraints")


def surrounds(center: int, cycle: Sequence[int]) -> Constraint:
    """Constraint: ``cycle`` lists the neighbours of ``center`` in cyclic order."""
    labs = (center,) + tuple(cycle)

    def pred(model: FacetComplex, c, *ring):
        if sorted(model.neighbours(c)) != sorted(ring):
            return False
        k = len(ring)
        return all(model.adjacent(ring[i], ring[(i + 1) % k]) for i in range(k))

    return labs, pred


def relation(i: int, j: int, kind: str) -> Constraint:
    """Constraint on the diagram label between labels i and j: 'orthogonal', 'parallel' or 'adjacent'."""
    from .qspace import PARALLEL

    def pred(model: FacetComplex, a, b):
        if kind == "adjacent":
            return model.adjacent(a, b)
        if model.diagram is None:
            raise DomainError("model has no Coxeter diagram; cannot test angles")
        lab = model.diagram.label(a, b)
        return lab == 2 if kind == "orthogonal" else lab == PARALLEL

    return (i, j), pred


# ---------------------------------------------------------------------------
# known colourings from the constructions

DODECAHEDRON_COLOURS = (1, 2, 4, 4, 2, 6, 3, 5, 5, 3, 1, 7)
OCTAGON_COLOURS = (1, 1, 1, 1, 2, 3, 5, 6)
BIPYRAMID_COLOURS = (1, 1, 4, 7, 5, 2)


def dodecahedron_constraints() -> list[Constraint]:
    center, ring = 5, (1, 3, 9, 11, 6)
    return [surrounds(center, ring)]


def bipyramid_constraints() -> list[Constraint]:
    return [relation(1, 3, "orthogonal"), relation(1, 2, "parallel"), relation(2, 3, "parallel")]


def cell120_colouring() -> Colouring:
    return extend_colouring(Colouring.from_list(DODECAHEDRON_COLOURS, 3), 120)
