"""Words in reflection generators and the homomorphisms evaluated on them.

Every generator is an involution, so a word is just a sequence of generator labels.
The maps provided are: colouring (to F_2^s), retraction onto a standard subgroup,
the exact matrix representation over Z[w], and its reduction to a finite ring.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

from .colouring import Colouring
from .coxdiagram import CoxeterDiagram
from .errors import DomainError, OrderOverflow, RepresentationError
from .exactring import FactoredInt, GoldenInt, QuotientRing, factorize, is_prime
from .linalg import GoldenMatrix, ModMatrix
from .qspace import QuadraticSpace, is_finite_label


@dataclass(frozen=True)
class Word:
    letters: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "letters", tuple(int(x) for x in self.letters))
        if any(x < 1 for x in self.letters):
            raise DomainError("generator labels are 1-based")

    @classmethod
    def parse(cls, text: str | Sequence) -> Word:
        """From '1 2 7', 's1 s2 s7', '1,2,7' or a sequence of ints."""
        if isinstance(text, Word):
            return text
        if not isinstance(text, str):
            return cls(tuple(text))
        parts = text.replace(",", " ").split()
        try:
            return cls(tuple(int(p.lstrip("s")) for p in parts))
        except ValueError:
            raise DomainError(f"cannot parse word {text!r}") from None

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __mul__(self, other: Word) -> Word:
        return Word(self.letters + Word.parse(other).letters)

    def __pow__(self, k: int) -> Word:
        if k < 0:
            return self.inverse() ** (-k)
        return Word(self.letters * k)

    def inverse(self) -> Word:
        return Word(self.letters[::-1])

    def reduced(self) -> Word:
        """Free reduction using s_i s_i = 1 only."""
        out: list[int] = []
        for x in self.letters:
            if out and out[-1] == x:
                out.pop()
            else:
                out.append(x)
        return Word(tuple(out))

    def serialize(self) -> str:
        return " ".join(map(str, self.letters))

    def __str__(self) -> str:
        return "".join(f"s{x}" for x in self.letters) or "1"


WordLike = Union[Word, str, Sequence[int]]


# ---------------------------------------------------------------------------
# retractions


@dataclass(frozen=True)
class RetractionCertificate:
    kept: tuple[int, ...]
    ok: bool
    violations: tuple[tuple[int, int, object], ...] = ()  # (kept, killed, label)

    def text(self) -> str:
        if self.ok:
            return f"retraction onto {list(self.kept)} is well defined"
        bad = ", ".join(f"({a}, {b}) label {lab}" for a, b, lab in self.violations)
        return f"retraction onto {list(self.kept)} is not well defined: odd labels at {bad}"


def retraction_check(diagram: CoxeterDiagram, kept: Iterable[int]) -> RetractionCertificate:
    """Killing the other generators is a homomorphism iff kept/killed labels are even or infinite."""
    kept = tuple(sorted(set(kept)))
    if not kept:
        raise DomainError("retraction needs a nonempty kept set")
    missing = [k for k in kept if k not in diagram.nodes]
    if missing:
        raise DomainError(f"kept generators {missing} are not diagram nodes")
    bad = []
    for a in kept:
        for b in diagram.nodes:
            if b in kept:
                continue
            lab = diagram.label(a, b)
            if is_finite_label(lab) and lab % 2:
                bad.append((a, b, lab))
    return RetractionCertificate(kept, not bad, tuple(bad))


# ---------------------------------------------------------------------------
# maps


class GroupMap:
    kind = ""
    generators: frozenset | None = None

    def _check(self, w: Word) -> None:
        if self.generators is None:
            return
        bad = sorted(set(w) - self.generators)
        if bad:
            raise DomainError(f"{self.kind} map has no generators {bad}")

    def image(self, w: Word):
        raise NotImplementedError

    def evaluate(self, w: WordLike):
        w = Word.parse(w)
        self._check(w)
        return self.image(w)


@dataclass
class ColouringMap(GroupMap):
    colouring: Colouring
    kind = "colouring"

    def __post_init__(self) -> None:
        self.generators = frozenset(self.colouring.colours)

    def image(self, w: Word) -> int:
        out = 0
        for x in w:
            out ^= self.colouring[x]
        return out


@dataclass
class RetractionMap(GroupMap):
    kept: frozenset
    ambient: frozenset | None = None
    kind = "retraction"

    def __post_init__(self) -> None:
        self.kept = frozenset(self.kept)
        self.generators = frozenset(self.ambient) if self.ambient is not None else None

    def image(self, w: Word) -> Word:
        return Word(tuple(x for x in w if x in self.kept)).reduced()


@dataclass
class MatrixRep(GroupMap):
    space: QuadraticSpace
    kind = "matrix"

    def __post_init__(self) -> None:
        self.generators = frozenset(self.space.labels)

    def image(self, w: Word) -> GoldenMatrix:
        out = GoldenMatrix.identity(len(self.space.form.diag))
        for x in w:
            out = out @ self.space.reflection(x).matrix
        return out


@dataclass
class ReductionMap(GroupMap):
    """Reduction of the reflection representation modulo m (over Z) or an odd prime p (over Z[w])."""

    space: QuadraticSpace
    modulus: int
    kind = "reduction"
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        self.generators = frozenset(self.space.labels)
        golden = self.space.form.ring == "Z[w]"
        self.ring = QuotientRing(self.modulus, golden)

    def generator(self, x: int) -> ModMatrix:
        if x not in self._cache:
            self._cache[x] = self.space.reflection(x).matrix.reduce(self.ring)
        return self._cache[x]

    def image(self, w: Word) -> ModMatrix:
        out = ModMatrix.identity(self.ring, len(self.space.form.diag))
        for x in w:
            out = out @ self.generator(x)
        return out


def evaluate(m: GroupMap, w: WordLike):
    return m.evaluate(w)


def orientation_parity(w: WordLike, rep: MatrixRep | None = None) -> int:
    """(-1)^len(w); with ``rep``, the determinant of the matrix image must agree."""
    w = Word.parse(w)
    parity = -1 if len(w) % 2 else 1
    if rep is not None:
        det = rep.evaluate(w).det()
        if det != GoldenInt(parity):
            raise RepresentationError(f"det of the image of {w} is {det}, parity predicts {parity}")
    return parity


def reduction_order(space: QuadraticSpace, w: WordLike, modulus: int, cap: int = 10 ** 7) -> FactoredInt:
    """Least k >= 1 with phi(w)^k = I in the quotient ring, found by iterated multiplication."""
    phi = ReductionMap(space, modulus)
    g = phi.evaluate(w)
    cur = g
    k = 1
    while not cur.is_identity():
        k += 1
        if k > cap:
            raise OrderOverflow(f"order of {Word.parse(w)} mod {modulus} exceeds {cap}")
        cur = cur @ g
    if not (g ** k).is_identity():
        raise RepresentationError("order re-verification by fast power failed")
    return factorize(k)


# ---------------------------------------------------------------------------
# lemma conditions


@dataclass(frozen=True)
class LemmaCheck:
    k1: FactoredInt
    k2: FactoredInt
    holds: bool
    lcm: FactoredInt
    shared: tuple[tuple[int, int, int], ...]  # (prime, exponent in k1, exponent in k2)

    def text(self) -> str:
        parts = [f"{p}: {a} vs {b}" for p, a, b in self.shared]
        verdict = "holds" if self.holds else "fails"
        return (
            f"k1 = {self.k1}, k2 = {self.k2}; shared primes [{'; '.join(parts)}]; "
            f"condition {verdict}; lcm = {self.lcm}"
        )


def _factored(k) -> FactoredInt:
    f = k if isinstance(k, FactoredInt) else factorize(int(k))
    if f.value < 1:
        raise DomainError("orders are positive")
    return f


def subgroup_lemma_check(k1, k2) -> LemmaCheck:
    """Every prime dividing gcd(k1, k2) must occur with different exponents."""
    a, b = _factored(k1), _factored(k2)
    shared = tuple((p, a.exponent(p), b.exponent(p)) for p in sorted(set(a.primes()) & set(b.primes())))
    holds = all(ea != eb for _, ea, eb in shared)
    return LemmaCheck(a, b, holds, a.lcm(b), shared)


def no_torsion_premise(p: int, parabolic: FactoredInt | int, ring: str = "Z") -> bool:
    """p is an odd rational prime not dividing the parabolic LCM."""
    del ring  # the same rational-prime test applies over Z and Z[w]
    lcm = parabolic if isinstance(parabolic, FactoredInt) else factorize(int(parabolic))
    return p > 2 and is_prime(p) and lcm.exponent(p) == 0


def newman_premise(m: int) -> bool:
    """Congruence kernels mod m are torsion-free for m > 2 over Z."""
    return m > 2


# ---------------------------------------------------------------------------
# coset enumeration


@dataclass(frozen=True)
class Presentation:
    generators: tuple[int, ...]
    relators: tuple[Word, ...]

    def text(self) -> str:
        gens = ", ".join(f"s{g}" for g in self.generators)
        rels = "".join(f"; {r}" for r in self.relators)
        return f"< {gens} | involutions{rels} >"


def coxeter_presentation(diagram: CoxeterDiagram, nodes: Iterable[int] | None = None) -> Presentation:
    nodes = sorted(nodes) if nodes is not None else sorted(diagram.nodes)
    rels = []
    for i, a in enumerate(nodes):
        for b in nodes[i + 1:]:
            lab = diagram.label(a, b)
            if is_finite_label(lab):
                rels.append(Word((a, b)) ** lab)
    return Presentation(tuple(nodes), tuple(rels))


@dataclass(frozen=True)
class CosetResult:
    index: int | None
    cosets_defined: int
    status: str  # "complete" or "cap-exceeded"

    @property
    def complete(self) -> bool:
        return self.status == "complete"


class _CapExceeded(Exception):
    pass


def coset_enumerate(
    presentation: Presentation, subgroup_words: Sequence[WordLike], max_cosets: int = 10 ** 5
) -> CosetResult:
    """Index of the subgroup generated by ``subgroup_words``, by HLT Todd-Coxeter.

    Generators are involutions, so each column of the table is its own inverse.
    """
    col = {g: i for i, g in enumerate(presentation.generators)}
    ng = len(col)

    def tr(words):
        out = []
        for w in words:
            w = Word.parse(w)
            bad = sorted(set(w) - set(col))
            if bad:
                raise DomainError(f"word {w} uses generators {bad} outside the presentation")
            out.append([col[x] for x in w])
        return out

    rels = tr(presentation.relators)
    subs = tr(subgroup_words)
    table: list[list[int | None]] = [[None] * ng]
    parent = [0]

    def rep(c: int) -> int:
        root = c
        while parent[root] != root:
            root = parent[root]
        while parent[c] != root:
            parent[c], c = root, parent[c]
        return root

    def define(c: int, x: int) -> int:
        if len(table) >= max_cosets:
            raise _CapExceeded
        d = len(table)
        table.append([None] * ng)
        parent.append(d)
        table[c][x] = d
        table[d][x] = c
        return d

    def merge(a: int, b: int, queue: list[int]) -> None:
        a, b = rep(a), rep(b)
        if a == b:
            return
        lo, hi = min(a, b), max(a, b)
        parent[hi] = lo
        queue.append(hi)

    def coincidence(a: int, b: int) -> None:
        queue: list[int] = []
        merge(a, b, queue)
        i = 0
        while i < len(queue):
            g = queue[i]
            i += 1
            for x in range(ng):
                d = table[g][x]
                if d is None:
                    continue
                if table[d][x] == g:
                    table[d][x] = None
                mu, nu = rep(g), rep(d)
                if table[mu][x] is not None:
                    merge(nu, table[mu][x], queue)
                elif table[nu][x] is not None:
                    merge(mu, table[nu][x], queue)
                else:
                    table[mu][x] = nu
                    table[nu][x] = mu

    def scan_and_fill(c: int, word: list[int]) -> None:
        f, b = c, c
        i, j = 0, len(word) - 1
        if j < 0:
            return
        while True:
            while i <= j and table[f][word[i]] is not None:
                f = table[f][word[i]]
                i += 1
            if i > j:
                if f != b:
                    coincidence(f, b)
                return
            while j >= i and table[b][word[j]] is not None:
                b = table[b][word[j]]
                j -= 1
            if j < i:
                coincidence(f, b)
                return
            if i == j:
                table[f][word[i]] = b
                table[b][word[i]] = f
                return
            define(f, word[i])

    try:
        for w in subs:
            scan_and_fill(0, w)
        c = 0
        while c < len(table):
            if parent[c] == c:
                for r in rels:
                    scan_and_fill(c, r)
                    if parent[c] != c:
                        break
                if parent[c] == c:
                    for x in range(ng):
                        if table[c][x] is None:
                            define(c, x)
            c += 1
    except _CapExceeded:
        return CosetResult(None, len(table), "cap-exceeded")
    live = sum(1 for c in range(len(table)) if parent[c] == c)
    return CosetResult(live, len(table), "complete")
