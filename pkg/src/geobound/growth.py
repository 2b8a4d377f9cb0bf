"""Subgroup growth of free groups.

N_r(n), the number of index-n subgroups of the free group of rank r, satisfies

    N_r(n) = n (n!)^(r-1) - sum_{i<n} ((n-i)!)^(r-1) N_r(i)

and is checked against a brute-force count of transitive permutation actions.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations, product

from .errors import DomainError


_HALL: dict[int, list[int]] = {}
_FACT_POW: dict[int, list[int]] = {}


def hall_count(r: int, n: int) -> int:
    if r < 1 or n < 1:
        raise DomainError(f"need rank >= 1 and index >= 1, got r={r}, n={n}")
    vals = _HALL.setdefault(r, [0])  # vals[k] = N_r(k); index 0 unused
    fp = _FACT_POW.setdefault(r, [1])  # fp[k] = (k!)^(r-1)
    while len(fp) <= n:
        k = len(fp)
        fp.append(fp[-1] * k ** (r - 1))
    while len(vals) <= n:
        m = len(vals)
        vals.append(m * fp[m] - sum(fp[m - i] * vals[i] for i in range(1, m)))
    return vals[n]


ORACLE_MAX_N = 5
ORACLE_MAX_R = 3


def _orbits(perm: tuple[int, ...]) -> tuple[int, ...]:
    """Orbit label (smallest point) of every point under a single permutation."""
    n = len(perm)
    lab = list(range(n))
    for start in range(n):
        x = perm[start]
        while x != start:
            lab[x] = min(lab[x], start)
            x = perm[x]
    return tuple(lab)


def _join(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    """Finest partition coarser than both (as smallest-element labels)."""
    n = len(a)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for lab in (a, b):
        for i in range(n):
            ri, rj = find(i), find(lab[i])
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
    return tuple(find(i) for i in range(n))


def oracle_count(r: int, n: int) -> int:
    """Transitive r-tuples in S_n divided by (n-1)!, by exhaustive enumeration."""
    if not (1 <= n <= ORACLE_MAX_N and 1 <= r <= ORACLE_MAX_R):
        raise DomainError(f"oracle limited to n <= {ORACLE_MAX_N}, r <= {ORACLE_MAX_R}; got r={r}, n={n}")
    parts: dict[tuple[int, ...], int] = {}
    for p in permutations(range(n)):
        key = _orbits(p)
        parts[key] = parts.get(key, 0) + 1
    # distribution of the joined orbit partition over r-tuples
    dist = dict(parts)
    for _ in range(r - 1):
        nxt: dict[tuple[int, ...], int] = {}
        for (a, ca), (b, cb) in product(dist.items(), parts.items()):
            j = _join(a, b)
            nxt[j] = nxt.get(j, 0) + ca * cb
        dist = nxt
    transitive = dist.get((0,) * n, 0)
    q, rem = divmod(transitive, math.factorial(n - 1))
    if rem:
        raise ArithmeticError("transitive count not divisible by (n-1)!")
    return q


@dataclass(frozen=True)
class GrowthScenario:
    """How an index-n subgroup of F_d translates to the manifolds it produces.

    The produced subgroup has index ``multiplier * n``; its quotient has measure
    ``cover * multiplier * unit * n`` (orientation double cover included via ``cover``).
    """

    name: str
    rank: int
    multiplier: int
    unit_coefficient: Fraction = Fraction(1)
    unit: str = "vol"
    cover: int = 2


SURFACE = GrowthScenario("surface", 3, 8, Fraction(2), "pi", 2)
DODECAHEDRON = GrowthScenario("dodecahedron", 3, 8, Fraction(1), "vol(D)", 1)


@dataclass(frozen=True)
class GrowthRow:
    n: int
    count: int
    cumulative: int
    bound: int
    index: int
    measure: Fraction

    @property
    def meets_bound(self) -> bool:
        return self.cumulative >= self.bound


@dataclass
class GrowthTable:
    rank: int
    rows: list[GrowthRow] = field(default_factory=list)
    scenario: GrowthScenario | None = None

    @property
    def ok(self) -> bool:
        return all(r.meets_bound for r in self.rows)

    def measure_text(self, row: GrowthRow) -> str:
        if self.scenario is None:
            return "-"
        unit = self.scenario.unit
        unit = "π" if unit == "pi" else unit
        return f"{row.measure}{unit}"

    def text(self) -> str:
        head = f"{'n':>3} {'N_d(n)':>24} {'sum_{k<=n}':>24} {'(n!)^(d-1)':>24} {'index':>6} {'measure':>10}"
        lines = [f"rank d = {self.rank}" + (f", scenario {self.scenario.name}" if self.scenario else ""), head]
        for r in self.rows:
            lines.append(
                f"{r.n:>3} {_short(r.count):>24} {_short(r.cumulative):>24} {_short(r.bound):>24} "
                f"{r.index:>6} {self.measure_text(r):>10}"
            )
        return "\n".join(lines)

    def records(self) -> list[dict]:
        unit = self.scenario.unit if self.scenario else ""
        return [
            {
                "n": r.n,
                "count": str(r.count),
                "cumulative": str(r.cumulative),
                "bound": str(r.bound),
                "meets_bound": r.meets_bound,
                "index": r.index,
                "measure": {"coefficient": str(r.measure), "unit": unit},
            }
            for r in self.rows
        ]


def _short(x: int) -> str:
    s = str(x)
    return s if len(s) <= 24 else f"{s[:6]}...e{len(s) - 1}"


def growth_table(rank: int, n_max: int, scenario: GrowthScenario | None = None) -> GrowthTable:
    if n_max < 1:
        raise DomainError("n_max must be at least 1")
    mult = scenario.multiplier if scenario else 1
    per = scenario.cover * scenario.unit_coefficient * mult if scenario else Fraction(0)
    rows, cum = [], 0
    for n in range(1, n_max + 1):
        c = hall_count(rank, n)
        cum += c
        rows.append(GrowthRow(n, c, cum, math.factorial(n) ** (rank - 1), mult * n, per * n))
    return GrowthTable(rank, rows, scenario)


def growth_report(scenario: GrowthScenario, n_max: int) -> GrowthTable:
    return growth_table(scenario.rank, n_max, scenario)


def log_ratio(r: int, n: int) -> float:
    """log2 N_r(n) / (n log2 n), a finite-n proxy for N_r(n) growing like n^((r-1)n)."""
    return math.log2(hall_count(r, n)) / (n * math.log2(n))
