"""Coxeter diagrams of polytopes given by outer normals.

Subdiagrams are classified by matching each connected component against the
finite (elliptic) and affine (parabolic) Coxeter lists.  Non-finite edges are
either ``PARALLEL`` (a solid edge) or ``ULTRAPARALLEL`` (a dashed edge).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from math import factorial
from typing import Iterable, Sequence

from .errors import DiagramError, SizeError
from .exactring import FactoredInt, GoldenRational, factorize, lcm_factored
from .linalg import nullspace
from .qspace import (
    PARALLEL,
    ULTRAPARALLEL,
    QuadraticSpace,
    classify_pair,
    is_finite_label,
    label_str,
    parse_label,
)

_EXCEPTIONAL_ORDERS = {
    ("E", 6): 51840,
    ("E", 7): 2903040,
    ("E", 8): 696729600,
    ("F", 4): 1152,
    ("H", 3): 120,
    ("H", 4): 14400,
}


@dataclass
class CoxeterDiagram:
    nodes: list[int]
    edges: dict[frozenset, object] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.nodes = list(self.nodes)
        clean = {}
        for pair, lab in self.edges.items():
            pair = frozenset(pair)
            if len(pair) != 2:
                raise DiagramError(f"self-edge {set(pair)}")
            if lab != 2:
                clean[pair] = lab
        self.edges = clean
        self._adj: dict[int, frozenset] | None = None
        self._component_cache: dict[tuple, object] = {}

    def adjacency(self) -> dict[int, frozenset]:
        """Nodes joined to each node by an edge (label other than 2)."""
        if self._adj is None:
            adj = {n: set() for n in self.nodes}
            for pair in self.edges:
                a, b = tuple(pair)
                adj.setdefault(a, set()).add(b)
                adj.setdefault(b, set()).add(a)
            self._adj = {n: frozenset(v) for n, v in adj.items()}
        return self._adj

    def label(self, i: int, j: int):
        if i == j:
            raise DiagramError("no label on the diagonal")
        return self.edges.get(frozenset((i, j)), 2)

    def neighbours(self, i: int) -> list[int]:
        return [j for j in self.nodes if j != i and self.label(i, j) != 2]

    def restrict(self, nodes: Iterable[int]) -> CoxeterDiagram:
        keep = [n for n in self.nodes if n in set(nodes)]
        s = set(keep)
        return CoxeterDiagram(keep, {p: l for p, l in self.edges.items() if p <= s})

    def relabel(self, mapping: dict[int, int]) -> CoxeterDiagram:
        def f(x):
            return mapping.get(x, x)

        return CoxeterDiagram(
            sorted(f(n) for n in self.nodes),
            {frozenset(f(x) for x in p): l for p, l in self.edges.items()},
        )

    def is_right_angled(self) -> bool:
        return all(not is_finite_label(l) for l in self.edges.values())

    def export(self) -> str:
        lines = ["# nodes: " + " ".join(map(str, self.nodes))]
        for pair, lab in sorted(self.edges.items(), key=lambda kv: sorted(kv[0])):
            i, j = sorted(pair)
            lines.append(f"{i} {j} {label_str(lab)}")
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str) -> CoxeterDiagram:
        nodes: list[int] = []
        edges: dict[frozenset, object] = {}
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            if line.startswith("# nodes:"):
                nodes = [int(x) for x in line.split(":", 1)[1].split()]
                continue
            if line.startswith("#"):
                continue
            i, j, lab = line.split()
            edges[frozenset((int(i), int(j)))] = parse_label(lab)
        for p in edges:
            for x in p:
                if x not in nodes:
                    nodes.append(x)
        return cls(sorted(nodes), edges)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CoxeterDiagram):
            return NotImplemented
        return sorted(self.nodes) == sorted(other.nodes) and self.edges == other.edges


def derive_diagram(space: QuadraticSpace, labels: Sequence[int] | None = None) -> CoxeterDiagram:
    labels = list(labels) if labels is not None else space.labels
    edges = {}
    for i, j in combinations(labels, 2):
        c = classify_pair(space.form, space.root(i), space.root(j))
        if not c.ok:
            raise DiagramError(f"pair (e_{i}, e_{j}): {c.reason}")
        edges[frozenset((i, j))] = c.label
    return CoxeterDiagram(labels, edges)


# ---------------------------------------------------------------------------
# classification of subdiagrams


@dataclass(frozen=True)
class Component:
    family: str  # "A", "B", ..., "I2", or "~A", "~B", ... for affine types
    rank: int
    nodes: tuple[int, ...]
    m: int | None = None  # dihedral label for I2

    @property
    def affine(self) -> bool:
        return self.family.startswith("~")

    @property
    def order(self) -> int | None:
        k = self.rank
        if self.affine:
            return None
        if self.family == "A":
            return factorial(k + 1)
        if self.family == "B":
            return 2 ** k * factorial(k)
        if self.family == "D":
            return 2 ** (k - 1) * factorial(k)
        if self.family == "I2":
            return 2 * self.m
        return _EXCEPTIONAL_ORDERS[(self.family, k)]

    @property
    def name(self) -> str:
        if self.family == "I2":
            return f"I2({self.m})"
        return f"{self.family}{self.rank}"


@dataclass(frozen=True)
class SubdiagramClass:
    kind: str  # "elliptic", "affine", "other"
    components: tuple[Component, ...] = ()
    reason: str = ""

    @property
    def order(self) -> int | None:
        if self.kind != "elliptic":
            return None
        out = 1
        for c in self.components:
            out *= c.order
        return out

    @property
    def rank(self) -> int:
        return sum(c.rank for c in self.components)

    @property
    def name(self) -> str:
        return " x ".join(c.name for c in self.components) if self.components else self.kind


def _components(diagram: CoxeterDiagram, nodes: Sequence[int]) -> list[list[int]]:
    left = list(nodes)
    s = set(nodes)
    adj = diagram.adjacency()
    out = []
    while left:
        stack, comp = [left[0]], {left[0]}
        while stack:
            x = stack.pop()
            for y in adj[x] & s:
                if y not in comp:
                    comp.add(y)
                    stack.append(y)
        out.append(sorted(comp))
        left = [x for x in left if x not in comp]
    return out


def _path_order(diagram: CoxeterDiagram, nodes: list[int]) -> list[int] | None:
    """Nodes of a path graph in order, or None when the component is not a path."""
    if len(nodes) == 1:
        return nodes
    deg = {x: len([y for y in nodes if y != x and diagram.label(x, y) != 2]) for x in nodes}
    ends = [x for x in nodes if deg[x] == 1]
    if len(ends) != 2 or any(d > 2 for d in deg.values()):
        return None
    path, prev = [ends[0]], None
    while len(path) < len(nodes):
        cur = path[-1]
        nxt = [y for y in nodes if y != cur and y != prev and diagram.label(cur, y) != 2]
        if len(nxt) != 1:
            return None
        prev = cur
        path.append(nxt[0])
    return path


def _classify_component(diagram: CoxeterDiagram, nodes: list[int]) -> Component | None:
    k = len(nodes)
    t = tuple(nodes)
    pairs = [(x, y, diagram.label(x, y)) for x, y in combinations(nodes, 2) if diagram.label(x, y) != 2]
    labels = [l for _, _, l in pairs]
    if ULTRAPARALLEL in labels:
        return None
    if PARALLEL in labels:
        return Component("~A", 1, t) if k == 2 else None
    if k == 1:
        return Component("A", 1, t)
    if k == 2:
        m = labels[0]
        if m == 3:
            return Component("A", 2, t)
        if m == 4:
            return Component("B", 2, t)
        return Component("I2", 2, t, m)
    n_edges = len(pairs)
    if n_edges == k:
        # cycle: only the all-3 cycle is (affine) Coxeter
        path = _cycle_ok(diagram, nodes)
        if path and all(l == 3 for l in labels):
            return Component("~A", k - 1, t)
        return None
    if n_edges != k - 1:
        return None
    path = _path_order(diagram, nodes)
    if path is not None:
        seq = [diagram.label(path[i], path[i + 1]) for i in range(k - 1)]
        return _classify_path(seq, t)
    return _classify_branched(diagram, nodes, t)


def _cycle_ok(diagram: CoxeterDiagram, nodes: list[int]) -> bool:
    return all(
        len([y for y in nodes if y != x and diagram.label(x, y) != 2]) == 2 for x in nodes
    )


def _classify_path(seq: list[int], t: tuple[int, ...]) -> Component | None:
    k = len(seq) + 1
    if all(l == 3 for l in seq):
        return Component("A", k, t)
    if seq[-1] == 4 and all(l == 3 for l in seq[:-1]) or seq[0] == 4 and all(l == 3 for l in seq[1:]):
        if k >= 3:
            return Component("B", k, t)
    if seq == [3, 4, 3]:
        return Component("F", 4, t)
    if seq in ([5, 3], [3, 5]):
        return Component("H", 3, t)
    if seq in ([5, 3, 3], [3, 3, 5]):
        return Component("H", 4, t)
    if k >= 3 and seq[0] == 4 and seq[-1] == 4 and all(l == 3 for l in seq[1:-1]):
        return Component("~C", k - 1, t)
    if seq in ([3, 3, 4, 3], [3, 4, 3, 3]):
        return Component("~F", 4, t)
    if seq in ([6, 3], [3, 6]):
        return Component("~G", 2, t)
    return None


def _classify_branched(diagram: CoxeterDiagram, nodes: list[int], t) -> Component | None:
    k = len(nodes)
    adj = {x: [y for y in nodes if y != x and diagram.label(x, y) != 2] for x in nodes}
    branch = [x for x in nodes if len(adj[x]) >= 3]
    labels = {frozenset((x, y)): diagram.label(x, y) for x in nodes for y in adj[x]}
    if any(len(adj[x]) > 4 for x in nodes):
        return None
    if any(len(adj[x]) == 4 for x in nodes):
        if k == 5 and all(l == 3 for l in labels.values()):
            return Component("~D", 4, t)
        return None

    def arms(center, avoid=()):
        result = []
        for start in adj[center]:
            if start in avoid:
                continue
            arm, prev, cur = [start], center, start
            while True:
                nxt = [y for y in adj[cur] if y != prev]
                if len(nxt) != 1:
                    break
                prev, cur = cur, nxt[0]
                arm.append(cur)
            if len(adj[arm[-1]]) != 1:
                result.append(None)
            else:
                result.append(arm)
        return result

    if len(branch) == 1:
        c = branch[0]
        arm_list = arms(c)
        if any(a is None for a in arm_list):
            return None
        four = [p for p, l in labels.items() if l == 4]
        others = [l for l in labels.values() if l != 4]
        if any(l != 3 for l in others):
            return None
        lens = sorted(len(a) for a in arm_list)
        if not four:
            if lens[0] == 1 and lens[1] == 1:
                return Component("D", k, t)
            if lens == [1, 2, 2]:
                return Component("E", 6, t)
            if lens == [1, 2, 3]:
                return Component("E", 7, t)
            if lens == [1, 2, 4]:
                return Component("E", 8, t)
            if lens == [2, 2, 2]:
                return Component("~E", 6, t)
            if lens == [1, 3, 3]:
                return Component("~E", 7, t)
            if lens == [1, 2, 5]:
                return Component("~E", 8, t)
            return None
        if len(four) != 1:
            return None
        # affine B: the 4 sits on the terminal edge of an arm, other two arms are leaves
        for a in arm_list:
            chain = [c] + a
            if frozenset((chain[-2], chain[-1])) == four[0]:
                rest = [b for b in arm_list if b is not a]
                if all(len(b) == 1 for b in rest):
                    return Component("~B", k - 1, t)
        return None
    if len(branch) == 2 and all(l == 3 for l in labels.values()):
        ok = True
        for b in branch:
            leaves = [y for y in adj[b] if len(adj[y]) == 1]
            if len(leaves) != 2:
                ok = False
        if ok and k >= 6:
            return Component("~D", k - 1, t)
    return None


def classify_subdiagram(diagram: CoxeterDiagram, nodes: Iterable[int]) -> SubdiagramClass:
    nodes = sorted(set(nodes))
    if not nodes:
        raise DiagramError("empty subdiagram")
    comps = []
    cache = diagram._component_cache
    for comp in _components(diagram, nodes):
        key = tuple(comp)
        if key not in cache:
            cache[key] = _classify_component(diagram, comp)
        c = cache[key]
        if c is None:
            return SubdiagramClass("other", reason=f"component {comp} is neither finite nor affine")
        comps.append(c)
    comps.sort(key=lambda c: c.nodes)
    if all(not c.affine for c in comps):
        return SubdiagramClass("elliptic", tuple(comps))
    if all(c.affine for c in comps):
        return SubdiagramClass("affine", tuple(comps))
    return SubdiagramClass("other", tuple(comps), "mixes finite and affine components")


def _compatible(diagram: CoxeterDiagram, i: int, j: int, allow_parallel: bool) -> bool:
    lab = diagram.label(i, j)
    return is_finite_label(lab) or (allow_parallel and lab == PARALLEL)


def elliptic_subsets(diagram: CoxeterDiagram, max_size: int | None = None):
    """Yield every elliptic subset (as a sorted tuple) by pruned depth-first search."""
    nodes = sorted(diagram.nodes)

    def extend(current: list[int], candidates: list[int]):
        for idx, x in enumerate(candidates):
            new = current + [x]
            cls = classify_subdiagram(diagram, new)
            if cls.kind != "elliptic":
                continue
            yield tuple(new), cls
            if max_size is None or len(new) < max_size:
                rest = [y for y in candidates[idx + 1:] if _compatible(diagram, x, y, False)]
                yield from extend(new, rest)

    yield from extend([], nodes)


def _max_clique(nodes: list[int], adjacent, bound: int) -> int:
    best = 0

    def grow(size: int, cands: list[int]):
        nonlocal best
        if size > best:
            best = size
        if best >= bound:
            return
        for i, x in enumerate(cands):
            if size + len(cands) - i <= best:
                return
            grow(size + 1, [y for y in cands[i + 1:] if adjacent(x, y)])

    grow(0, nodes)
    return best


def parabolic_lcm(diagram: CoxeterDiagram, max_size: int | None = None) -> FactoredInt:
    """LCM of the orders of all finite standard parabolic subgroups."""
    if not diagram.nodes:
        return FactoredInt({})
    if diagram.is_right_angled():
        # every finite parabolic is (Z/2)^k for a set of k pairwise commuting generators
        bound = max_size or len(diagram.nodes)
        k = _max_clique(sorted(diagram.nodes), lambda x, y: diagram.label(x, y) == 2, bound)
        return factorize(2 ** k)
    return lcm_factored(cls.order for _, cls in elliptic_subsets(diagram, max_size))


def maximal_elliptic_subsets(diagram: CoxeterDiagram, max_size: int | None = None) -> list[tuple[int, ...]]:
    subsets = [s for s, _ in elliptic_subsets(diagram, max_size)]
    ss = [set(s) for s in subsets]
    return [s for s, a in zip(subsets, ss) if not any(a < b for b in ss)]


def triangle_type(diagram: CoxeterDiagram, triple: Sequence[int]) -> tuple:
    """Sorted labels of the three pairs, with non-finite edges reported as infinity."""
    i, j, k = triple
    labs = []
    for a, b in ((i, j), (i, k), (j, k)):
        lab = diagram.label(a, b)
        labs.append(lab if is_finite_label(lab) else math.inf)
    return tuple(sorted(labs))


# ---------------------------------------------------------------------------
# vertices


@dataclass(frozen=True)
class Vertex:
    facets: frozenset
    ideal: bool

    def sorted_facets(self) -> tuple[int, ...]:
        return tuple(sorted(self.facets))


@dataclass
class VertexCensus:
    finite: list[Vertex]
    ideal: list[Vertex]

    @property
    def counts(self) -> tuple[int, int]:
        return len(self.finite), len(self.ideal)


def vertex_census(
    space: QuadraticSpace,
    diagram: CoxeterDiagram | None = None,
    max_facets: int = 40,
) -> VertexCensus:
    """Finite and ideal vertices of the polytope {x : <x, e_k> <= 0 for all k}.

    Candidate vertices come from rank-n sets of pairwise non-ultraparallel facets; the
    orthogonal line w of each is kept when it lies in the closed polytope, and its
    vertex is identified by the set of facets containing it.
    """
    diagram = diagram or derive_diagram(space)
    labels = sorted(diagram.nodes)
    if len(labels) > max_facets and not diagram.is_right_angled():
        raise SizeError(f"{len(labels)} facets exceed the vertex census bound {max_facets}")
    n = space.dim
    form = space.form
    # the covector of e_k is (d_i e_k,i)_i; <x, e_k> = covector . x
    cov = {k: [d * x for d, x in zip(form.diag, space.root(k))] for k in labels}
    found: dict[frozenset, Vertex] = {}

    def consider(subset: list[int]) -> None:
        basis = nullspace([cov[k] for k in subset], n + 1)
        if len(basis) != 1:
            return
        w = basis[0]
        if w[0].sign() < 0:
            w = [-x for x in w]
        elif w[0].sign() == 0:
            return
        zero = GoldenRational.coerce(0)
        norm = zero
        for d, x in zip(form.diag, w):
            norm = norm + x * x * d
        if norm.sign() > 0:
            return
        incident = []
        for k in labels:
            val = zero
            for c, x in zip(cov[k], w):
                val = val + x * c
            s = val.sign()
            if s > 0:
                return
            if s == 0:
                incident.append(k)
        key = frozenset(incident)
        if key not in found:
            found[key] = Vertex(key, norm.sign() == 0)

    def grow(current: list[int], cands: list[int]) -> None:
        if len(current) == n:
            if not any(set(current) <= v.facets for v in found.values()):
                consider(current)
            return
        for i, x in enumerate(cands):
            grow(current + [x], [y for y in cands[i + 1:] if _compatible(diagram, x, y, True)])

    grow([], labels)
    verts = sorted(found.values(), key=lambda v: v.sorted_facets())
    return VertexCensus([v for v in verts if not v.ideal], [v for v in verts if v.ideal])

