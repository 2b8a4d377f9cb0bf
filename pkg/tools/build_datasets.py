"""Regenerate the bundled outer-normal datasets under src/geobound/data/datasets.

Families of roots are expanded from coefficient patterns; each family records the
index range it is declared on and how many vectors its pattern actually produces.

    python tools/build_datasets.py
"""
from __future__ import annotations

import json
from itertools import combinations
from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "src" / "geobound" / "data" / "datasets"

W = (0, 1)


def g(a, b=0):
    return (a, b)


def vec(n, coeffs):
    x = [(0, 0)] * (n + 1)
    for i, c in coeffs.items():
        x[i] = c if isinstance(c, tuple) else (c, 0)
    return x


def block_vectors(n, v0, blocks, pool):
    """All vectors v0*x_0 + sum over blocks (coef, count) of coef * (distinct basis vectors)."""
    out = []

    def rec(k, avail, coeffs):
        if k == len(blocks):
            out.append(vec(n, {**coeffs, 0: v0}))
            return
        coef, count = blocks[k]
        for chosen in combinations(avail, count):
            rest = [a for a in avail if a not in chosen]
            rec(k + 1, rest, {**coeffs, **{c: coef for c in chosen}})

    rec(0, list(pool), {})
    return out


def dump(name, ring, form, roots, families=(), notes=()):
    labels = sorted(roots)
    data = {
        "name": name,
        "ring": ring,
        "form": [list(d) for d in form],
        "labels": labels,
        "normals": [[list(c) for c in roots[k]] for k in labels],
        "families": list(families),
        "notes": list(notes),
    }
    with open(OUT / f"{name}.json", "w") as fh:
        json.dump(data, fh, indent=None, separators=(",", ":"))
        fh.write("\n")


def chain_roots(n, upto):
    return {i: vec(n, {i: -1, i + 1: 1}) for i in range(1, upto + 1)}


def compact():
    n = 5
    roots = chain_roots(n, 4)
    roots[5] = vec(n, {5: -1})
    roots[6] = vec(n, {0: W, 1: g(2, 1)})
    roots[7] = vec(n, {0: W, 1: W, 2: W, 3: W})
    roots[8] = vec(n, {0: g(1, 1), 1: g(1, 1), 2: W, 3: W, 4: W, 5: W})
    dump("P5-compact", "Z[w]", [g(1, -2)] + [g(1)] * 5, roots)

    n = 6
    roots = chain_roots(n, 5)
    roots[6] = vec(n, {6: -1})
    roots[7] = vec(n, {0: 1, 1: W, 2: W})
    roots[8] = vec(n, {k: W for k in range(5)})
    roots[9] = vec(n, {0: W, 1: g(0, 2)})
    roots[10] = vec(n, {0: g(1, 1), 1: g(1, 1), 2: g(1, 1), 3: W, 4: W, 5: W, 6: W})
    roots[11] = vec(n, {0: g(1, 2), 1: g(1, 3), 2: g(1, 1), 3: g(1, 1), 4: g(1, 1), 5: W, 6: W})
    roots[12] = vec(n, {0: g(1, 2), 1: g(2, 3), 2: W, 3: W, 4: W, 5: W, 6: W})
    roots[13] = vec(n, {0: g(2, 2), **{k: g(1, 2) for k in range(1, 6)}, 6: 1})
    roots[14] = vec(n, {0: g(2, 3), 1: g(2, 4), 2: g(2, 2), 3: g(1, 2), 4: g(1, 2), 5: g(1, 2), 6: 1})
    roots[15] = vec(n, {0: g(2, 3), 1: g(3, 4), 2: g(1, 2), 3: g(1, 2), 4: g(1, 2), 5: g(0, 2)})
    roots[16] = vec(n, {0: g(2, 4), 1: g(3, 6), **{k: g(1, 2) for k in range(2, 6)}, 6: 1})
    roots[17] = vec(n, {0: g(3, 4), 1: g(2, 5), **{k: g(2, 3) for k in range(2, 6)}, 6: W})
    roots[18] = vec(n, {0: g(4, 5), 1: g(4, 6), **{k: g(2, 4) for k in range(2, 6)}})
    dump("P6-compact", "Z[w]", [g(0, -2)] + [g(1)] * 6, roots)


# (first index, v0 coefficient, blocks, pool size) per family; pool size None = all of 1..n
CUSPED = {
    5: [(16, 2, [(1, 5)], None, 16)],
    6: [(22, 2, [(1, 5)], None, 27)],
    7: [(29, 2, [(1, 5)], None, 49), (50, 3, [(2, 1), (1, 6)], None, 56)],
    8: [
        (37, 2, [(1, 5)], None, 92),
        (93, 3, [(2, 1), (1, 6)], None, 148),
        (149, 4, [(2, 3), (1, 4)], 7, 204),
        (205, 5, [(2, 6), (1, 2)], None, 232),
        (233, 6, [(3, 1), (1, 7)], None, 240),
    ],
}


def pattern_text(v0, blocks, pool):
    parts = [f"{v0}v0"] + [f"{c}*[{k} distinct]" for c, k in blocks]
    return " + ".join(parts) + f" over indices 1..{pool}"


def level2_roots(n):
    """The basis roots -v_i, then e_{1,2}, e_{3,4}, then the other e_{i,j} in order."""
    roots = {i: vec(n, {i: -1}) for i in range(1, n + 1)}
    pairs = list(combinations(range(1, n + 1), 2))
    if n >= 4:
        pairs.remove((3, 4))
        pairs.insert(1, (3, 4))
    for k, (i, j) in enumerate(pairs, start=n + 1):
        roots[k] = vec(n, {0: 1, i: 1, j: 1})
    return roots


def cusped():
    notes3 = ["level-2 congruence polytope of -x0^2 + x1^2 + x2^2 + x3^2 (the right-angled bipyramid)"]
    dump("R3", "Z", [g(-1)] + [g(1)] * 3, level2_roots(3), notes=notes3)
    for n in range(4, 9):
        roots = level2_roots(n)
        families = []
        for first, v0, blocks, pool, last in CUSPED.get(n, []):
            pool = pool or n
            vs = block_vectors(n, v0, blocks, range(1, pool + 1))
            families.append(
                {"first": first, "last": last, "generated": len(vs), "pattern": pattern_text(v0, blocks, pool)}
            )
            for k, v in enumerate(vs[: last - first + 1]):
                roots[first + k] = v
        dump(f"P{n}-cusped", "Z", [g(-1)] + [g(1)] * n, roots, families)


def cusped_high():
    def f2(n, twos=()):
        return [g(-2)] + [g(2) if k in twos else g(1) for k in range(1, n + 1)]

    def ones(n, idx, v0, extra=None):
        c = {0: v0, **{k: 1 for k in idx}}
        c.update(extra or {})
        return vec(n, c)

    n = 9
    r = chain_roots(n, 8)
    r[9] = vec(n, {9: -1})
    r[10] = vec(n, {0: 1, 1: 2})
    r[11] = ones(n, range(1, 5), 1)
    r[12] = ones(n, range(1, 10), 2)
    dump("P9-cusped", "Z", f2(9), r)

    n = 10
    r = chain_roots(n, 9)
    r[10] = vec(n, {10: -1})
    r[11] = ones(n, range(1, 5), 1)
    r[12] = vec(n, {0: 1, 1: 2})
    r[13] = ones(n, range(1, 11), 2)
    dump("P10-cusped", "Z", f2(10), r)

    n = 11
    r = {i: vec(n, {i: -1, i + 1: 1}) for i in list(range(1, 8)) + [9, 10]}
    r[8] = vec(n, {8: -1})
    r[11] = vec(n, {11: -1})
    r[12] = ones(n, (9, 10, 11), 1)
    r[13] = vec(n, {0: 1, 1: 2, 9: 1})
    r[14] = ones(n, range(1, 5), 1)
    r[15] = ones(n, list(range(1, 7)) + [9, 10], 2)
    r[16] = ones(n, range(1, 10), 2)
    r[17] = ones(n, range(1, 12), 3, {1: 2, 2: 2})
    r[18] = ones(n, (9, 10, 11), 4, {k: 2 for k in range(1, 8)})
    dump("P11-cusped", "Z", f2(11, (9, 10, 11)), r)

    n = 12
    r = chain_roots(n, 10)
    r[11] = vec(n, {11: -1})
    r[12] = vec(n, {12: -1})
    r[13] = vec(n, {0: 1, 1: 2, 12: 1})
    r[14] = ones(n, range(1, 5), 1)
    r[15] = ones(n, list(range(1, 9)) + [12], 2)
    r[16] = ones(n, range(1, 11), 2)
    r[17] = ones(n, range(1, 12), 3, {12: 2})
    r[18] = ones(n, range(1, 13), 3, {1: 2, 2: 2})
    r[19] = ones(n, range(2, 12), 3, {1: 3})
    r[20] = vec(n, {0: 5, **{k: 2 for k in range(1, 13)}})
    dump("P12-cusped", "Z", f2(12, (12,)), r)

    n = 13
    r = chain_roots(n, 12)
    r[13] = vec(n, {13: -1})
    r[14] = ones(n, range(1, 5), 1)
    r[15] = vec(n, {0: 1, 1: 2})
    r[16] = ones(n, range(1, 11), 2)
    r[17] = ones(n, range(2, 13), 3, {1: 3})
    r[18] = ones(n, range(3, 14), 3, {1: 2, 2: 2})
    r[19] = vec(n, {0: 5, **{k: 2 for k in range(1, 14)}})
    dump("P13-cusped", "Z", f2(13), r)


if __name__ == "__main__":
    OUT.mkdir(parents=True, exist_ok=True)
    compact()
    cusped()
    cusped_high()
    for p in sorted(OUT.glob("*.json")):
        d = json.loads(p.read_text())
        print(f"{p.name}: {len(d['labels'])} normals")
