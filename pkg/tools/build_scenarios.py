"""Regenerate the bundled scenario files under src/geobound/data/scenarios.

    python tools/build_scenarios.py
"""
from __future__ import annotations

import json
from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "src" / "geobound" / "data" / "scenarios"
INF = "inf"


def polytope(name, dataset, kept, triangle, delta, moduli, premise, orders, **extra):
    sc = {
        "name": name,
        "kind": "polytope",
        "dataset": dataset,
        "kept": kept,
        "expected_triangle": triangle,
        "delta": " ".join(map(str, delta)),
        "moduli": moduli,
        "premise": premise,
        "expected_orders": orders,
    }
    sc.update(extra)
    return sc


def scenarios():
    out = [
        polytope("P5-compact", "P5-compact", [5, 6, 9], [2, INF, INF], [1, 2, 3, 4, 7], [7, 11], "no-torsion",
                 [800, 8052], expected_lcm=57600, expected_flags=["missing-generator"]),
        polytope("P6-compact", "P6-compact", [6, 9, 17], [2, INF, INF], [7, 13, 18], [7, 11], "no-torsion",
                 [8, 44], expected_lcm=230400),
    ]
    for n in range(4, 9):
        extra = {"expected_norm": 1}
        if n == 8:
            extra["expected_flags"] = ["root-anomaly"]
        out.append(polytope(f"P{n}-cusped", f"P{n}-cusped", [3, 4, n + 2], [2, INF, INF], [1, 2, n + 1],
                            [3, 4], "newman", [4, 2], **extra))
    long_delta = list(range(1, 9))
    out += [
        polytope("P9-cusped", "P9-cusped", [9, 10, 12], [2, INF, INF], long_delta + [11], [3, 4], "newman", [84, 34]),
        polytope("P10-cusped", "P10-cusped", [10, 11, 13], [2, 4, INF], long_delta + [12], [3, 4], "newman", [84, 34],
                 relabel={"11": 12, "12": 11}, expected_flags=["relabel"]),
        polytope("P11-cusped", "P11-cusped", [11, 12, 18], [4, 4, INF], [7, 8, 16], [3, 4], "newman", [6, 4]),
        polytope("P12-cusped", "P12-cusped", [12, 13, 20], [4, 4, INF], [2, 11, 18], [3, 4], "newman", [6, 4]),
        polytope("P13-cusped", "P13-cusped", [13, 14, 19], [2, INF, INF], long_delta + [15], [3, 4], "newman", [84, 34],
                 relabel={"14": 15, "15": 14}, expected_flags=["relabel"]),
        # bipyramid as a polytope: labels follow the canonical labelling of the colouring model
        polytope("R3", "R3", [1, 2, 3], [2, INF, INF], [4, 5, 6], [], "newman", None, expected_norm=1,
                 relabel={"2": 4, "3": 2, "4": 3}, expected_flags=["relabel"]),
    ]

    lam = [1, 2, 4, 4, 2, 6, 3, 5, 5, 3, 1, 7]
    g4_words = ["1 11", "1 9 1 9", "1 3 11 3"]
    dodeca_assert = (
        [{"map": "colouring", "word": w, "expected": 0} for w in g4_words + ["1 2 7", "3 4", "8 9", "2 10 11", "2 4 6"]]
        + [{"map": "retraction", "word": w, "expected": e} for w, e in
           [("1 2 7", "1"), ("3 4", "3"), ("8 9", "9"), ("2 10 11", "11"), ("2 4 6", "")]
           + [(w, w) for w in g4_words]]
        + [{"map": "parity", "word": "2 4 6", "expected": -1}]
    )
    out.append({
        "name": "colouring-dodecahedron",
        "kind": "colouring",
        "model": "dodecahedron",
        "s": 3,
        "colours": lam,
        "expect": {"proper": True, "orientable": False, "rank": 3},
        "witness": [1, 2, 7],
        "kept": [1, 3, 9, 11],
        "assertions": dodeca_assert,
        "coset": {"nodes": [1, 3, 9, 11], "words": g4_words, "expected": 8, "on_mismatch": "model-fidelity"},
        "growth": {"name": "dodecahedron", "rank": 3, "multiplier": 8, "unit": "vol(D)", "unit_coefficient": 1,
                   "cover": 1, "n_max": 6},
    })
    out.append({
        "name": "colouring-120-cell",
        "kind": "colouring",
        "model": "120-cell",
        "extend": {"base": lam, "s": 3, "total": 120},
        "expect": {"proper": True, "orientable": False, "rank": 111},
        "witness": [1, 2, 7],
        "kept": [1, 3, 9, 11],
        "assertions": [{"map": "colouring", "word": "2 4 6", "expected": 0},
                       {"map": "retraction", "word": "2 4 6", "expected": ""},
                       {"map": "parity", "word": "2 4 6", "expected": -1}],
    })
    f3 = ["1 2", "1 3", "1 4"]
    out.append({
        "name": "colouring-octagon",
        "kind": "colouring",
        "model": "octagon",
        "s": 3,
        "colours": [1, 1, 1, 1, 2, 3, 5, 6],
        "expect": {"proper": True, "orientable": False, "rank": 3},
        "witness": [1, 5, 6],
        "kept": [1, 2, 3, 4],
        "assertions": [{"map": "colouring", "word": w, "expected": 0} for w in f3 + ["6 7 8"]]
        + [{"map": "retraction", "word": w, "expected": w} for w in f3]
        + [{"map": "retraction", "word": "6 7 8", "expected": ""}, {"map": "parity", "word": "6 7 8", "expected": -1}],
        "coset": {"nodes": [1, 2, 3, 4], "words": f3, "expected": 2},
        "growth": {"name": "surface", "rank": 3, "multiplier": 8, "unit": "pi", "unit_coefficient": 2, "cover": 2,
                   "n_max": 6},
    })
    out.append({
        "name": "colouring-bipyramid",
        "kind": "colouring",
        "model": "bipyramid",
        "s": 3,
        "colours": [1, 1, 4, 7, 5, 2],
        "expect": {"proper": True, "orientable": False, "rank": 3},
        "witness": [4, 5, 6],
        "kept": [1, 2, 3],
        "assertions": [{"map": "colouring", "word": w, "expected": 0} for w in ["1 2", "3 1 2 3", "4 5 6"]]
        + [{"map": "retraction", "word": w, "expected": w} for w in ["1 2", "3 1 2 3"]]
        + [{"map": "retraction", "word": "4 5 6", "expected": ""}, {"map": "parity", "word": "4 5 6", "expected": -1}],
        "coset": {"nodes": [1, 2, 3], "words": ["1 2", "3 1 2 3"], "expected": 4},
    })
    out.append({
        "name": "growth-suite",
        "kind": "growth",
        "oracle": {"max_rank": 3, "max_n": 5},
        "bound": {"ranks": [2, 3, 4], "n_max": 30},
        "log_window": {"rank": 3, "n_min": 10, "n_max": 50, "low": 1.5, "high": 2.5},
        "expected_flags": ["log-window"],
    })
    return out


if __name__ == "__main__":
    OUT.mkdir(parents=True, exist_ok=True)
    for old in OUT.glob("*.json"):
        old.unlink()
    for sc in scenarios():
        (OUT / f"{sc['name']}.json").write_text(json.dumps(sc, indent=1) + "\n")
        print(sc["name"])
