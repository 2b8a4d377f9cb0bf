"""Scenario runner: executes the bundled verification scenarios and assembles reports.

A scenario is a JSON file under ``geobound/data/scenarios``.  Each check produces an
:class:`Entry` with status ``pass``, ``fail`` or ``flag``.  Known data discrepancies
carry a tag; a tagged finding listed in the scenario's ``expected_flags`` is reported
as ``flag``, any other tagged finding as ``fail``, and an expected tag that never
fires is itself a failure.
"""
from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .colouring import (
    Colouring,
    check_orientable,
    check_proper,
    colouring_rank,
    extend_colouring,
    verify_witness,
)
from .coxdiagram import derive_diagram, parabolic_lcm, triangle_type
from .datasets import load_dataset, load_scenario, scenario_names
from .errors import DiagramError, GeoboundError, OrderOverflow, RepresentationError
from .exactring import FactoredInt
from .growth import GrowthScenario, growth_report, hall_count, log_ratio, oracle_count
from .grouphoms import (
    ColouringMap,
    MatrixRep,
    RetractionMap,
    Word,
    coset_enumerate,
    coxeter_presentation,
    newman_premise,
    no_torsion_premise,
    orientation_parity,
    reduction_order,
    retraction_check,
    subgroup_lemma_check,
)
from .polymodel import facet_diagram, load_model


@dataclass
class Entry:
    scenario: str
    seq: int
    check: str
    status: str
    value: Any = None
    expected: Any = None
    source: str | None = None
    detail: str = ""
    flag: str | None = None

    def record(self) -> dict:
        return {
            "scenario": self.scenario,
            "seq": self.seq,
            "check": self.check,
            "status": self.status,
            "value": _jsonable(self.value),
            "expected": _jsonable(self.expected),
            "source": self.source,
            "detail": self.detail,
            "flag": self.flag,
        }


def _jsonable(x):
    if isinstance(x, FactoredInt):
        return x.value
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, Word):
        return x.serialize()
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in sorted(x.items(), key=lambda kv: str(kv[0]))}
    return x


def _norm_expected(x):
    """Scenario files write infinity as the string 'inf'."""
    if isinstance(x, list):
        return tuple(math.inf if v == "inf" else v for v in x)
    return x


@dataclass
class Report:
    entries: list[Entry] = field(default_factory=list)

    @property
    def failures(self) -> list[Entry]:
        return [e for e in self.entries if e.status == "fail"]

    @property
    def flags(self) -> list[Entry]:
        return [e for e in self.entries if e.status == "flag"]

    @property
    def exit_code(self) -> int:
        return 1 if self.failures else 0

    def machine(self) -> str:
        lines = [json.dumps(e.record(), sort_keys=True, ensure_ascii=False) for e in self.entries]
        return "\n".join(lines) + ("\n" if lines else "")

    def text(self) -> str:
        out, current = [], None
        for e in self.entries:
            if e.scenario != current:
                current = e.scenario
                out.append(f"== {current}")
            exp = "" if e.expected is None else f" (expected {_jsonable(e.expected)} from {e.source})"
            val = "" if e.value is None else f" {_jsonable(e.value)}"
            tag = f" [{e.flag}]" if e.flag else ""
            line = f"  {e.status.upper():4} {e.check}:{val}{exp}{tag}"
            if e.detail:
                line += f" -- {e.detail}"
            out.append(line)
        n = len({e.scenario for e in self.entries})
        out.append(f"{n} scenarios, {len(self.entries)} checks, {len(self.failures)} failed, {len(self.flags)} flagged")
        return "\n".join(out) + "\n"


class _Recorder:
    def __init__(self, scenario: dict):
        self.name = scenario["name"]
        self.expected_flags = set(scenario.get("expected_flags", []))
        self.raised: set[str] = set()
        self.entries: list[Entry] = []

    def add(self, check, ok, value=None, expected=None, source=None, detail=""):
        status = "pass" if ok else "fail"
        self.entries.append(Entry(self.name, len(self.entries), check, status, value, expected, source, detail))

    def compare(self, check, value, expected, source, detail=""):
        self.add(check, value == expected, value, expected, source, detail)

    def flag(self, check, tag, value=None, expected=None, source=None, detail=""):
        self.raised.add(tag)
        status = "flag" if tag in self.expected_flags else "fail"
        if status == "fail":
            detail = f"unexpected discrepancy: {detail}"
        self.entries.append(Entry(self.name, len(self.entries), check, status, value, expected, source, detail, tag))

    def finish(self) -> list[Entry]:
        for tag in sorted(self.expected_flags - self.raised):
            self.add("expected-flags", False, tag, None, "expected_flags", f"expected flag {tag!r} was not raised")
        return self.entries


# ---------------------------------------------------------------------------
# polytope scenarios


def _fmt_triangle(t) -> str:
    return "(" + ",".join("inf" if math.isinf(x) else str(x) for x in t) + ")"


def run_polytope(sc: dict) -> list[Entry]:
    rec = _Recorder(sc)
    space = load_dataset(sc["dataset"])
    relabel = {int(k): int(v) for k, v in sc.get("relabel", {}).items()}

    def tr(labels):
        return [relabel.get(int(x), int(x)) for x in labels]

    kept = tr(sc["kept"])
    delta = Word(tuple(tr(Word.parse(sc["delta"]).letters)))
    moduli = list(sc.get("moduli", []))

    # referenced generators exist
    refs = sorted(set(kept) | set(delta))
    missing = [x for x in refs if x not in space.roots]
    if missing:
        rec.flag(
            "references",
            "missing-generator",
            missing,
            detail=f"scenario uses {', '.join(f's{x}' for x in missing)}; dataset has {len(space.roots)} roots "
            f"e{min(space.labels)}..e{max(space.labels)}",
        )
    else:
        rec.add("references", True, refs)

    # root validation and reflection identities
    report = space.validate(sc.get("expected_norm"))
    statuses = {k: v for k, v in report.by_status().items() if k != "ok"}
    bad_families = [f for f in report.families if not f.ok]
    if statuses or bad_families:
        parts = [f"{k}: {_ranges(v)}" for k, v in sorted(statuses.items())]
        parts += [f"family {f.first}-{f.last} declares {f.declared} roots, pattern yields {f.generated}" for f in bad_families]
        rec.flag("root-validation", "root-anomaly", statuses, detail="; ".join(parts))
    else:
        norm = sc.get("expected_norm")
        rec.add("root-validation", True, len(report.roots), detail=f"all roots valid" + (f", norm {norm}" if norm else ""))
    valid = space.restrict(space.valid_labels())
    bad_refl = []
    for k in valid.labels:
        checks = valid.reflection(k).check(valid.form, valid.root(k))
        if not all(checks.values()):
            bad_refl.append((k, [c for c, ok in checks.items() if not ok]))
    rec.add(
        "reflection-identities",
        not bad_refl,
        len(valid.labels) - len(bad_refl),
        len(valid.labels),
        "dataset",
        "R^2 = I, det R = -1, R^T G R = G, R e = -e" + (f"; failing {bad_refl}" if bad_refl else ""),
    )

    # diagram
    try:
        diagram = derive_diagram(valid)
    except DiagramError as exc:
        rec.add("diagram", False, detail=str(exc))
        return rec.finish()
    rec.add(
        "diagram",
        True,
        {"nodes": len(diagram.nodes), "edges": len(diagram.edges)},
        detail="right-angled" if diagram.is_right_angled() else "",
    )

    if relabel:
        _relabel_evidence(rec, sc, space, valid, diagram, relabel, moduli)

    kept_missing = [k for k in kept if k not in diagram.nodes]
    expected_tri = _norm_expected(sc.get("expected_triangle"))
    if kept_missing:
        rec.flag("triangle", "missing-generator", None, expected_tri, "expected_triangle",
                 f"triangle type undefined: {', '.join(f's{k}' for k in kept_missing)} absent")
    elif expected_tri is not None:
        tt = triangle_type(diagram, kept)
        rec.compare("triangle", tt, expected_tri, "expected_triangle", _fmt_triangle(tt))

    present = [k for k in kept if k in diagram.nodes]
    cert = retraction_check(diagram, present)
    if kept_missing:
        rec.flag("retraction", "missing-generator", cert.ok, detail=f"partial certificate on {present}: {cert.text()}")
    else:
        rec.add("retraction", cert.ok, list(cert.kept), detail=cert.text())

    lcm = parabolic_lcm(diagram, max_size=space.dim)
    exp_lcm = sc.get("expected_lcm")
    if exp_lcm is not None and missing:
        note = "consistent despite missing root" if lcm.value == exp_lcm else f"computed {lcm} from the {len(diagram.nodes)} available roots"
        rec.flag("parabolic-lcm", "missing-generator", lcm, exp_lcm, "expected_lcm", note)
    elif exp_lcm is not None:
        rec.compare("parabolic-lcm", lcm.value, exp_lcm, "expected_lcm", str(lcm))
    else:
        rec.add("parabolic-lcm", True, lcm, detail=str(lcm))

    premise = sc.get("premise", "no-torsion")
    premises_ok = True
    for m in moduli:
        if premise == "newman":
            ok = newman_premise(m)
            why = f"m = {m} > 2: congruence kernel torsion-free" if ok else f"m = {m} <= 2"
        else:
            ok = no_torsion_premise(m, lcm, space.form.ring)
            why = f"{m} odd prime, not dividing {lcm}" if ok else f"{m} is not an odd prime coprime to {lcm}"
        premises_ok &= ok
        rec.add(f"premise mod {m}", ok, premise, detail=why)

    # delta
    letters_ok = all(x in valid.roots for x in delta)
    rep = MatrixRep(valid) if letters_ok else None
    try:
        parity = orientation_parity(delta, rep)
        rec.compare("delta-parity", parity, -1, "delta",
                    f"{delta}" + (", determinant cross-checked" if rep else ", no matrices for missing letters"))
    except RepresentationError as exc:
        rec.add("delta-parity", False, detail=str(exc))
    image = RetractionMap(frozenset(kept)).evaluate(delta)
    rec.add("delta-in-ker-R", len(image) == 0, str(image), "1", "kept")

    if not moduli or not letters_ok:
        return rec.finish()
    orders = []
    expected_orders = sc.get("expected_orders") or [None] * len(moduli)
    for m, exp in zip(moduli, expected_orders):
        try:
            k = reduction_order(valid, delta, m)
        except OrderOverflow as exc:
            rec.add(f"order mod {m}", False, detail=str(exc))
            return rec.finish()
        orders.append(k)
        if exp is None:
            rec.add(f"order mod {m}", True, k, detail=str(k))
        else:
            rec.compare(f"order mod {m}", k.value, exp, "expected_orders", str(k))
    if len(orders) == 2:
        lem = subgroup_lemma_check(*orders)
        rec.add("subgroup-lemma", lem.holds, lem.lcm, detail=lem.text())
        cert_ok = lem.holds and premises_ok
        rec.add(
            "certificate",
            cert_ok,
            "torsion-free finite-index subgroup containing delta" if cert_ok else "not certified",
            detail="gcd-exponent condition and torsion-free kernels"
            + ("" if cert_ok else (": condition fails" if not lem.holds else ": premise fails")),
        )
    return rec.finish()


def _relabel_evidence(rec, sc, space, valid, diagram, relabel, moduli) -> None:
    """Record why the scenario's label map is needed: evaluate the literal labels too."""
    literal_kept = [int(x) for x in sc["kept"]]
    literal_delta = Word.parse(sc["delta"])
    parts = []
    if all(k in diagram.nodes for k in literal_kept):
        parts.append(f"literal triangle {_fmt_triangle(triangle_type(diagram, literal_kept))}")
    if moduli and all(x in valid.roots for x in literal_delta):
        ks = [reduction_order(valid, literal_delta, m) for m in moduli]
        verdict = subgroup_lemma_check(*ks).holds if len(ks) == 2 else None
        parts.append("literal orders " + ", ".join(str(k.value) for k in ks)
                     + (f", gcd-exponent condition {'holds' if verdict else 'fails'}" if verdict is not None else ""))
    swaps = ", ".join(f"s{a} -> e{b}" for a, b in sorted(relabel.items()))
    rec.flag("labels", "relabel", {str(k): v for k, v in relabel.items()}, detail=f"{swaps}; " + "; ".join(parts))


def _ranges(labels: list[int]) -> str:
    labels = sorted(labels)
    out, start, prev = [], labels[0], labels[0]
    for x in labels[1:] + [None]:
        if x is not None and x == prev + 1:
            prev = x
            continue
        out.append(f"{start}-{prev}" if prev != start else f"{start}")
        if x is not None:
            start = prev = x
    return ",".join(out)


# ---------------------------------------------------------------------------
# colouring scenarios


def _scenario_colouring(sc: dict) -> Colouring:
    if "extend" in sc:
        ext = sc["extend"]
        base = Colouring.from_list(ext["base"], ext["s"])
        return extend_colouring(base, ext["total"])
    return Colouring.from_list(sc["colours"], sc["s"])


def _growth_scenario(g: dict) -> GrowthScenario:
    return GrowthScenario(
        g.get("name", "growth"),
        g["rank"],
        g["multiplier"],
        Fraction(g.get("unit_coefficient", 1)),
        g.get("unit", "vol"),
        g.get("cover", 2),
    )


def run_colouring(sc: dict) -> list[Entry]:
    rec = _Recorder(sc)
    model = load_model(sc["model"])
    col = _scenario_colouring(sc)
    exp = sc.get("expect", {})
    rec.add("model-sanity", not model.sanity(), len(model.facets), detail="; ".join(model.sanity()[:3]))

    prop = check_proper(model, col)
    detail = f"{prop.checked_vertices} vertices, {prop.checked_edges} edges"
    if prop.violations:
        detail += "; " + "; ".join(str(v) for v in prop.violations[:3])
    rec.compare("proper", prop.ok, exp.get("proper", True), "expect.proper", detail)

    ori = check_orientable(col)
    rec.compare("orientable", ori.orientable, exp.get("orientable", False), "expect.orientable", ori.text())
    if "witness" in sc:
        w = sc["witness"]
        rec.add("witness", verify_witness(col, w), w, w, "witness",
                f"odd size, zero colour sum; smallest found {list(ori.witness) if ori.witness else None}")
    rk = colouring_rank(col)
    if "rank" in exp:
        rec.compare("rank", rk.rank, exp["rank"], "expect.rank", f"kernel index {rk.index}")

    diagram = facet_diagram(model)
    cmap = ColouringMap(col)
    kept = sc.get("kept")
    if kept:
        cert = retraction_check(diagram, kept)
        rec.add("retraction", cert.ok, kept, detail=cert.text())
        rmap = RetractionMap(frozenset(kept), frozenset(col.colours))
    for a in sc.get("assertions", []):
        word = Word.parse(a["word"])
        kind = a["map"]
        if kind == "colouring":
            rec.compare(f"lambda({word})", cmap.evaluate(word), a["expected"], "assertions")
        elif kind == "retraction":
            got = rmap.evaluate(word)
            rec.compare(f"R({word})", str(got), str(Word.parse(a["expected"])), "assertions")
        elif kind == "parity":
            rec.compare(f"parity({word})", orientation_parity(word), a["expected"], "assertions")
    cs = sc.get("coset")
    if cs:
        pres = coxeter_presentation(diagram, cs["nodes"])
        res = coset_enumerate(pres, cs["words"], cs.get("max_cosets", 10 ** 5))
        detail = f"{pres.text()}; {res.cosets_defined} cosets defined"
        if res.index == cs["expected"]:
            rec.add("coset-index", True, res.index, cs["expected"], "coset.expected", detail)
        elif cs.get("on_mismatch") == "model-fidelity":
            rec.flag("coset-index", "model-fidelity", res.index, cs["expected"], "coset.expected", detail)
        else:
            rec.add("coset-index", False, res.index, cs["expected"], "coset.expected", detail)
    g = sc.get("growth")
    if g:
        table = growth_report(_growth_scenario(g), g["n_max"])
        row = table.rows[-1]
        rec.add(
            "growth",
            table.ok,
            {"n": row.n, "index": row.index, "measure": table.measure_text(row)},
            detail="; ".join(f"n={r.n}: index {r.index}, {table.measure_text(r)}, sum {r.cumulative} >= {r.bound}"
                             for r in table.rows),
        )
    return rec.finish()


# ---------------------------------------------------------------------------
# growth suite


def run_growth(sc: dict) -> list[Entry]:
    rec = _Recorder(sc)
    o = sc["oracle"]
    mismatches = [
        (r, n) for r in range(1, o["max_rank"] + 1) for n in range(1, o["max_n"] + 1)
        if hall_count(r, n) != oracle_count(r, n)
    ]
    rec.add("hall-vs-oracle", not mismatches, f"r <= {o['max_rank']}, n <= {o['max_n']}",
            detail=f"mismatches {mismatches}" if mismatches else "all equal")
    b = sc["bound"]
    for d in b["ranks"]:
        bad = [n for n in range(1, b["n_max"] + 1) if sum(hall_count(d, k) for k in range(1, n + 1)) < math.factorial(n) ** (d - 1)]
        rec.add(f"bound d={d}", not bad, f"n <= {b['n_max']}", detail=f"cumulative >= (n!)^{d - 1}" + (f"; fails at {bad}" if bad else ""))
    lw = sc.get("log_window")
    if lw:
        ratios = {n: log_ratio(lw["rank"], n) for n in range(lw["n_min"], lw["n_max"] + 1)}
        outside = [n for n, v in ratios.items() if not lw["low"] <= v <= lw["high"]]
        value = {str(n): round(ratios[n], 4) for n in (lw["n_min"], lw["n_max"])}
        window = f"[{lw['low']}, {lw['high']}]"
        if outside:
            rec.flag("log-window", "log-window", value, window, "log_window",
                     f"log2 N_{lw['rank']}(n) / (n log2 n) outside {window} for n = {_ranges(outside)}; ratio increases towards 2")
        else:
            rec.add("log-window", True, value, window, "log_window")
    return rec.finish()


# ---------------------------------------------------------------------------
# running

RUNNERS = {"polytope": run_polytope, "colouring": run_colouring, "growth": run_growth}


def run_scenario(sc: dict | str) -> Report:
    if isinstance(sc, str):
        sc = load_scenario(sc)
    try:
        runner = RUNNERS[sc["kind"]]
    except KeyError:
        return Report([Entry(sc.get("name", "?"), 0, "scenario", "fail", detail=f"unknown kind {sc.get('kind')!r}")])
    try:
        return Report(runner(sc))
    except GeoboundError as exc:
        return Report([Entry(sc["name"], 0, "load", "fail", detail=str(exc))])


def _run_named(name: str) -> list[Entry]:
    return run_scenario(name).entries


def run_all(jobs: int = 1, names: list[str] | None = None) -> Report:
    """Run every bundled scenario; output is sorted by scenario name whatever ``jobs`` is."""
    names = sorted(scenario_names() if names is None else names)
    if jobs > 1 and len(names) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_named, names))
    else:
        results = [_run_named(n) for n in names]
    entries = [e for res in results for e in res]
    entries.sort(key=lambda e: (e.scenario, e.seq))
    return Report(entries)
