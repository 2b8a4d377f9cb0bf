from __future__ import annotations

import json

from geobound.datasets import load_scenario, scenario_names
from geobound.harness import Report, run_all, run_scenario


def test_bundle_census():
    kinds = [load_scenario(n)["kind"] for n in scenario_names()]
    assert kinds.count("polytope") == 13
    assert kinds.count("colouring") == 4
    assert kinds.count("growth") == 1


def test_empty_run():
    rep = run_all(1, [])
    assert rep.entries == [] and rep.exit_code == 0 and rep.machine() == ""


def test_scenario_passes():
    rep = run_scenario("P6-compact")
    assert rep.exit_code == 0 and not rep.flags
    orders = [e.value for e in rep.entries if e.check.startswith("order")]
    assert orders == [8, 44]


def test_expected_values_cite_a_source():
    rep = run_all(1, ["P5-compact", "colouring-octagon", "growth-suite"])
    for e in rep.entries:
        if e.expected is not None:
            assert e.source


def test_wrong_expectation_fails():
    sc = load_scenario("P4-cusped")
    sc["expected_orders"] = [4, 3]
    rep = run_scenario(sc)
    bad = rep.failures
    assert rep.exit_code == 1
    assert [e.check for e in bad] == ["order mod 4"]
    assert bad[0].value == 2 and bad[0].expected == 3 and bad[0].source == "expected_orders"


def test_unlisted_flag_fails_and_unraised_flag_fails():
    sc = load_scenario("P5-compact")
    sc["expected_flags"] = []
    rep = run_scenario(sc)
    assert rep.exit_code == 1
    assert all(e.flag == "missing-generator" for e in rep.failures)

    sc = load_scenario("P4-cusped")
    sc["expected_flags"] = ["root-anomaly"]
    rep = run_scenario(sc)
    assert [e.check for e in rep.failures] == ["expected-flags"]


def test_p5_flags_but_passes():
    rep = run_scenario("P5-compact")
    assert rep.exit_code == 0
    lcm = next(e for e in rep.entries if e.check == "parabolic-lcm")
    assert lcm.status == "flag" and lcm.detail == "consistent despite missing root"


def test_p8_reports_exactly_the_two_families():
    rep = run_scenario("P8-cusped")
    flagged = [e for e in rep.entries if e.check == "root-validation"]
    assert len(flagged) == 1 and flagged[0].status == "flag"
    v = flagged[0].value
    assert v["isotropic"] == list(range(149, 184))
    assert v["timelike"] == list(range(233, 241))
    assert set(v) == {"isotropic", "timelike"}


def test_unloadable_data(tmp_path):
    sc = {"name": "broken", "kind": "polytope", "dataset": "P99", "kept": [1], "delta": "1"}
    rep = run_scenario(sc)
    assert rep.exit_code == 1 and rep.entries[0].check == "load"
    p = tmp_path / "x.json"
    p.write_text(json.dumps({"name": "odd", "kind": "teapot"}))
    assert run_scenario(str(p)).exit_code == 1


def test_machine_output_is_json_lines():
    rep = run_all(1, ["colouring-bipyramid", "R3"])
    lines = rep.machine().splitlines()
    recs = [json.loads(x) for x in lines]
    assert [(r["scenario"], r["seq"]) for r in recs] == sorted((r["scenario"], r["seq"]) for r in recs)
    assert rep.text().endswith("flagged\n")


def test_parallel_matches_serial():
    names = ["P4-cusped", "P9-cusped", "colouring-dodecahedron", "growth-suite"]
    assert run_all(1, names).machine() == run_all(3, names).machine()


def test_report_exit_code():
    assert Report().exit_code == 0
