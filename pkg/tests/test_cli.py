from __future__ import annotations

import json

import pytest

from geobound.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_validate(capsys):
    code, out = run(capsys, "validate", "P6-compact")
    assert code == 0 and "reflections checked: 18, failing 0" in out
    code, out = run(capsys, "validate", "P8-cusped", "--norm", "1")
    assert code == 1 and "MISMATCH" in out


def test_diagram_and_triangle(capsys):
    code, out = run(capsys, "diagram", "R3")
    assert code == 0 and out.startswith("# nodes: 1 2 3 4 5 6")
    code, out = run(capsys, "diagram", "P11-cusped", "--triple", "11,12,18")
    assert out.strip() == "(4,4,inf)"


def test_parabolics(capsys):
    code, out = run(capsys, "parabolics", "P6-compact")
    assert "230400" in out


def test_order(capsys):
    code, out = run(capsys, "order", "P6-compact", "--word", "7 13 18", "--mod", "7", "--mod", "11", "--parity")
    assert code == 0
    assert "order mod 7: 8 = 2^3" in out and "order mod 11: 44" in out and "parity: -1" in out


@pytest.mark.parametrize("cmd", ["lemma22", "subgroup-lemma"])
def test_lemma(capsys, cmd):
    assert run(capsys, cmd, "800", "8052")[0] == 0
    assert run(capsys, cmd, "4", "4")[0] == 1


def test_retraction(capsys):
    code, out = run(capsys, "retraction", "P12-cusped", "--keep", "12,13,20")
    assert code == 0 and "well defined" in out


def test_colouring_file(capsys, tmp_path):
    f = tmp_path / "oct.txt"
    f.write_text("s 3\n" + "".join(f"{i}: {c}\n" for i, c in enumerate((1, 1, 1, 1, 2, 3, 5, 6), 1)))
    code, out = run(capsys, "colouring", "octagon", str(f))
    assert code == 0 and "[1, 5, 6]" in out and "rank 3" in out
    f.write_text("s 3\n1: 1\n2: 1\n")
    assert run(capsys, "colouring", "octagon", str(f))[0] == 1
    assert run(capsys, "colouring", "octagon", str(tmp_path / "missing.txt"))[0] == 2


def test_growth(capsys):
    code, out = run(capsys, "growth", "--rank", "2", "--max", "5", "--format", "machine")
    recs = [json.loads(x) for x in out.splitlines()]
    assert [r["count"] for r in recs] == ["1", "3", "13", "71", "461"]
    code, out = run(capsys, "growth", "--scenario", "surface", "--max", "2")
    assert "64π" in out


def test_data_errors_exit_2(capsys):
    assert main(["validate", "nope"]) == 2
    assert main(["run", "nope"]) == 2


def test_run_and_run_all(capsys):
    code, out = run(capsys, "run", "P5-compact")
    assert code == 0 and "FLAG" in out
    code, out = run(capsys, "run-all", "--only", "R3", "colouring-octagon", "--format", "machine")
    assert code == 0 and len(out.splitlines()) > 10


def test_list(capsys):
    code, out = run(capsys, "list")
    assert "P13-cusped" in out and "120-cell" in out
