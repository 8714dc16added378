import json

import pytest

from homotopes.cli import (InputError, Report, emit_report, main, parse_algebra_file, parse_module_file)
from homotopes.algebra import is_associative
from homotopes.linalg import GF


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def structured(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "structured")
    return code, json.loads(out)


def check(report, name):
    (c,) = [c for c in report["checks"] if c["name"] == name]
    return c


def test_parse_fixtures(fixtures):
    M2 = parse_algebra_file(str(fixtures / "M2.json"))
    assert M2.dim == 4 and M2.unit is not None
    T2 = parse_algebra_file(str(fixtures / "T2.json"))
    assert is_associative(T2)
    assert T2.blocks.block_sizes == [1, 1]
    assert parse_algebra_file(str(fixtures / "M2.json"), GF(7)).field == GF(7)


@pytest.mark.parametrize("doc,where", [
    ({"dim": 2, "structure_constants": [[0, 0, 2, "1"]]}, "structure_constants[0]"),
    ({"dim": 1, "structure_constants": [[0, 0, 0, "1/x"]]}, "structure_constants[0]"),
    ({"dim": 1, "structure_constants": [[0, 0, 0]]}, "structure_constants[0]"),
    ({"dim": 1, "structure_constants": [[0, 0, 0, "1"]], "unit": ["2"]}, "unit"),
    ({"dim": 1, "structure_constants": [], "unit": ["1", "0"]}, "unit"),
    ({"dim": 1, "field": {"prime": 4}, "structure_constants": []}, "field"),
    ({"structure_constants": []}, "dim"),
])
def test_parse_errors_carry_location(doc, where):
    with pytest.raises(InputError) as e:
        parse_algebra_file(json.dumps(doc))
    assert str(e.value).startswith(where)


def test_parse_module(fixtures):
    M = parse_module_file(str(fixtures / "M2_column.json"))
    assert M.dim == 2 and M.algebra.dim == 4
    with pytest.raises(InputError):
        parse_module_file(json.dumps({"algebra": json.loads((fixtures / "dual.json").read_text()),
                                      "dim": 1, "action": [[["1"]]]}))


def test_well_tempered_examples(capsys, fixtures):
    code, rep = structured(capsys, "well-tempered", str(fixtures / "M2.json"), "--delta", "e11")
    assert code == 0 and check(rep, "criterion")["data"]["value"] is True
    assert check(rep, "methods_agree")["status"] == "pass"
    code, rep = structured(capsys, "well-tempered", str(fixtures / "T2.json"), "--delta", "0,1,0")
    assert code == 0 and check(rep, "criterion")["data"]["value"] is False
    assert check(rep, "ext1_trivial")["data"]["value"] == 2


def test_oracle_command(capsys):
    code, rep = structured(capsys, "oracle", "--seed", "7", "--trials", "50")
    assert code == 0
    data = check(rep, "projectivity_vs_criterion")["data"]
    assert data["agreements"] == data["trials"] == 50


def test_structured_output_is_deterministic(capsys, fixtures):
    args = ("recollement", str(fixtures / "M2.json"), "--delta", "e11", "--seed", "4")
    _, a, _ = run(capsys, *args, "--format", "structured")
    _, b, _ = run(capsys, *args, "--format", "structured")
    assert a == b
    _, a, _ = run(capsys, "nonassoc", "density", "--d", "2", "--samples", "10", "--seed", "1", "--format", "structured")
    _, b, _ = run(capsys, "nonassoc", "density", "--d", "2", "--samples", "10", "--seed", "1", "--format", "structured")
    assert a == b


def test_report_round_trip_and_exit_codes():
    r = Report("demo", "abc", 3)
    assert emit_report(r).strip().splitlines() == [emit_report(r).strip()]
    assert r.exit_code == 0
    r.add("ok", True, dim=2)
    r.add("maybe", "inconclusive")
    assert r.exit_code == 0
    r.add("bad", False)
    assert r.exit_code == 1
    again = Report.from_dict(json.loads(emit_report(r, "structured")))
    assert again == r
    with pytest.raises(ValueError):
        r.add("x", "unknown")


def test_every_check_appears_once(capsys, fixtures):
    _, rep = structured(capsys, "recollement", str(fixtures / "M2.json"), "--delta", "e11", "--seed", "0")
    names = [c["name"] for c in rep["checks"]]
    assert len(names) == len(set(names))


def test_io_and_input_errors(capsys, fixtures, tmp_path):
    code, _, err = run(capsys, "check", str(tmp_path / "missing.json"))
    assert code == 2 and "cannot read" in err
    code, _, err = run(capsys, "homotope", str(fixtures / "M2.json"), "--delta", "e33")
    assert code == 2 and "--delta" in err
    with pytest.raises(SystemExit):
        main(["oracle", "--trials", "3"])            # seed is mandatory
    with pytest.raises(SystemExit):
        main(["check", str(fixtures / "M2.json"), "--field", "fp:6"])
    code, _, err = run(capsys, "check", str(fixtures / "M2.json"), "--out", str(tmp_path / "no" / "r.txt"))
    assert code == 2


def test_evaluation_errors_are_reported(capsys, fixtures):
    code, out, _ = run(capsys, "radical", str(fixtures / "T2.json"), "--field", "fp:2")
    assert code == 2 and "[ERROR]" in out


def test_out_flag(capsys, fixtures, tmp_path):
    path = tmp_path / "r.json"
    code, out, _ = run(capsys, "blocks", str(fixtures / "M2.json"), "--out", str(path), "--format", "structured")
    assert code == 0 and out == ""
    assert json.loads(path.read_text())["checks"][0]["data"]["block_sizes"] == [2]


@pytest.mark.parametrize("argv", [
    ["check", "M2.json"],
    ["radical", "T2.json"],
    ["homotope", "T2.json", "--delta", "e12", "--side", "right"],
    ["homotope", "dual.json", "--delta", "x", "--augmented"],
    ["normal-form", "T2.json", "--delta", "e11 + e12"],
    ["rep-dims", "M2.json", "--delta", "e11"],
    ["projective", "--module", "M2_column.json"],
    ["projective", "--module", "dual_residue.json"],
    ["nonassoc", "preimages", "--d", "2", "--p", "101", "--seed", "0"],
    ["nonassoc", "classify", "tensor3.json", "--samples", "5", "--seed", "0"],
    ["fiber", "glue", "k3.json", "--ideal", "x"],
    ["fiber", "unglue", "k3.json", "--ideal", "x", "--rank", "2", "--seed", "1"],
])
def test_commands_pass(capsys, fixtures, argv, monkeypatch):
    monkeypatch.chdir(fixtures)
    code, out, err = run(capsys, *argv)
    assert code == 0, out + err
    assert "[FAIL]" not in out and "[ERROR]" not in out


def test_fiber_unit_kernel_reports_both_formulas(capsys, fixtures, monkeypatch):
    monkeypatch.chdir(fixtures)
    # x(x-1)(x-2) with I = (x(x-1)): u = x(x-1) is a zero divisor
    code, rep = structured(capsys, "fiber", "unit-kernel", "k3.json", "--ideal", "x^2 - x", "--u", "x^2 - x")
    assert check(rep, "unit_kernel_Au_mod_Bu")["status"] == "pass"
    assert check(rep, "unit_kernel")["status"] == "fail" and code == 1
