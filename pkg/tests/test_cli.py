"""CLI subcommands, report formats and exit codes."""

import json

import pytest

from supertkk.catalog import load_algebra, save_algebra
from supertkk.cli import (cmd_dims, cmd_tkk, cmd_verify, main, parse_source,
                          report_from_machine, report_to_human,
                          report_to_machine)
from supertkk.superspace import check_super_jacobi


def test_parse_source_forms():
    assert parse_source("j19").name == "j19"
    assert parse_source("full_matrix:1,1").name == "full_matrix(1,1)"
    assert parse_source("full_matrix(1,2)").name == "full_matrix(1,2)"
    assert parse_source("dt:1/2").name == "dt(1/2)"
    with pytest.raises(ValueError):
        parse_source("nosuch.alg")


def test_parse_source_file(tmp_path):
    path = tmp_path / "v.alg"
    path.write_bytes(save_algebra(parse_source("j19")))
    assert parse_source(str(path)).name == "j19"


def test_dims_j19_table():
    report = cmd_dims("j19", 64)
    table = report.sections[0].tables["operator_spaces"]
    assert table["istr"] == [2, 0] and table["str"] == [3, 0]
    assert table["pair_inn"] == [3, 0] and table["pair_der"] == [5, 0]
    human = report_to_human(report)
    assert "chain hypothesis fails: L_{e_2} in Inn(V)" in human


def test_dims_trunc_poly():
    table = cmd_dims("trunc_poly:5", 64).sections[0].tables["operator_spaces"]
    assert table["istr"] == [3, 0] and table["istr~"] == [2, 0]


def test_tkk_ko_kack():
    report = cmd_tkk("kacK", "ko", 64)
    section = report.sections[0]
    assert section.tables["degree_dims"] == {"-1": 3, "0": 8, "1": 3}
    names = {c.name: c for c in section.checks}
    assert names["super_jacobi"].passed and names["jordan_graded"].passed
    assert "der_tower" in section.tables
    assert any("no unit" in n for n in section.notes)


def test_tkk_kan_kack_top_note():
    report = cmd_tkk("kacK", "kan", 64)
    assert any("g+ dim 4 != dim V = 3" in n for n in report.sections[0].notes)


def test_tkk_kotilde_dim17():
    report = cmd_tkk("full_matrix:1,1", "kotilde", 64)
    assert any("total dim 17" in n for n in report.sections[0].notes)
    # Ko~ of a pair with Der > Inn is not Jordan graded, and says so
    names = {c.name: c for c in report.sections[0].checks}
    assert not names["jordan_graded"].passed


def test_tkk_ti_runs_roundtrips():
    report = cmd_tkk("j19", "ti-der", 64)
    names = {c.name: c for c in report.sections[0].checks}
    assert names["propnu"].passed and names["tits_roundtrip"].passed


def test_verify_j19_green(capsys):
    code = main(["verify", "j19"])
    out = capsys.readouterr().out
    assert code == 0
    assert "chain hypothesis fails: L_{e_2} in Inn(V)" in out
    assert "FAIL" not in out


def test_verify_kack_counterexamples(capsys):
    code = main(["verify", "kacK"])
    out = capsys.readouterr().out
    assert code == 0
    assert "Kan ≇ Ko (graded dims differ)" in out
    assert "Out(Ko) dims (1,1,1)" in out


def test_verify_unital_runs_equivalences():
    report = cmd_verify("full_matrix:1,1", 64, None)
    names = {c.name for s in report.sections for c in s.checks}
    assert {"kantor_equals_koecher", "tits_inn_equals_koecher",
            "strw_matches_str", "out_kotilde_zero"} <= names
    assert report.all_passed()


def test_machine_report_roundtrip():
    report = cmd_verify("j19", 64, None)
    text = report_to_machine(report)
    assert report_from_machine(text) == report
    # every check in the human output appears in the machine output
    parsed = json.loads(text)
    machine_names = {c["name"] for s in parsed["sections"] for c in s["checks"]}
    for s in report.sections:
        for c in s.checks:
            assert c.name in machine_names


def test_machine_flag(capsys):
    code = main(["--format", "machine", "dims", "j19"])
    out = capsys.readouterr().out
    assert code == 0
    parsed = json.loads(out)
    assert parsed["title"] == "dims j19"


def test_export_deterministic(tmp_path):
    a, b = tmp_path / "a.alg", tmp_path / "b.alg"
    assert main(["export", "j19", "ko", "-o", str(a)]) == 0
    assert main(["export", "j19", "ko", "-o", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    g = load_algebra(a.read_bytes())
    assert g.dim == 9  # Ko(j19) has 3 + 3 + 3 basis elements
    assert check_super_jacobi(g) is None


def test_export_self_matches_catalog(tmp_path):
    path = tmp_path / "self.alg"
    main(["export", "kacK", "self", "-o", str(path)])
    assert path.read_bytes() == save_algebra(parse_source("kacK"))


def test_export_stdout(capsys):
    assert main(["export", "j19", "self"]) == 0
    out = capsys.readouterr().out
    assert '"name": "j19"' in out


def test_unknown_source_exit_code(capsys):
    assert main(["dims", "nosuch"]) == 2
    assert "error:" in capsys.readouterr().err


def test_max_dim_guard():
    report = cmd_dims("full_matrix:1,2", 4)
    assert any("exceeds --max-dim" in n for n in report.sections[0].notes)
    assert not report.sections[0].checks
    report = cmd_verify("kacK", 10, None)
    # Ko~(kacK) has dim 15, so its tower is skipped under the cap
    assert any("derivation tower skipped" in n
               for n in report.sections[0].notes)


def test_seed_flag_accepted(capsys):
    assert main(["--seed", "7", "verify", "j19"]) == 0
    capsys.readouterr()
