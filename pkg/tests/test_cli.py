"""Exercise the command line surface through the click test runner."""

import json

from click.testing import CliRunner

from crystalfold.cli import SCOPE_INSTANCES, main


def run(*args):
    return CliRunner().invoke(main, list(args))


def test_scope_list_has_every_instance():
    assert len(SCOPE_INSTANCES) == 22
    assert ("d", 3, 2, 1) in SCOPE_INSTANCES
    assert ("a", 3, 3, 2) in SCOPE_INSTANCES


def test_build_json_is_reproducible():
    first = run("build", "--case", "a", "--n", "2", "--i", "1", "--s", "1",
                "--target", "hat", "--format", "json")
    second = run("build", "--case", "a", "--n", "2", "--i", "1", "--s", "1",
                 "--target", "hat", "--format", "json")
    assert first.exit_code == 0
    assert first.output == second.output
    doc = json.loads(first.output)
    assert doc["datum_ref"] == "a:n=2:i=1:s=1:hat"
    assert len(doc["nodes"]) == 6


def test_build_dot_and_text():
    dot = run("build", "--case", "a", "--n", "2", "--target", "hat",
              "--format", "dot")
    assert dot.exit_code == 0
    assert dot.output.startswith("digraph")
    assert '[label="0"]' in dot.output
    text = run("build", "--case", "b", "--n", "1", "--target", "kr",
               "--format", "text")
    assert text.exit_code == 0
    assert "nodes=3" in text.output
    assert "f1 t:1 -> t:2" in text.output


def test_build_writes_file(tmp_path):
    out = tmp_path / "graph.json"
    res = run("build", "--case", "c", "--n", "3", "--i", "1", "--s", "1",
              "--target", "tilde", "--format", "json", "--out", str(out))
    assert res.exit_code == 0
    doc = json.loads(out.read_text())
    assert len(doc["nodes"]) == 8


def test_out_of_scope_exits_two():
    res = run("build", "--case", "e")
    assert res.exit_code == 2
    assert "case (e) out of scope" in res.output
    res = run("build", "--case", "a", "--n", "2", "--i", "9", "--target", "kr")
    assert res.exit_code == 2
    res = run("build", "--case", "a", "--n", "2", "--s", "0", "--target", "kr")
    assert res.exit_code == 2
    res = run("verify", "--case", "c", "--n", "3", "--i", "2")
    assert res.exit_code == 2


def test_verify_passes_in_scope():
    res = run("verify", "--case", "b", "--n", "1", "--i", "1", "--s", "2")
    assert res.exit_code == 0
    assert "axiom:pairing" in res.output
    assert "perfect:phi-bijection" in res.output
    assert "strings:weyl" in res.output
    assert "FAIL" not in res.output


def test_verify_injected_fault_names_the_stage():
    res = run("verify", "--case", "a", "--n", "2", "--i", "1", "--s", "1",
              "--inject-fault")
    assert res.exit_code == 1
    assert "axiom:pairing" in res.output
    assert "FAIL" in res.output


def test_branch_matches_formula():
    res = run("branch", "--case", "a", "--n", "3", "--i", "2", "--s", "2")
    assert res.exit_code == 0
    assert "cardinality" in res.output
    assert "MISMATCH" not in res.output


def test_branch_without_formula_notes_it():
    res = run("branch", "--case", "d", "--n", "3", "--i", "2", "--s", "1")
    assert res.exit_code == 0
    assert "no closed formula" in res.output


def test_branch_json_document():
    res = run("branch", "--case", "d", "--n", "3", "--i", "1", "--s", "2",
              "--format", "json")
    assert res.exit_code == 0
    doc = json.loads(res.output)
    assert doc["total"] == 35
    assert doc["matches_formula"] is True
    assert [c["dim"] for c in doc["components"]] == [1, 7, 27]


def test_rmatrix_table():
    res = run("rmatrix", "--case", "a", "--n", "2", "--i", "1", "--s", "1")
    assert res.exit_code == 0
    lines = [ln for ln in res.output.splitlines() if ln]
    assert len(lines) == 16
    assert all(" -> " in ln for ln in lines)


def test_energy_table_values():
    res = run("energy", "--case", "b", "--n", "1", "--i", "1", "--s", "1")
    assert res.exit_code == 0
    table = {}
    for ln in res.output.splitlines():
        _, bid, val = ln.split()
        table[bid] = int(val)
    assert table["t:1*t:1"] == 0
    assert table["t:1*t:2"] == -1
    assert sorted(table.values()).count(-1) == 3
    assert len(table) == 9


def test_verify_all_scope_without_case():
    res = run("verify", "--all-scope")
    assert res.exit_code == 0
    lines = res.output.strip().splitlines()
    assert len(lines) == 22
    assert all(ln.endswith("pass") for ln in lines)


def test_branch_all_scope_without_case():
    res = run("branch", "--all-scope")
    assert res.exit_code == 0
    assert len(res.output.strip().splitlines()) == 22


def test_missing_case_is_rejected():
    res = run("build")
    assert res.exit_code == 2
    assert "--case is required" in res.output
