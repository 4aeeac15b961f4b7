import json
import subprocess
import sys

import pytest

from kleaf.cli import run_cli
from kleaf.graph import petersen_graph
from kleaf.io import parse_edge_list, serialize
from kleaf.instance import leaf_count

from oracles import is_spanning_tree


@pytest.fixture
def petersen_file(tmp_path):
    p = tmp_path / "petersen.dimacs"
    p.write_text(serialize(petersen_graph()))
    return p


def test_solve_yes_with_witness(petersen_file, capsys):
    assert run_cli(["solve", "--input", str(petersen_file), "--k", "6", "--witness"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "yes" and lines[1] == "leaves 6"
    tree = parse_edge_list("\n".join(lines[2:]))
    # DIMACS labels are 1-based
    edges = [tuple(sorted((int(tree.labels[u]) - 1, int(tree.labels[v]) - 1))) for u, v in tree.edges()]
    assert is_spanning_tree(10, edges) and leaf_count(10, edges) >= 6


def test_solve_no(capsys):
    assert run_cli(["solve", "--input", "c5", "--k", "3"]) == 1
    assert capsys.readouterr().out.strip() == "no"


def test_solve_stats_document(petersen_file, tmp_path, capsys):
    stats = tmp_path / "stats.json"
    code = run_cli(["solve", "--input", str(petersen_file), "--k", "6", "--witness", "--stats", str(stats)])
    assert code == 0
    doc = json.loads(stats.read_text())
    assert set(doc) == {"decision", "k", "n", "m", "nodes_visited", "per_rule_firings", "max_depth",
                        "initial_measure_quarters", "elapsed_ms", "witness_leaf_count"}
    assert (doc["decision"], doc["k"], doc["n"], doc["m"]) == ("yes", 6, 10, 15)
    assert doc["initial_measure_quarters"] == 49
    assert doc["witness_leaf_count"] == 6
    assert all(isinstance(v, int) for v in doc["per_rule_firings"].values())


def test_solve_stats_without_witness_omits_count(tmp_path, capsys):
    stats = tmp_path / "s.json"
    assert run_cli(["solve", "--input", "petersen", "--k", "7", "--stats", str(stats)]) == 1
    doc = json.loads(stats.read_text())
    assert doc["decision"] == "no" and "witness_leaf_count" not in doc


def test_solve_verify_reports_clean(capsys):
    assert run_cli(["solve", "--input", "petersen", "--k", "7", "--verify"]) == 1
    assert "0 violations" in capsys.readouterr().err


def test_usage_errors(tmp_path, capsys):
    with pytest.raises(SystemExit) as exc:
        run_cli(["solve", "--k", "3"])
    assert exc.value.code == 2
    assert run_cli(["solve", "--input", str(tmp_path / "nope"), "--k", "3"]) == 2
    bad = tmp_path / "bad.dimacs"
    bad.write_text("p edge 2 1\ne 1 3\n")
    assert run_cli(["solve", "--input", str(bad), "--k", "2"]) == 2
    assert "line 2" in capsys.readouterr().err


def test_maxleaf(capsys):
    assert run_cli(["maxleaf", "--input", "petersen"]) == 0
    assert capsys.readouterr().out.strip() == "6"


def test_maxleaf_disconnected(tmp_path, capsys):
    p = tmp_path / "two.txt"
    p.write_text("a b\nc d\n")
    assert run_cli(["maxleaf", "--input", str(p)]) == 1


def test_oracle_matches_solver(capsys):
    assert run_cli(["oracle", "--input", "petersen", "--k", "7"]) == 1
    assert capsys.readouterr().out.splitlines()[0] == "6"
    assert run_cli(["oracle", "--input", "star4"]) == 0


def test_analyze_text_and_files(tmp_path, capsys):
    out = tmp_path / "report"
    assert run_cli(["analyze", "--out-dir", str(out)]) == 0
    text = capsys.readouterr().out
    assert text.rstrip().splitlines()[-1] == "klam(3.188) = 39"
    assert {p.name for p in out.iterdir()} == {"report.csv", "report.json", "roots.png"}
    assert json.loads((out / "report.json").read_text())["passed"] is True
    assert (out / "roots.png").read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_analyze_json(capsys):
    assert run_cli(["analyze", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["klam_target"] == 39


def test_rules_json(capsys):
    assert run_cli(["rules"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert [r["id"] for r in doc] == list(range(1, 40))


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "kleaf.cli", "solve", "--input", "K5", "--k", "4"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.startswith("yes")
