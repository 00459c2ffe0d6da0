from __future__ import annotations

import json
import subprocess
import sys
from pathlib import Path

import pytest

from ringlab.catalog import read_report
from ringlab.cli import main, run
from ringlab.isoclinism import IsoWitness, verify_witness
from ringlab.catalog import load_pair

CATALOGS = Path(__file__).resolve().parent.parent / "catalogs"


def cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_graph_build_json_to_stdout(capsys):
    code, out, _ = cli(capsys, "graph", "build", "row_ring:z2", "--subring", "all", "--json", "-")
    assert code == 0
    assert json.loads(out) == {"vertices": [1, 2, 3], "edges": [[1, 2], [1, 3], [2, 3]]}


def test_graph_build_dot_file(capsys, tmp_path):
    dot = tmp_path / "g.dot"
    code, out, _ = cli(capsys, "graph", "build", "ut2:z2", "--subring", "gens:2,6", "--dot", str(dot))
    assert code == 0 and "6 vertices, 9 edges" in out
    assert dot.read_text().count("--") == 9


def test_iso_check_negative_case(capsys):
    code, out, _ = cli(capsys, "iso", "check", str(CATALOGS / "e2.ring"), str(CATALOGS / "t2rowpair.ring"))
    assert code == 0 and out.strip() == "not isoclinic: quotient orders 4 != 8"


def test_iso_check_writes_witness(capsys, tmp_path):
    w = tmp_path / "w.json"
    p1, p2 = str(CATALOGS / "e2.ring"), "ut2:z2@members:0,2,4,6"
    code, out, _ = cli(capsys, "iso", "check", p1, p1, "--witness", str(w))
    assert code == 0 and out.startswith("isoclinic")
    pair = load_pair(p1)
    assert verify_witness(pair, pair, IsoWitness.from_json(w.read_text()))


def test_iso_thm51(capsys):
    e2 = str(CATALOGS / "e2.ring")
    code, out, _ = cli(capsys, "iso", "thm51", e2, e2)
    rep = json.loads(out)
    assert code == 0 and rep["status"] == "pass" and rep["isoclinic"]
    code, out, _ = cli(capsys, "iso", "thm51", str(CATALOGS / "t2rowpair.ring"), e2)
    assert code == 0 and json.loads(out)["status"] == "na"


def test_ring_commands(capsys):
    code, out, _ = cli(capsys, "ring", "show", str(CATALOGS / "e2.ring"))
    assert code == 0 and "unity none" in out and "commutative false" in out
    code, out, _ = cli(capsys, "ring", "show", "ut2:z2")
    assert "unity 5" in out
    code, out, _ = cli(capsys, "ring", "subrings", "row_ring:z2")
    assert code == 0 and out.splitlines()[0] == "5 subrings of row_ring:z2"


def test_prob_command(capsys):
    code, out, _ = cli(capsys, "prob", "ut2:z2", "--subring", "members:0,2,4,6")
    assert code == 0
    assert "Pr(S,R) 5/8" in out and "Pr(S) 5/8" in out and "edges_from_probability 9" in out


def test_usage_errors_exit_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["bogus"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["graph", "build"])
    assert exc.value.code == 2
    capsys.readouterr()
    code, _, err = cli(capsys, "ring", "show", "not-a-ring")
    assert code == 2 and err.startswith("error:")
    code, _, err = cli(capsys, "graph", "build", "ut2:z2", "--subring", "members:0,2,4")
    assert code == 2


def test_env_order_cap(capsys, monkeypatch):
    monkeypatch.setenv("RINGLAB_MAX_ORDER", "4")
    code, _, err = cli(capsys, "ring", "show", "ut2:z2")
    assert code == 2 and "4" in err
    code, _, _ = cli(capsys, "ring", "show", "ut2:z2", "--max-order", "8")
    assert code == 0


def test_quiet(capsys):
    code, out, _ = cli(capsys, "ring", "show", "z2", "--quiet")
    assert code == 0 and out == ""


def write_cfg(tmp_path, rings) -> str:
    f = tmp_path / "c.cfg"
    f.write_text(json.dumps({"rings": rings}))
    return str(f)


def test_verify_clean_catalog_exits_zero(capsys, tmp_path):
    cfg = write_cfg(tmp_path, [{"spec": "row_ring:z2", "subrings": "whole"}, {"spec": "z6", "subrings": "all"}])
    report = tmp_path / "r.json"
    code, out, _ = cli(capsys, "verify", cfg, "--report", str(report))
    assert code == 0, out
    r = read_report(report)
    assert r["summary"]["hard_failure_total"] == 0
    assert [p["name"] for p in r["pairs"]][:1] == ["row_ring:z2|R"]


def test_verify_corrupted_table_exits_one(capsys, tmp_path):
    doc = json.loads((CATALOGS / "e2.ring").read_text())
    doc["mul"][2][1] = 0  # breaks distributivity
    (tmp_path / "bad.ring").write_text(json.dumps(doc))
    cfg = write_cfg(tmp_path, [{"file": "bad.ring", "subrings": "whole"}])
    code, out, _ = cli(capsys, "verify", cfg)
    assert code == 1 and "ring_axioms" in out


def test_verify_failing_check_exits_one(capsys, tmp_path):
    # a whole ring whose graph is class 1 contradicts the class-two claim for S = R
    cfg = write_cfg(tmp_path, [{"spec": "ut2:z2", "subrings": "whole"}])
    code, out, _ = cli(capsys, "verify", cfg)
    assert code == 1 and "FAIL full_ring_class_two: 1 pairs" in out


def test_conjecture_evidence_never_fails_run(capsys, tmp_path):
    cfg = write_cfg(tmp_path, [{"spec": "ut2:z2", "subrings": {"members": [[0, 2, 4, 6]]}}])
    report = tmp_path / "r.json"
    code, _, _ = cli(capsys, "verify", cfg, "--report", str(report))
    r = read_report(report)
    assert r["pairs"][0]["kinds"]["proper_subring_class_one"] == "conjecture"
    assert r["evidence"]["proper_subring_class_one"][0]["pair"] == "ut2:z2|{0,2,4,6}"
    # the run fails only on the domination-criterion counterexample, never on evidence
    assert code == 1
    assert list(r["summary"]["hard_failures"]) == ["centralizer_domination_criterion"]


def test_verify_is_byte_deterministic_across_jobs(capsys, tmp_path):
    cfg = write_cfg(tmp_path, [{"spec": "ut2:z2", "subrings": "all"}, {"spec": "z4", "subrings": "all"}])
    outs = []
    for n, jobs in enumerate(("1", "1", "3")):
        rep = tmp_path / f"r{n}.json"
        code, out, _ = cli(capsys, "verify", cfg, "--report", str(rep), "--seed", "7", "--jobs", jobs)
        outs.append((code, out, rep.read_bytes()))
    assert outs[0] == outs[1] == outs[2]


def test_verify_report_to_stdout(capsys, tmp_path):
    cfg = write_cfg(tmp_path, [{"spec": "z2", "subrings": "all"}])
    code, out, _ = cli(capsys, "verify", cfg, "--report", "-", "--no-isoclinism")
    assert code == 0 and json.loads(out)["summary"]["pairs"] == 2


def test_max_edges_flag(tmp_path):
    cfg = write_cfg(tmp_path, [{"spec": "mat2:z2", "subrings": "whole"}])
    out = run(["verify", cfg, "--report", str(tmp_path / "a.json"), "--no-isoclinism"])
    r = read_report(tmp_path / "a.json")
    assert r["pairs"][0]["class"] == "indeterminate"
    run(["verify", cfg, "--report", str(tmp_path / "b.json"), "--no-isoclinism", "--max-edges", "200"])
    assert read_report(tmp_path / "b.json")["pairs"][0]["class"] == 1
    assert out.exit_code == 0  # indeterminate never counts as a failure


def test_installed_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "ringlab.cli", "graph", "build", "row_ring:z2", "--json", "-"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["edges"] == [[1, 2], [1, 3], [2, 3]]
