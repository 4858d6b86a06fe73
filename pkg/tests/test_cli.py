import json
import subprocess
import sys

import pytest

from nonsolv.cli import (
    KINDS, Scenario, ScenarioKindError, load_scenarios, main, run_scenario, run_suite, select,
)


def _ids(suite):
    return [s.id for s in select(load_scenarios(), suite)]


def test_catalog_well_formed():
    scenarios = load_scenarios()
    ids = [s.id for s in scenarios]
    assert len(ids) == len(set(ids)) and ids == sorted(ids)
    assert {s.kind for s in scenarios} == set(KINDS)
    assert {s.criterion for s in scenarios} == set(range(1, 11))
    for s in scenarios:
        assert s.expect, s.id


def test_spec_examples_present():
    ids = _ids("all")
    for sid in ("an-a5-witness", "table1-sp6-2-transvection", "ppart-e7-q2-e18"):
        assert sid in ids


def test_run_examples():
    by_id = {s.id: s for s in load_scenarios()}
    r = run_scenario(by_id["an-a5-witness"])
    assert r.outcome == "pass" and r.payload["order"] == 60
    assert run_scenario(by_id["table1-sp6-2-transvection"]).outcome == "pass"
    assert run_scenario(by_id["ppart-e7-q2-e18"]).outcome == "pass"


def test_filters():
    table1 = _ids("table1-*")
    assert len(table1) == 10 and all(i.startswith("table1-") for i in table1)
    reports, status = run_suite("bounds-*")
    assert status == 0 and reports and all(r.outcome == "pass" for r in reports)


def test_empty_suite():
    reports, status = run_suite("no-such-scenario-*")
    assert reports == [] and status == 0


def test_failure_sets_exit_status():
    s = Scenario("x-bad", "witness", {"degree": 4, "generators": ["(1,2)", "(1,2,3,4)"]}, {"nonsolvable": True})
    reports, status = run_suite("all", scenarios=[s])
    assert status == 1 and reports[0].outcome == "fail" and "nonsolvable" in reports[0].reason


def test_skipped_row():
    s = Scenario("x-skip", "ppart_check", {"family": "E7", "row": "99,q^7+1"}, {"passes": True})
    r = run_scenario(s)
    assert r.outcome == "skipped" and r.reason


def test_unknown_kind():
    with pytest.raises(ScenarioKindError):
        Scenario.from_json({"id": "x", "kind": "teleport"})
    with pytest.raises(ScenarioKindError):
        run_scenario(Scenario("x", "teleport"))


def test_reports_deterministic_and_ordered():
    a, _ = run_suite("witness-psl*,an-*")
    b, _ = run_suite("witness-psl*,an-*", workers=2)
    ja = [json.dumps(r.to_json(), sort_keys=True) for r in a]
    jb = [json.dumps(r.to_json(), sort_keys=True) for r in b]
    assert ja == jb
    assert [r.scenario for r in a] == sorted(r.scenario for r in a)
    assert all(json.loads(j)["spec_version"] == "1" for j in ja)


def test_seed_override_recorded():
    reports, _ = run_suite("witness-psl2-11-inv5", seed=99)
    assert reports[0].seed == 99 and reports[0].outcome == "pass"


def test_cli_run_writes_jsonl(tmp_path, capsys):
    out = tmp_path / "r.jsonl"
    assert main(["run", "--suite", "an-*", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 3 and all(json.loads(l)["outcome"] == "pass" for l in lines)
    assert "PASS" in capsys.readouterr().err


def test_cli_list_and_show(capsys):
    assert main(["list"]) == 0
    assert "table1-sp6-2-transvection" in capsys.readouterr().out
    assert main(["show", "an-a5-witness"]) == 0
    assert json.loads(capsys.readouterr().out)["kind"] == "witness"
    assert main(["show", "missing"]) == 2


def test_cli_bounds(capsys):
    assert main(["bounds", "--lemma", "psl2", "--q", "7"]) == 0
    rec = json.loads(capsys.readouterr().out)
    assert rec["passes"] and rec["values"]["lhs"] == "21"
    assert main(["bounds", "--lemma", "countinv", "--q", "8"]) == 0
    assert json.loads(capsys.readouterr().out)["values"]["rhs"] == "173/2"
    assert main(["bounds", "--lemma", "fieldaut", "--q", "2", "--p", "5", "--family", "Sz"]) == 0
    capsys.readouterr()
    assert main(["bounds", "--lemma", "sz", "--q", "8", "--case", "q_plus_r"]) == 0


def test_cli_ppart(capsys):
    assert main(["ppart", "--family", "E7", "--q", "2", "--row", "18,q^9+1"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["passes"] is True and out["values"][0]["primes"][0]["p"] == 19
    assert main(["ppart", "--family", "E7", "--q", "2", "--row", "99,q+1"]) == 2


def test_cli_search(capsys):
    assert main(["search", "--group", "PSL(3,3)", "--element", "6:transvection", "--mode", "pair"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["found"] and out["witness"]["generated_order"] == "5616"
    assert main(["search", "--group", "S6", "--element", "2", "--mode", "triple", "--exhaustive"]) == 0
    assert "all_solvable" in capsys.readouterr().out
    assert main(["search", "--group", "S5", "--element", "2", "--budget", "0"]) == 2


def test_console_script_entry():
    proc = subprocess.run([sys.executable, "-m", "nonsolv.cli", "list"], capture_output=True, text=True)
    assert proc.returncode == 0 and "an-a5-witness" in proc.stdout


def test_data_dir_override(tmp_path, monkeypatch):
    (tmp_path / "scenarios.json").write_text(json.dumps([{"id": "only", "kind": "witness",
        "params": {"degree": 5, "generators": ["(1,2,3,4,5)", "(1,2)(3,4)"]}, "expect": {"order": 60}}]))
    monkeypatch.setenv("NONSOLV_DATA", str(tmp_path))
    assert [s.id for s in load_scenarios()] == ["only"]
