import json
import subprocess
import sys

import jsonschema
import pytest

from reeunital.cli import main
from reeunital.report import (
    FAIL,
    SCHEMA_PATH,
    CheckRecord,
    SuiteReport,
    emit_report,
    run_suite,
    to_json,
)


@pytest.fixture(scope="module")
def schema():
    return json.loads(SCHEMA_PATH.read_text())


def test_run_suite_census(tmp_path, schema, capsys):
    out = tmp_path / "census.json"
    assert main(["run-suite", "census", "--json", str(out)]) == 0
    rep = json.loads(out.read_text())
    jsonschema.validate(rep, schema)
    assert rep["status"] == "pass"
    assert [c["id"] for c in rep["checks"]] == ["census.plane", "census.design"]
    assert "PASS" in capsys.readouterr().out


def test_run_suite_thm1_stdout(capsys, schema):
    assert main(["run-suite", "thm1", "--json", "-", "--no-timing"]) == 0
    rep = json.loads(capsys.readouterr().out)
    jsonschema.validate(rep, schema)
    assert "wall_time_s" not in rep
    assert all("wall_time_s" not in c for c in rep["checks"])


def test_usage_errors(capsys):
    assert main(["run-suite", "nonsense"]) == 2
    assert main(["no-such-command"]) == 2
    assert main(["run-suite", "census", "--budget", "-3"]) == 2
    assert main(["embed", "search", "--plane", "6"]) == 2


def test_inconclusive_exit(tmp_path):
    out = tmp_path / "r.json"
    assert main(["run-suite", "embed-pg9", "--budget", "2", "--json", str(out)]) == 3
    rep = json.loads(out.read_text())
    assert rep["status"] == "inconclusive"
    assert {c["status"] for c in rep["checks"]} == {"inconclusive"}
    # certificates are persisted beside the report
    assert (tmp_path / "r.embed-pg9.cert.json").exists()


def test_failure_exit_and_witness(tmp_path, schema):
    rep = SuiteReport("census", {"include_long": False, "budget": 1})
    rep.records.append(CheckRecord("forced.fail", "forced", FAIL, {"point": 3, "block": 7}))
    assert rep.exit_code == 1
    path = tmp_path / "f.json"
    emit_report(rep, "json", path)
    data = json.loads(path.read_text())
    jsonschema.validate(data, schema)
    assert data["checks"][0]["witness"] == {"point": 3, "block": 7}
    with pytest.raises(OSError, match="cannot write"):
        emit_report(rep, "json", tmp_path / "missing" / "dir" / "f.json")


def test_optional_does_not_fail_overall():
    rep = SuiteReport("x", {"include_long": False, "budget": 1})
    rep.records.append(CheckRecord("a.b", "c", "pass", {}))
    rep.records.append(CheckRecord("a.c", "c", FAIL, {}, optional=True))
    assert rep.status == "pass"


def test_determinism(tmp_path):
    a = to_json(run_suite("pentagons"), timing=False)
    b = to_json(run_suite("pentagons"), timing=False)
    assert a == b


def test_design_commands(tmp_path, capsys):
    path = tmp_path / "r3.txt"
    assert main(["design", "dump", "--out", str(path)]) == 0
    assert main(["design", "validate", str(path)]) == 0
    assert main(["design", "validate", "fano", "--k", "3"]) == 0
    assert main(["design", "validate", "fano"]) == 1
    bad = tmp_path / "bad.txt"
    bad.write_text("3 2\n0 1\n")
    assert main(["design", "validate", str(bad)]) == 2


def test_group_commands(capsys):
    assert main(["group", "order"]) == 0
    assert capsys.readouterr().out.strip() == "1512"
    assert main(["group", "commuting-graph", "--components"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["component_sizes"] == [7] * 9 and out["components_are_cliques"]
    assert main(["group", "commuting-graph", "--group", "psl2-27"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["vertices"] == 351 and out["connected"]
    assert main(["group", "order", "--group", "bogus"]) == 2


def test_pentagon_and_symbolic_commands(capsys):
    assert main(["pentagons", "enumerate"]) == 0
    assert json.loads(capsys.readouterr().out)["count"] == 126
    assert main(["pentagons", "verify-prop"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["results"][0]["d_lines"]["1234"] == "[g^3:g^4:1]"
    assert main(["pentagons", "verify-prop", "--all"]) == 0
    assert main(["symbolic", "verify-thm1"]) == 0
    text = capsys.readouterr().out
    assert text.count("residual = 0") == 6


def test_embed_command(tmp_path, capsys):
    cert = tmp_path / "c.json"
    assert main(["embed", "search", "--plane", "9", "--cert", str(cert)]) == 0
    assert json.loads(capsys.readouterr().out)["status"] == "none"
    assert json.loads(cert.read_text())["status"] == "none"
    assert main(["embed", "search", "--plane", "9", "--budget", "1"]) == 3


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "reeunital", "run-suite", "census"], capture_output=True, text=True)
    assert r.returncode == 0 and "overall: pass" in r.stdout
