import json
import subprocess
import sys
from pathlib import Path

import pytest

from starclass import cli, groups


def run(cfg):
    return cli.run(json.loads(json.dumps(cfg)))


def test_classgroup_descriptor():
    report, status = run({"command": "classgroup", "backend": {"group": "lex(Z, Z[1/2])"}})
    assert status == 0
    assert report["results"]["descriptor"]["kind"] == "RModG"
    assert report["results"]["descriptor"]["group"] == "Z[1/2]"


def test_gauss_example_unequal():
    cfg = {"command": "gauss", "backend": {"disc": -12}, "f": "2+(1+sqrt(-3))X", "g": "2+(1-sqrt(-3))X", "op": "v"}
    report, status = run(cfg)
    res = report["results"]
    assert status == 0 and res["equal"] is False
    assert (res["lhs"]["a"], res["lhs"]["b"], res["lhs"]["c"]) == (4, 0, 4)  # 4O
    assert (res["rhs"]["a"], res["rhs"]["b"], res["rhs"]["c"]) == (4, 2, 2)  # 2P


def test_closure_d_is_identity():
    cfg = {"command": "closure", "backend": {"disc": -20}, "op": "d", "ideal": {"gens": ["3", "1+sqrt(-5)"]}}
    report, status = run(cfg)
    assert status == 0 and report["results"]["input"] == report["results"]["output"]
    assert report["results"]["fixed"] is True


def test_other_commands():
    P = {"gens": ["2", "1+sqrt(-3)"]}
    report, status = run({"command": "invert", "backend": -12, "ideal": P})
    assert status == 0 and report["results"]["is_invertible"] is False
    report, status = run({"command": "mertens", "backend": -12, "f": "2+(1+sqrt(-3))X", "g": "2+(1-sqrt(-3))X"})
    assert status == 0 and report["results"]["m"] == 1
    report, status = run({"command": "pstarmd", "backend": -12, "op": {"op": "meet", "overrings": [{"disc": -3}]},
                          "ideals": [P]})
    assert status == 0 and report["results"]["allInvertible"] is False
    report, status = run({"command": "transport", "backend": "lex(Z, Z[1/2])",
                          "ideals": [{"point": ["0", "1/3"]}, {"point": ["0", "2/3"]}]})
    assert status == 0 and report["results"]["consistent"]
    report, status = run({"command": "survey", "backend": -20, "bounds": {"norm": 25}})
    assert status == 0 and report["results"]["picClasses"] == 2
    report, status = run({"command": "survey", "backend": "lex(Q, Z)"})
    assert status == 0 and report["results"]["descriptor"]["kind"] == "Trivial"
    report, status = run({"command": "invert", "backend": "Z[1/2]", "ideal": {"point": ["1/3"]}})
    assert report["results"]["phi"] == ["1/3"]


def test_expect_turns_results_into_checks():
    cfg = {"command": "gauss", "backend": -12, "f": "2+(1+sqrt(-3))X", "g": "2+(1-sqrt(-3))X",
           "op": "v", "expect": {"equal": True}}
    report, status = run(cfg)
    assert status == 1 and report["repro"] == cfg
    assert report["witness"]["failed"] == ["expect equal"]


@pytest.mark.parametrize("cfg,needle", [
    ({"command": "nope"}, "unknown command"),
    ({"backend": -12}, "command"),
    ({"command": "closure", "backend": -13, "ideal": {}}, "discriminant"),
    ({"command": "propsuite", "suite": "cut-oracle"}, "seed"),
    ({"command": "propsuite", "suite": "nope", "seed": 1}, "unknown suite"),
    ({"command": "propsuite", "suite": "cut-oracle", "seed": 1, "params": {"k": 13}}, "outside"),
    ({"command": "survey", "backend": -4, "bounds": {"norm": 10**5}}, "outside"),
    ({"command": "gauss", "backend": -12, "f": "2+(", "g": "1"}, "position"),
    ([], "object"),
])
def test_config_errors(cfg, needle):
    report, status = cli.run(cfg)
    assert status == 2 and needle in report["error"]


def test_bad_json_reports_position(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text('{"command": "closure",\n  "backend": }\n')
    assert cli.main(["--config", str(p)]) == 2
    err = capsys.readouterr().err
    assert "line 2" in err and "column" in err


def test_empty_sample_is_vacuous_with_warning():
    report, status = run({"command": "propsuite", "suite": "cut-oracle", "seed": 1, "cases": []})
    assert status == 0
    assert report["results"]["suites"][0]["warnings"] == ["empty sample: vacuous pass"]


def test_global_failure_repro(monkeypatch):
    monkeypatch.setattr(groups, "has_min_positive", lambda G: None)
    cfg = {"command": "propsuite", "suite": "group-order", "seed": 2, "params": {"groups": ["Z"], "triples": 3}}
    report, status = run(cfg)
    assert status == 1
    repro = report["repro"]
    assert repro["cases"] == [] and repro["params"]["globals"] is True
    again, status2 = run(repro)
    assert status2 == 1
    assert json.dumps(again["witness"], sort_keys=True) == json.dumps(report["witness"], sort_keys=True)


def _cli(*args):
    return subprocess.run([sys.executable, "-m", "starclass", *args], capture_output=True, text=True)


def test_subprocess_byte_stable(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"command": "propsuite", "suite": "lattice-oracle", "params": {"pairs": 5}}))
    a = _cli("--config", str(cfg), "--seed", "7")
    b = _cli("--config", str(cfg), "--seed", "7")
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout
    assert json.loads(a.stdout)["seed"] == 7
    c = _cli("--config", str(cfg), "--seed", "8")
    assert c.stdout != a.stdout


def test_summary_and_out(tmp_path):
    out = tmp_path / "r.txt"
    r = _cli("--suite", "group-order", "--seed", "1", "--format", "summary", "--out", str(out))
    assert r.returncode == 0 and r.stdout == ""
    assert out.read_text().startswith("propsuite: PASS")
    assert _cli("--suite", "group-order").returncode == 2
    assert _cli().returncode == 2


def test_list_suites(capsys):
    assert cli.main(["--list-suites"]) == 0
    assert "cut-oracle" in capsys.readouterr().out


def test_no_floats_in_reports():
    report, _ = run({"command": "survey", "backend": "Z[1/2]"})
    text = cli.dumps(report)
    assert "." not in json.dumps(report["results"])
    assert text == cli.dumps(json.loads(text))


CONFIGS = sorted((Path(__file__).parent.parent / "configs").glob("*.json"))


@pytest.mark.parametrize("path", CONFIGS, ids=lambda p: p.name)
def test_shipped_configs_pass(path):
    report, status = cli.run(json.loads(path.read_text()))
    assert status == 0, report
