import io
import json

import pytest

from irrpoints import cli
from irrpoints import verify as vf

SKEW_BOX = '{"A": [[3, -1], [-1, 4]], "lo": [0, 8], "hi": [19, 26]}'
SAMPLE_FN = '{"n": 2, "k": 20, "a0": 103, "a": [5, 9]}'


def run(*argv):
    out = io.StringIO()
    code = cli.main(list(argv), out=out)
    return code, out.getvalue()


def test_irr_skew_box(tmp_path):
    p = tmp_path / "box.json"
    p.write_text(SKEW_BOX)
    code, out = run("irr", "--input", str(p))
    d = json.loads(out)
    assert code == 0 and d["count"] == 8
    assert d["points"] == sorted(d["points"])
    code, tsv = run("irr", "--input", SKEW_BOX, "--format", "tsv")
    assert tsv.splitlines()[0] == "1\t3" and len(tsv.splitlines()) == 8


def test_partition_skew_box():
    code, out = run("partition", "--input", SKEW_BOX)
    d = json.loads(out)
    assert code == 0 and d["count"] == 7 and d["counts"] == [2, 1, 0, 2, 0, 1, 2]


def test_teach_and_sigma():
    code, out = run("teach", "--input", SAMPLE_FN)
    d = json.loads(out)
    assert code == 0 and d["count"] == 4
    assert d["t0"] == [[8, 7], [17, 2]] and d["t1"] == [[1, 11], [19, 1]]
    code, out = run("sigma", "--n", "2", "--k", "5")
    assert code == 0 and json.loads(out)["sigma"] == 4
    code, out = run("sigma", "--n", "2", "--k", "5", "--format", "human")
    assert "sigma=4" in out


def test_hull_cover_bounds_rationalize():
    tri = '{"A": [[1, 1], [2, -1], [-1, 2]], "b": [1, 2, 2], "rel": ["ge", "le", "le"]}'
    code, out = run("hull", "--input", tri)
    assert code == 0 and json.loads(out)["vertices"] == [[0, 1], [1, 0], [2, 2]]
    code, out = run("cover", "--input", tri)
    assert code == 0 and 0 < json.loads(out)["count"] <= 36
    code, out = run("bounds", "--input", SKEW_BOX)
    reps = {r["bound_name"]: r for r in json.loads(out)["reports"]}
    assert reps["box"]["actual_count"] == 8 and reps["box"]["bound_value"].startswith("17.49")
    code, out = run("rationalize", "--input", '{"n": 2, "k": 20, "a0": "103", "a": ["5", "9"]}')
    assert code == 0 and json.loads(out)["b"] == [5, 9]


def test_domain_errors(capsys):
    code, _ = run("irr", "--input", '{"A": [[1, 0], [0, 1]], "b": [1, 1]}')
    assert code == 1
    rec = json.loads(capsys.readouterr().err.strip())
    assert rec["error"] == "domain" and rec["type"] == "UnboundedError"
    code, _ = run("irr", "--input", SKEW_BOX, "--max-points", "5")
    assert code == 1
    assert json.loads(capsys.readouterr().err)["type"] == "CapacityError"
    code, _ = run("sigma", "--n", "4", "--k", "3")
    assert code == 1


@pytest.mark.parametrize("argv", [
    ("irr", "--input", "{nope"),
    ("irr", "--input", "/no/such/file.json"),
    ("irr", "--input", '{"A": [[1.5, 0]], "b": [1]}'),
    ("irr", "--input", '{"A": [[1, 0], [0, 1]], "b": [1, 1], "rel": ["lt", "le"]}'),
    ("teach", "--input", '{"n": 2, "k": 3, "a0": "1/2", "a": [1, 1]}'),
    ("partition", "--input", '{"A": [[1, 0]], "b": [1]}'),
    ("sigma",),
    ("irr",),
    ("bogus",),
    ("sigma", "--n", "x"),
])
def test_malformed_input(argv, capsys):
    code, _ = run(*argv)
    assert code == 2
    err = capsys.readouterr().err.strip().splitlines()
    assert len(err) == 1 and json.loads(err[0])["error"] == "malformed_input"


def test_deterministic_output():
    a = run("verify", "cover", "--trials", "3", "--seed", "7")
    b = run("verify", "cover", "--trials", "3", "--seed", "7")
    assert a == b and a[0] == 0


def test_verify_cli_examples():
    code, out = run("verify", "box-partition", "--trials", "50", "--seed", "1")
    d = json.loads(out)
    assert code == 0 and d["pass"]
    code, out = run("verify", "bounds", "--trials", "100")
    assert code == 0 and json.loads(out)["pass"]
    code, out = run("verify", "teaching", "--k", "6", "--trials", "5")
    d = json.loads(out)
    assert code == 0 and d["pass"]
    names = {p["property"] for p in d["properties"]}
    assert {"teaching-grid/unique_minimal_teaching_set", "teaching-fn/separation_property"} <= names


def test_counterexample_record_replays(monkeypatch):
    # plant a deliberately wrong claim so a counterexample is produced
    def at_most_one(c):
        n = len(c.irr)
        return [{"irreducible": n}] if n > 1 else []

    ctx_cls, checks = vf.CHECKS["box-partition"]
    monkeypatch.setitem(vf.CHECKS, "box-partition", (ctx_cls, {**checks, "planted": at_most_one}))
    rep = vf.verify("box-partition", trials=4, seed=2)
    planted = next(p for p in rep.properties if p.name.endswith("planted"))
    assert planted.failures
    for rec in planted.failures:
        rec = json.loads(json.dumps(rec))
        assert vf.recheck(rec) == [rec["detail"]]
    code, out = run("verify", "box-partition", "--trials", "4", "--seed", "2")
    assert code == 1 and not json.loads(out)["pass"]
