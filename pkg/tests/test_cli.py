from __future__ import annotations

import io
import json

from quiverlab.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_roots():
    code, out = run("roots", "--type", "D4")
    assert code == 0 and len(out.splitlines()) == 12
    code, out = run("roots", "--type", "D", "--rank", "5", "--export", "json")
    assert len(json.loads(out)["roots"]) == 20


def test_wide_dot():
    code, out = run("wide", "--type", "A2", "--export", "dot")
    assert code == 0
    assert out.count("[label=") == 5 and out.count("->") == 6


def test_maps_count():
    assert run("maps", "--spec", "chain2", "--codomain", "nc:A2", "--count") == (0, "12\n")
    code, out = run("maps", "--spec", "chain2", "--codomain", "nc:A2", "--export", "dot")
    assert out.count("->") == 18


def test_filt_and_homtable(tmp_path):
    assert run("filt", "--type", "A2", "--window", "3") == (0, "22\n")
    code, out = run("homtable", "--type", "A3", "--char", "2,3", "--export", "json",
                    "--cache-dir", str(tmp_path))
    assert code == 0 and len(out.splitlines()) == 2
    again = run("homtable", "--type", "A3", "--char", "2,3", "--export", "json", "--cache-dir", str(tmp_path))
    assert again == (code, out)


def test_usage_errors(capsys):
    assert run("roots", "--type", "E9")[0] == 2
    assert run("bogus")[0] == 2
    assert run("maps", "--spec", "chain2", "--codomain", "wide:A2", "--count")[0] == 2
    assert run("wide", "--type", "E6")[0] == 2
    err = capsys.readouterr().err.strip().splitlines()
    assert all("error" in json.loads(line) for line in err)


def test_verify(tmp_path):
    code, out = run("verify", "orthoprop", "--type", "A3")
    lines = [json.loads(x) for x in out.splitlines()]
    assert code == 0
    assert sum(1 for r in lines if r.get("check") == "orthoprop") == 36
    code, out = run("verify", "all", "--type", "A2", "--jobs", "2", "--cache-dir", str(tmp_path))
    assert code == 0 and json.loads(out.splitlines()[-1])["pass"]
    cached = run("verify", "all", "--type", "A2", "--jobs", "2", "--cache-dir", str(tmp_path))
    assert cached == (code, out)
    code, out = run("verify", "filtwide", "--type", "A2", "--window", "3")
    recs = [json.loads(x) for x in out.splitlines()[:-1]]
    assert code == 0 and all(r["pass"] for r in recs)


def test_verify_failure_exit(monkeypatch):
    from quiverlab import verify
    monkeypatch.setitem(verify.RUNNERS, "koszul",
                        lambda q, **_: [{"suite": "koszul", "check": "x", "expected": 1, "actual": 0,
                                         "pass": False}])
    assert run("verify", "koszul", "--type", "A2")[0] == 1
