from __future__ import annotations

import json
import subprocess
import sys

import pytest

from acyclica.cli import main
from acyclica.complex import load_complex, simplicial_skeleton


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_documented_examples(capsys):
    assert run(capsys, "tutte", "--simplicial", "n=4", "l=2") == (0, "x^3 + x^2 + x + y\n", "")
    assert run(capsys, "lifetime", "--simplicial", "n=5", "l=2", "--exact")[1] == "1817/924\n"
    assert run(capsys, "census", "--cubical", "2,3", "--k", "1")[1] == "17\n"


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "acyclica", "tutte", "--simplicial", "n=4", "l=2"], capture_output=True, text=True
    )
    assert out.returncode == 0 and out.stdout == "x^3 + x^2 + x + y\n"


def test_usage_errors(capsys, tmp_path):
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "tutte")[0] == 2
    assert run(capsys, "tutte", "--simplicial", "n=4", "--cubical", "2,2")[0] == 2
    assert run(capsys, "tutte", "--simplicial", "nope")[0] == 2
    assert run(capsys, "rc", "--simplicial", "n=4", "l=1", "--p", "x", "--q", "2")[0] == 2
    out = tmp_path / "o.txt"
    assert run(capsys, "tutte", "--simplicial", "n=4", "l=2", "--cap", "40", "--out", str(out))[0] == 2
    assert not out.exists()


def test_domain_errors_write_nothing(capsys, tmp_path):
    out = tmp_path / "o.txt"
    code, _, err = run(capsys, "tutte", "--file", str(tmp_path / "missing.json"), "--out", str(out))
    assert code == 1 and "error" in err and not out.exists()
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"dims": [2, 1], "boundary": [{"k": 1, "entries": [[5, 0, 1]]}]}))
    code, _, err = run(capsys, "betti", "--file", str(bad))
    assert code == 1 and "out of range" in err
    code, _, err = run(capsys, "tutte", "--simplicial", "n=7", "l=2", "--cap", "10")
    assert code == 1 and "cap" in err
    code, _, err = run(capsys, "es", "--simplicial", "n=3", "l=1", "--p", "1/2", "--q", "4", "--check")
    assert code == 1


def test_cap_env(capsys, monkeypatch):
    monkeypatch.setenv("ACYCLICA_CAP", "5")
    assert run(capsys, "tutte", "--simplicial", "n=4", "l=2")[0] == 0
    assert run(capsys, "tutte", "--simplicial", "n=4", "l=1")[0] == 1


def test_generators_round_trip(capsys, tmp_path):
    code, out, _ = run(capsys, "simplicial", "n=4", "l=2")
    assert code == 0 and load_complex(out) == simplicial_skeleton(4, 2)
    path = tmp_path / "cube.json"
    assert run(capsys, "cubical", "2,2", "--l", "1", "--out", str(path))[0] == 0
    assert run(capsys, "load", "--file", str(path))[1] == "dims: 9 12\n"
    assert run(capsys, "betti", "--file", str(path), "--format", "json")[1] == '{"betti": [1, 4]}\n'
    assert run(capsys, "lifetime", "--file", str(path), "--exact", "--l", "1")[0] == 0


def test_formats(capsys):
    code, out, _ = run(capsys, "tutte", "--simplicial", "n=4", "l=2", "--format", "json")
    assert sorted(json.loads(out)["terms"]) == [[0, 1, "1"], [1, 0, "1"], [2, 0, "1"], [3, 0, "1"]]
    code, out, _ = run(capsys, "lifetime", "--simplicial", "n=4", "l=2", "--exact", "--format", "json")
    assert json.loads(out) == {"lifetime": "6/5"}
    code, out, _ = run(capsys, "barcode", "--simplicial", "n=4", "l=2", "--exact", "--format", "csv", "--seed", "3")
    lines = out.splitlines()
    assert lines[0] == "birth,death" and len(lines) == 4 and "." not in out
    code, out, _ = run(capsys, "msa", "--simplicial", "n=4", "l=2", "--exact", "--format", "json")
    doc = json.loads(out)
    assert len(doc["cells"]) == 3 and "/" in doc["weight"]


def test_random_cluster_commands(capsys):
    assert run(capsys, "rc", "--cubical", "1,1", "--p", "1/2", "--q", "2")[1] == "41/8\n"
    assert run(capsys, "rc", "--cubical", "1,1", "--p", "1/2", "--q", "2", "--check")[1] == "0\n"
    out = run(capsys, "rc", "--cubical", "1,1", "--p", "1/2", "--q", "2", "--format", "csv")[1]
    assert out.startswith("mask,weight_numerator,weight_denominator,prob\n")
    assert run(capsys, "es", "--cubical", "1,1", "--p", "1/2", "--q", "2", "--check")[1] == (
        "potts residual: 0\nrc residual: 0\n"
    )
    out = run(capsys, "es", "--cubical", "1,1", "--p", "1/2", "--q", "2", "--format", "csv")[1]
    assert out.startswith("cochain,mask,prob\n")
    out = run(capsys, "es", "--cubical", "1,1", "--p", "1/2", "--q", "2", "--sweeps", "10", "--seed", "4")[1]
    assert out.splitlines()[1] == "sweep,mask,beta" and len(out.splitlines()) == 12
    assert run(capsys, "fkg", "--simplicial", "n=4", "l=2", "--p", "1/3", "--q", "3/2", "--trials", "5")[1].startswith(
        "violations: 0\n"
    )
    out = run(capsys, "limit", "--simplicial", "n=4", "l=2", "--format", "csv")[1]
    assert out.splitlines()[0] == "p,q,tv" and len(out.splitlines()) == 5


def test_seeded_runs_reproducible_across_threads(capsys):
    args = ["lifetime", "--cubical", "3,3", "--trials", "200", "--seed", "8", "--format", "json"]
    a = run(capsys, *args, "--threads", "1")[1]
    b = run(capsys, *args, "--threads", "3")[1]
    assert a == b


def test_experiment_command(capsys):
    code, out, _ = run(capsys, "experiment", "--l", "1", "--n", "1", "--trials", "100", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["exact"] == "6/5" and doc["lower"] == "6/5" and doc["passed"]
    assert run(capsys, "experiment", "--n", "2")[0] == 2
