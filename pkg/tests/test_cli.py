from __future__ import annotations

import csv
import io
import json
import subprocess
import sys

import numpy as np
import pytest

from homsplit.cli import main
from homsplit.numstrat import UnitaryTuple

U2_SERIES = {"1", "t^4", "t + t^3", "t^2 + t^4", "t^3 + t^5"}


def run(capsys, *argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_summands_flags(capsys):
    code, out, _ = run(capsys, "summands", "--family", "U", "--m", "2", "--n", "2")
    assert code == 0
    body = [line for line in out.splitlines() if not line.startswith("#")]
    rows = list(csv.DictReader(body))
    assert len(rows) == 10
    assert sorted(r["series"] for r in rows) == sorted(
        ["1", "t^4", "t^4", "t^4", "t + t^3", "t + t^3", "t^2 + t^4", "t^2 + t^4", "t^3 + t^5", "t^3 + t^5"]
    )
    assert all(r["agree"] == "true" for r in rows)
    assert "# identity holds" in out and "inverting m! = 2" in out


def test_summands_positional_and_formats(capsys):
    code, pretty, _ = run(capsys, "summands", "U", "2", "2", "--format", "pretty")
    assert code == 0 and "00 | 01 | 10 | 11" in pretty
    code, text, _ = run(capsys, "summands", "Sp", "2", "1", "--format", "json")
    obj = json.loads(text)
    assert code == 0 and obj["identity_holds"] and "2^m*m! = 8" in obj["caveat"]


def test_summands_unsupported_family(capsys):
    code, _, err = run(capsys, "summands", "--family", "SOodd", "--m", "1", "--n", "2")
    assert code == 1 and "not available" in err


def test_homology(capsys):
    code, out, _ = run(capsys, "homology", "--family", "U", "--m", "2", "--n", "2")
    assert code == 0 and out.strip() == "1 + 2*t + 2*t^2 + 4*t^3 + 5*t^4 + 2*t^5"
    code, out, _ = run(capsys, "homology", "SOodd", "1", "1", "--format", "csv")
    assert out.splitlines() == ["degree,betti", "0,1", "1,0", "2,0", "3,1"]


def test_modp(capsys):
    code, out, _ = run(capsys, "modp", "--p", "2", "--n", "4")
    assert code == 0
    assert "closed: 1 + t^6 + t^7 + t^8 + t^9 + t^10" in out
    assert "gysin:  1 + t^6 + t^7 + t^8 + t^9 + t^10" in out
    assert "agree=true" in out and "provenance:" in out
    code, out, _ = run(capsys, "modp", "3", "4", "--format", "json")
    assert json.loads(out)["agree"] is True


def test_modp_uncovered(capsys):
    code, out, _ = run(capsys, "modp", "--p", "3", "--n", "2")
    assert code == 1 and "rank H^6" in out
    code, _, err = run(capsys, "modp", "--p", "3", "--n", "5")
    assert code == 1 and "odd arity" in err
    code, _, err = run(capsys, "modp", "--p", "4", "--n", "4")
    assert code == 1


def test_poset(capsys):
    code, out, _ = run(capsys, "poset", "--n", "1", "--m", "3")
    assert code == 0
    assert out.splitlines()[1:5] == ["0,3,0,0,0,", "1,2,1,1,1,", "2,1,2,2,1,", "3,0,3,3,1,"]
    code, out, _ = run(capsys, "poset", "--n", "2", "--m", "2", "--format", "json")
    obj = json.loads(out)
    assert len(obj["elements"]) == 10 and obj["hasse"]


def test_generate_classify_round_trip(capsys, monkeypatch, tmp_path):
    code, out, _ = run(capsys, "generate", "--partition", "1,1,2,2", "--seed", "7")
    assert code == 0
    t = UnitaryTuple.from_json(out)
    assert (t.n, t.m) == (2, 6)
    path = tmp_path / "t.json"
    path.write_text(out)
    code, rep, _ = run(capsys, "classify", "--in", str(path))
    assert code == 0 and json.loads(rep)["label"] == "(1,1,2,2)"
    code, rep, _ = run(capsys, "classify", stdin=out, monkeypatch=monkeypatch)
    assert code == 0 and json.loads(rep)["label"] == "(1,1,2,2)"


def test_classify_non_commuting(capsys, monkeypatch):
    rng = np.random.default_rng(0)
    q1, _ = np.linalg.qr(rng.standard_normal((3, 3)))
    q2, _ = np.linalg.qr(rng.standard_normal((3, 3)))
    text = json.dumps(UnitaryTuple(np.stack([q1, q2])).to_json())
    code, _, err = run(capsys, "classify", stdin=text, monkeypatch=monkeypatch)
    assert code == 3 and "do not commute" in err


def test_classify_bad_json(capsys, monkeypatch):
    code, _, _ = run(capsys, "classify", stdin="{}", monkeypatch=monkeypatch)
    assert code == 1


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["homology", "--bogus"])
    assert exc.value.code == 1
    assert main(["generate"]) == 1
    assert main(["poset", "--n", "2"]) == 1


def test_out_file(capsys, tmp_path):
    target = tmp_path / "h.txt"
    assert main(["homology", "U", "1", "2", "--out", str(target)]) == 0
    assert target.read_text().strip() == "1 + 2*t + t^2"


def test_output_is_deterministic():
    argv = [sys.executable, "-m", "homsplit", "generate", "--partition", "0,1,1,1", "--seed", "3"]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, check=True).stdout
    assert a == b
