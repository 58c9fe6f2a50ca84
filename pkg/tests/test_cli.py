import json
import subprocess
import sys

import pytest

from zigzag_ideals.cli import run
from zigzag_ideals.quiver import QuiverWindow, interval_rep
from zigzag_ideals.unbounded import K_PRIME_Z, K_Z, CertStep, DerivationCertificate, adversarial_corpus, bounded_derivation


@pytest.fixture
def files(tmp_path):
    w = QuiverWindow(0, 2, "RR")
    (tmp_path / "k02.json").write_text(interval_rep(w, w.full()).dumps())
    (tmp_path / "k1.json").write_text(interval_rep(w, w.subset([1])).dumps())
    alt = QuiverWindow(0, 12, "RL" * 6)
    (tmp_path / "v.json").write_text(interval_rep(alt, alt.subset(range(6))).dumps())
    (tmp_path / "good.json").write_text(json.dumps(bounded_derivation().to_json()))
    kz = DerivationCertificate((K_PRIME_Z,), (CertStep("ext", (0, 0), K_Z),))
    (tmp_path / "kz.json").write_text(json.dumps(kz.to_json()))
    (tmp_path / "junk.json").write_text("{not json")
    return tmp_path


def test_barcode(files, capsys):
    assert run(["barcode", str(files / "k02.json")]) == 0
    assert capsys.readouterr().out.strip() == "0──2"
    assert run(["barcode", str(files / "k02.json"), "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["bars"] == [{"a": 0, "b": 2, "mult": 1}]


def test_member(files, capsys):
    assert run(["member", str(files / "k1.json"), "--point", "1"]) == 0
    assert capsys.readouterr().out.strip() == "NOT MEMBER"
    assert run(["member", str(files / "k1.json"), "--point", "0"]) == 0
    assert capsys.readouterr().out.strip() == "MEMBER"
    assert run(["member", str(files / "k1.json"), "--point", "7"]) == 1


def test_support_and_tensor(files, capsys):
    assert run(["support", str(files / "k1.json"), "--json"]) == 0
    assert json.loads(capsys.readouterr().out) == {"support": [1]}
    assert run(["tensor", str(files / "k02.json"), str(files / "k1.json"), "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["bars"] == [{"a": 1, "b": 1, "mult": 1}]


def test_spectrum(capsys):
    assert run(["spectrum", "--window", "0..3", "--orientation", "RLR", "--json"]) == 0
    r = json.loads(capsys.readouterr().out)
    assert r["homeomorphism"] and len(r["points"]) == 4
    assert run(["spectrum", "--window", "0..3", "--orientation", "RL"]) == 1


def test_witness(files, capsys):
    args = ["witness", "--window", "0..12", "--orientation", "RL" * 6, "--rep", str(files / "v.json"), "--json"]
    assert run(args) == 0
    chain = json.loads(capsys.readouterr().out)
    assert chain["steps"][chain["finals"]["B"]]["support"] == list(range(13))
    assert run(["witness", "--window", "0..2", "--orientation", "RR", "--rep", str(files / "k02.json")]) == 1


def test_certify(files, capsys):
    assert run(["certify", str(files / "good.json")]) == 0
    assert "ACCEPTED" in capsys.readouterr().out
    assert run(["certify", str(files / "kz.json")]) == 2
    assert "step 0" in capsys.readouterr().out
    assert run(["certify", str(files / "junk.json")]) == 1


def test_malformed_inputs(files):
    assert run(["barcode", str(files / "missing.json")]) == 1
    assert run(["barcode", str(files / "junk.json")]) == 1
    assert run(["nonsense"]) == 1
    assert run(["verify-lemmas", "--suite", "nope"]) == 1


def test_verify_lemmas_deterministic(tmp_path, capsys):
    args = ["verify-lemmas", "--seed", "3", "--trials", "3", "--suite", "exactness", "--suite", "certificates"]
    assert run(args) == 0
    first = capsys.readouterr().out
    assert run(args) == 0
    assert capsys.readouterr().out == first
    report = json.loads(first)
    assert set(report["suites"]) == {"exactness", "certificates"} and report["ok"]


def test_module_entry_point(files):
    proc = subprocess.run(
        [sys.executable, "-m", "zigzag_ideals", "member", str(files / "k1.json"), "--point", "1"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and proc.stdout.strip() == "NOT MEMBER"
