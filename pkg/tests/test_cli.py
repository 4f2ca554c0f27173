from __future__ import annotations

import json
import subprocess
import sys

import pytest

from drincert.cli import EXIT_CONFIG, EXIT_FAILED, EXIT_OK, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_json_report_schema(capsys):
    code, out, _ = run(capsys, "--q", "7", "--g1", "0", "--g2", "1", "--max-deg", "1", "--pairs",
                       "--format", "json")
    assert code == EXIT_OK
    d = json.loads(out)
    assert set(d) == {"meta", "certificates", "pairs"}
    assert set(d["meta"]) == {"q", "field", "g1", "g2", "family_type", "max_degree", "pair_degree",
                              "prime_count", "scope", "adelic"}
    assert d["meta"]["family_type"] == "Type2"
    assert len(d["certificates"]) == 7 and len(d["pairs"]) == 21
    for c in d["certificates"]:
        assert set(c) == {"ideal", "degree", "verdict", "reason", "mod_l_verdict", "checks"}
        assert c["verdict"] == "surjective"
        for ch in c["checks"]:
            assert set(ch) == {"name", "status", "paper_anchor", "data"}
            assert ch["status"] in ("verified", "cited", "failed", "not-applicable")


def test_text_report(capsys):
    code, out, _ = run(capsys, "--q", "7", "--g1", "T", "--g2", "1", "--max-deg", "1")
    assert code == EXIT_OK
    assert "type = Type1" in out
    assert "7/7 primes surjective" in out
    assert "sieve C1:x" in out


def test_out_file(tmp_path, capsys):
    target = tmp_path / "r.json"
    code, out, _ = run(capsys, "--q", "7", "--g1", "T", "--g2", "1", "--max-deg", "1", "--format", "json",
                       "--out", str(target))
    assert code == EXIT_OK and out == ""
    assert json.loads(target.read_text())["meta"]["prime_count"] == 7


def test_deterministic_json(capsys):
    args = ("--q", "7", "--g1", "T", "--g2", "1", "--max-deg", "1", "--pairs", "--format", "json")
    _, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args)
    assert a == b


def test_small_q_refused(capsys):
    code, out, err = run(capsys, "--q", "5", "--g1", "T", "--g2", "1")
    assert code == EXIT_CONFIG and out == ""
    assert "refused" in err and "q ≥ 7" in err and "--allow-small-q" in err


def test_small_q_override_is_out_of_scope(capsys):
    code, out, _ = run(capsys, "--q", "5", "--g1", "T", "--g2", "1", "--max-deg", "1", "--format", "json",
                       "--allow-small-q")
    assert code == EXIT_FAILED
    d = json.loads(out)
    assert {c["verdict"] for c in d["certificates"]} == {"out-of-scope"}
    assert d["meta"]["scope"] == "q must be at least 7"


@pytest.mark.parametrize("q", ["8", "16", "2"])
def test_even_q_refused(capsys, q):
    code, _, err = run(capsys, "--q", q, "--g1", "T", "--g2", "1", "--allow-small-q")
    assert code == EXIT_CONFIG and "odd q" in err


def test_bad_q(capsys):
    code, _, err = run(capsys, "--q", "12", "--g1", "T", "--g2", "1")
    assert code == EXIT_CONFIG and "--q" in err


def test_parse_error_reports_position(capsys):
    code, _, err = run(capsys, "--q", "7", "--g1", "T^^2", "--g2", "1")
    assert code == EXIT_CONFIG
    assert "--g1" in err and "position 2" in err


def test_not_in_family_exit_code(capsys):
    code, out, _ = run(capsys, "--q", "7", "--g1", "T^2", "--g2", "T", "--max-deg", "1", "--format", "json")
    assert code == EXIT_FAILED
    assert all(c["reason"] == "family" for c in json.loads(out)["certificates"])


def test_ext_modulus(capsys):
    code, out, _ = run(capsys, "--q", "9", "--ext-modulus", "u^2 + 1", "--g1", "T", "--g2", "1",
                       "--max-deg", "1", "--format", "json")
    assert code == EXIT_OK
    assert json.loads(out)["meta"]["prime_count"] == 9
    code, _, err = run(capsys, "--q", "9", "--ext-modulus", "u^2 - 1", "--g1", "T", "--g2", "1")
    assert code == EXIT_CONFIG and "--ext-modulus" in err
    code, _, err = run(capsys, "--q", "9", "--ext-modulus", "u^3 + u + 1", "--g1", "T", "--g2", "1")
    assert code == EXIT_CONFIG and "degree 2" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "drincert", "--q", "7", "--g1", "0", "--g2", "1", "--max-deg", "1"],
                          capture_output=True, text=True, timeout=300)
    assert proc.returncode == 0
    assert "7/7 primes surjective" in proc.stdout
