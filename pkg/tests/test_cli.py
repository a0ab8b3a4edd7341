import json
import subprocess
import sys

import pytest

from modcorr.cli import main


def run(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_hauptmodul(capsys, cache_dir):
    code, out, _ = run(capsys, "hauptmodul", "--M", "2", "--order", "2")
    assert code == 0
    assert json.loads(out) == {"M": 2, "coeffs": [[-1, "1"], [0, "-24"], [1, "276"], [2, "-2048"]]}
    code, out, _ = run(capsys, "hauptmodul", "--M", "13", "--order", "0")
    coeffs = json.loads(out)["coeffs"]
    assert [e for e, _ in coeffs] == [-1, 0] and coeffs[0][1] == "1"
    code, out, _ = run(capsys, "hauptmodul", "--M", "2", "--order", "2", "--format", "text")
    assert out.strip() == "q^-1 - 24 + 276*q - 2048*q^2 + O(q^3)"


def test_hauptmodul_bad_level(capsys, cache_dir):
    assert run(capsys, "hauptmodul", "--M", "11", "--order", "2")[0] == 2


def test_modpoly_cache(capsys, cache_dir):
    code, out, _ = run(capsys, "modpoly", "--M", "3", "--N", "2")
    assert code == 0 and json.loads(out)["cache"] == "miss"
    path = cache_dir / "psi_M3_N2.json"
    first = path.read_bytes()
    assert json.loads(first)["terms"] == [[3, 0, "1"], [2, 2, "-1"], [2, 1, "-24"], [1, 2, "-24"], [1, 1, "-729"], [0, 3, "1"]]
    code, out, _ = run(capsys, "modpoly", "--M", "3", "--N", "2", "--format", "text")
    assert code == 0 and "cache hit" in out
    assert path.read_bytes() == first


def test_modpoly_phi(capsys, cache_dir):
    code, out, _ = run(capsys, "modpoly", "--M", "3", "--N", "4", "--kind", "phi")
    data = json.loads(out)
    assert code == 0 and data["degree"] == [7, 7]


def test_modpoly_gcd_violation(capsys, cache_dir):
    assert run(capsys, "modpoly", "--M", "2", "--N", "4", "--kind", "phi")[0] == 2


def test_modpoly_corrupt_cache(capsys, cache_dir):
    cache_dir.mkdir(parents=True)
    (cache_dir / "psi_M3_N2.json").write_text("garbage")
    assert run(capsys, "modpoly", "--M", "3", "--N", "2")[0] == 3


def test_cache_dir_env_overrides_flag(capsys, cache_dir, tmp_path):
    other = tmp_path / "flag"
    run(capsys, "modpoly", "--M", "5", "--N", "2", "--cache-dir", str(other))
    assert (cache_dir / "psi_M5_N2.json").exists()
    assert not other.exists()


def test_classnum(capsys, cache_dir):
    assert json.loads(run(capsys, "classnum", "--kind", "H", "--D", "12")[1])["value"] == "4/3"
    assert json.loads(run(capsys, "classnum", "--kind", "Ap", "--p", "2", "--D", "12")[1])["value"] == "3/2"
    assert run(capsys, "classnum", "--kind", "H", "--D", "5", "--format", "text")[1].strip() == "0"
    assert json.loads(run(capsys, "classnum", "--kind", "HM", "--M", "2", "--D", "12")[1])["value"] == "2"
    assert json.loads(run(capsys, "classnum", "--kind", "h", "--D", "23")[1])["value"] == "3"
    assert json.loads(run(capsys, "classnum", "--kind", "chi", "--p", "2", "--D", "12")[1])["value"] == "-1"


def test_classnum_errors(capsys, cache_dir):
    assert run(capsys, "classnum", "--kind", "Ap", "--p", "2", "--D", "5")[0] == 2
    assert run(capsys, "classnum", "--kind", "Ap", "--p", "11", "--D", "12")[0] == 2
    assert run(capsys, "classnum", "--kind", "Ap", "--D", "12")[0] == 1


def test_intersect_all(capsys, cache_dir):
    code, out, _ = run(capsys, "intersect", "--M", "5", "--N1", "2", "--N2", "3", "--method", "all")
    data = json.loads(out)
    assert code == 0 and data["agree"]
    assert data["values"] == {"formula": 12, "ap": 12, "eisenstein": 12, "oracle": 12}
    code, out, _ = run(capsys, "intersect", "--M", "1", "--N1", "2", "--N2", "3", "--method", "all")
    assert json.loads(out)["values"] == {"formula": 18, "oracle": 18}


def test_intersect_errors(capsys, cache_dir):
    code, _, err = run(capsys, "intersect", "--M", "3", "--N1", "2", "--N2", "8")
    assert code == 2 and "non-proper: N1*N2 is a square" in err
    assert run(capsys, "intersect", "--M", "2", "--N1", "2", "--N2", "3")[0] == 2
    assert run(capsys, "intersect", "--M", "6", "--N1", "1", "--N2", "5", "--method", "oracle")[0] == 2


def test_intersect_disagreement_exit_code(capsys, cache_dir, monkeypatch):
    import modcorr.intersect as mod

    monkeypatch.setattr(mod, "intersection_eisenstein", lambda p, a, b: -1)
    assert run(capsys, "intersect", "--M", "5", "--N1", "2", "--N2", "3", "--method", "all")[0] == 3


def test_verify(capsys, cache_dir):
    code, out, _ = run(capsys, "verify", "--suite", "prop33")
    report = json.loads(out)
    assert code == 0 and report["status"] == "pass"
    assert all(c["status"] == "pass" for c in report["checks"])
    code, out, _ = run(capsys, "verify", "--suite", "oracle", "--format", "text", "--threads", "2")
    assert code == 0 and out.count("PASS") == 2


def test_verify_reference_rows_flags_misprint(capsys, cache_dir):
    code, out, _ = run(capsys, "verify", "--suite", "table2", "--format", "text")
    lines = out.splitlines()
    assert sum(line.startswith("PASS") for line in lines) == 5
    assert any(line.startswith("FAIL psi M=2 N=5") for line in lines)
    assert code == 3


def test_usage_errors(capsys, cache_dir):
    assert run(capsys, "verify", "--suite", "bogus")[0] == 1
    assert run(capsys, "frobnicate")[0] == 1
    assert run(capsys, "hauptmodul", "--M", "2", "--order", "2", "--guard", "0")[0] == 2


def test_module_entry_point(cache_dir):
    proc = subprocess.run([sys.executable, "-m", "modcorr", "classnum", "--kind", "H", "--D", "12"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout)["value"] == "4/3"
    proc = subprocess.run([sys.executable, "-m", "modcorr"], capture_output=True, text=True, check=False)
    assert proc.returncode == 1
