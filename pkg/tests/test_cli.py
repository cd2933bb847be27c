"""CLI surface, exit codes, and the basis cache file format."""

import json
import os

from cuspgaps.cache import find_cached, read_basis, write_basis
from cuspgaps.cli import main
from cuspgaps.msengine import qexpansion_basis


def run_cli(capsys, *args, env=None):
    old = {}
    if env:
        for key, value in env.items():
            old[key] = os.environ.get(key)
            os.environ[key] = value
    try:
        code = main(list(args))
    finally:
        for key, value in old.items():
            if value is None:
                os.environ.pop(key, None)
            else:
                os.environ[key] = value
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_invariants_command(capsys):
    code, out, _ = run_cli(capsys, "invariants", "46")
    assert code == 0
    payload = json.loads(out)
    assert payload == {"level": 46, "index": 72, "eps2": 0, "eps3": 0, "epsInf": 4, "genus": 5}


def test_invariants_rejects_zero(capsys):
    code, _, err = run_cli(capsys, "invariants", "0")
    assert code == 2 and "level" in err


def test_dim_command(capsys):
    code, out, _ = run_cli(capsys, "dim", "19", "16")
    assert code == 0 and out.strip() == "24"


def test_scan_guard(capsys):
    code, _, err = run_cli(capsys, "scan", "--kmax", "3")
    assert code == 2


def test_scan_small_box(capsys):
    code, out, _ = run_cli(capsys, "scan", "--kmax", "6", "--nmax", "15", "--pmax", "20")
    assert code == 0
    assert json.loads(out)["violations"] == 0


def test_scan_csv(capsys):
    code, out, err = run_cli(capsys, "scan", "--kmax", "4", "--nmax", "6", "--pmax", "7", "--csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("k,N,p,")
    assert len(lines) > 1


def test_gaps_and_wdim(capsys):
    code, out, _ = run_cli(capsys, "gaps", "5", "12")
    assert code == 0 and json.loads(out)["wdim"] == 0
    code, out, _ = run_cli(capsys, "wdim", "5", "12")
    assert code == 0 and out.strip() == "0"


def test_basis_roundtrip(tmp_path):
    basis = qexpansion_basis(1, 12, 25)
    path = write_basis(basis, tmp_path)
    loaded = read_basis(path)
    assert loaded == basis
    meta = json.loads((tmp_path / (path.name + ".meta.json")).read_text())
    assert meta["pivots"] == [1]
    assert meta["sturmBound"] == 2


def test_find_cached_truncates(tmp_path):
    basis = qexpansion_basis(11, 2, 30)
    write_basis(basis, tmp_path)
    got = find_cached(tmp_path, 11, 2, 20)
    assert got is not None and got.precision == 20
    assert got.rows[0].coeffs == basis.rows[0].coeffs[:20]
    assert find_cached(tmp_path, 11, 2, 40) is None


def test_basis_command_with_cache(tmp_path, capsys):
    code, out, _ = run_cli(capsys, "basis", "1", "12", "--prec", "20", "--cache", str(tmp_path))
    assert code == 0
    assert out.splitlines()[0] == "MFBASIS v1 1 12 20 1"
    assert (tmp_path / "basis_N1_k12_B20.mfb").exists()
    code2, out2, _ = run_cli(capsys, "basis", "1", "12", "--prec", "20", "--cache", str(tmp_path))
    assert code2 == 0 and out2 == out


def test_mfcache_env_overrides_flag(tmp_path, capsys):
    flagged = tmp_path / "flag"
    forced = tmp_path / "env"
    code, _, _ = run_cli(
        capsys, "basis", "1", "12", "--prec", "20", "--cache", str(flagged), env={"MFCACHE": str(forced)}
    )
    assert code == 0
    assert forced.is_dir() and not flagged.exists()


def test_verify_commands(capsys):
    code, out, _ = run_cli(capsys, "verify", "cor-analogue", "2", "6", "7")
    assert code == 0
    assert json.loads(out.strip().splitlines()[0])["pass"]
    code, _, err = run_cli(capsys, "verify", "cor-analogue", "1", "12", "5")
    assert code == 2  # dim S_12(1) != 0
    code, _, _ = run_cli(capsys, "verify", "ogg", "2", "11")
    assert code == 0
    code, _, _ = run_cli(capsys, "verify", "ogg", "11", "7")
    assert code == 2


def test_verify_theorem_small(capsys):
    code, out, _ = run_cli(capsys, "verify", "theorem", "1", "12", "5")
    assert code == 0
    report = json.loads(out.strip().splitlines()[0])
    assert report["pass"] and report["dims"]["S"] == 4
