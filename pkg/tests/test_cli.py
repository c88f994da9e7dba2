import io
import json
import random
import subprocess
import sys

import pytest

from shafbound import cli
from shafbound.errors import CertificateError
from shafbound.quartic import fermat_quartic, klein_quartic
from test_delpezzo import synthetic_config


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(argv, stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def run_json(argv):
    code, out, err = run(argv)
    assert code == 0, err
    return json.loads(out), out


def split_manifest(doc):
    doc = dict(doc)
    manifest = doc.pop("manifest")
    return doc, manifest


def test_sunit_solve():
    doc, _ = run_json(["sunit", "solve", "--primes", "2", "--cap", "100"])
    assert doc["solutions"] == [
        {"num": "-1", "den": "1", "H": "1"},
        {"num": "1", "den": "2", "H": "2"},
        {"num": "2", "den": "1", "H": "2"},
    ]
    assert doc["cap"] == "100"
    result, manifest = split_manifest(doc)
    assert manifest["digest"] == cli.digest(result)
    assert manifest["subcommand"] == "sunit solve"
    assert manifest["params"]["cap"] == 100
    assert "jobs" not in manifest["params"]
    assert float(manifest["paper_bound_ln_ln"]) == pytest.approx(12.158368847)


def test_sunit_empty_set_has_null_bound():
    doc, _ = run_json(["sunit", "solve", "--primes", "", "--cap", "10"])
    assert doc["solutions"] == []
    assert doc["paper_bound_ln_ln"] is None


def test_dp_enumerate_empty():
    doc, _ = run_json(["dp", "enumerate", "--degree", "4", "--primes", "2", "--cap", "100"])
    assert doc["configs"] == []
    assert doc["boundary_escapes"] == 0


def test_dp_enumerate_with_dedup():
    doc, _ = run_json(["dp", "enumerate", "--degree", "4", "--primes", "2,3", "--cap", "100", "--dedup"])
    assert len(doc["configs"]) == 120
    assert sorted(o["size"] for o in doc["orbits"]) == [60, 60]
    first = doc["configs"][0]
    assert first["verdict"] is True
    assert set(first["minors"]) == {"line", "conic", "singular_cubic"}
    assert all(isinstance(m["det"], str) for m in first["minors"]["line"])


@pytest.mark.parametrize(
    "argv",
    [
        ["sunit", "solve", "--primes", "2", "--cap", "100", "--bogus"],
        ["sunit", "solve", "--primes", "2,4", "--cap", "100"],
        ["sunit", "solve", "--primes", "2", "--cap", "-3"],
        ["nonsense"],
        [],
        ["bounds", "unit-eq", "--l", "1", "--dk", "1", "--disc", "1", "--ns", "1", "--s", "0"],
        ["dp", "enumerate", "--degree", "1", "--primes", "2", "--cap", "5"],
        ["quartic", "disc", "--form", "/nonexistent/form.json"],
    ],
)
def test_invalid_input_exits_2(argv):
    code, out, err = run(argv)
    assert code == 2
    assert out == ""
    assert err.strip() and len(err.strip().splitlines()) == 1


def test_help_exits_zero(capsys):
    code, _, _ = run(["--help"])
    assert code == 0


def test_bounds_commands():
    doc, _ = run_json(["bounds", "unit-eq", "--l", "1", "--dk", "1", "--disc", "1", "--ns", "2", "--s", "1"])
    assert doc["base"] == "24"
    assert doc["exponent"] == "60000"
    assert doc["ln_bound"].startswith("190683.2298")
    doc, _ = run_json(["bounds", "unit-eq", "--l", "1", "--dk", "1", "--disc", "1", "--ns", "2", "--s", "1", "--log-only"])
    assert set(doc["exponent"]) == {"ln"}
    doc, _ = run_json(["bounds", "lenstra", "--dk", "2", "--disc", "5"])
    assert doc["bound"] == "49"
    doc, _ = run_json(["bounds", "dp", "--degree", "4", "--dk", "1", "--disc", "1", "--ns", "2", "--s", "1"])
    assert doc["weyl_order"] == "1920"
    assert set(doc["exponent"]) == {"ln"}


def test_ceiling_env_var(monkeypatch):
    argv = ["bounds", "unit-eq", "--l", "2", "--dk", "1", "--disc", "1", "--ns", "6", "--s", "2"]
    monkeypatch.setenv("SHAFBOUND_DIGIT_CEILING", "3")
    doc, _ = run_json(argv)
    assert isinstance(doc["exponent"], dict)
    monkeypatch.setenv("SHAFBOUND_DIGIT_CEILING", "1000")
    doc, _ = run_json(argv)
    assert isinstance(doc["exponent"], str)


def _write(tmp_path, name, data):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


def test_quartic_disc_and_verdict(tmp_path):
    fermat = _write(tmp_path, "fermat.json", fermat_quartic().to_json())
    doc, _ = run_json(["quartic", "disc", "--form", fermat])
    assert doc["discriminant"] == f"{2**54}/1"
    assert doc["bad_primes"] == [2]
    assert doc["double_cover"]["bad_primes"] == [2]
    klein = _write(tmp_path, "klein.json", klein_quartic().to_json())
    doc, _ = run_json(["quartic", "verdict", "--form", klein, "--primes", "7"])
    assert {k: doc[k] for k in ("smooth", "disc_support", "cover_requires_2", "verdict")} == {
        "smooth": True,
        "disc_support": [7],
        "cover_requires_2": True,
        "verdict": True,
    }


def test_quartic_rejects_bad_files(tmp_path):
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    assert run(["quartic", "disc", "--form", str(broken)])[0] == 2
    cubic = _write(tmp_path, "cubic.json", {"degree": 3, "coeffs": ["1"] + ["0"] * 9})
    assert run(["quartic", "disc", "--form", cubic])[0] == 2


def test_from_points(tmp_path):
    cfg = synthetic_config(random.Random(21))
    path = _write(tmp_path, "cfg.json", {"points": [p.to_json() for p in cfg.points], "primes": list(cfg.S)})
    doc, _ = run_json(["quartic", "from-points", "--config", path])
    assert doc["pullback_identity"] is True
    assert doc["excess_primes"] == []
    assert len(doc["net"]) == 3
    short = _write(tmp_path, "short.json", {"points": [p.to_json() for p in cfg.points[:5]]})
    assert run(["quartic", "from-points", "--config", short])[0] == 2


def test_internal_failure_exits_3(tmp_path, monkeypatch):
    cfg = synthetic_config(random.Random(21))
    path = _write(tmp_path, "cfg.json", {"points": [p.to_json() for p in cfg.points], "primes": list(cfg.S)})

    def broken(*args, **kwargs):
        raise CertificateError("pullback identity B(F) = c J^2 fails")

    monkeypatch.setattr(cli, "quartic_from_dp_config", broken)
    code, out, err = run(["quartic", "from-points", "--config", path])
    assert code == 3
    assert "internal check failed" in err


def test_json_file_and_timing(tmp_path):
    target = tmp_path / "out.json"
    code, out, _ = run(["sunit", "solve", "--primes", "2,3", "--cap", "50", "--json", str(target), "--timing"])
    assert code == 0 and out == ""
    doc = json.loads(target.read_text())
    assert "wall_clock" in doc["manifest"]
    result, manifest = split_manifest(doc)
    assert manifest["digest"] == cli.digest(result)


def test_catalog_degree_four_and_determinism():
    argv = ["catalog", "--degree", "4", "--primes", "2,3", "--cap", "100"]
    a, text_a = run_json(argv)
    _, text_b = run_json(argv + ["--jobs", "2"])
    assert text_a == text_b
    assert a["quartics"] == []
    assert a["s_prime"] == [2, 3]
    assert len(a["orbits"]) == 2


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "shafbound.cli", "sunit", "solve", "--primes", "2", "--cap", "10"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert len(json.loads(proc.stdout)["solutions"]) == 3
