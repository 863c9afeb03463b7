import json
import os
import subprocess
from pathlib import Path

import pytest

BIN = os.environ.get("KPALG_BIN", "build/kpalg")
FIXTURES = Path(os.environ.get("KPALG_FIXTURES", "fixtures"))


def kpalg(*args):
    return subprocess.run([BIN, *map(str, args)], capture_output=True, text=True, timeout=300)


def fx(name):
    return FIXTURES / name


def values(stdout):
    out = {}
    for line in stdout.splitlines():
        if " = " in line and not line.startswith("#"):
            k, v = line.split(" = ", 1)
            out[k] = v
    return out


def test_scalar_on_ellipsoid():
    r = kpalg("scalar", "--config", fx("ellipsoid_1_2_3.kp"), "--no-header")
    assert r.returncode == 0, r.stderr
    assert values(r.stdout)["S"] == "12 / (x^2 + 4*y^2 + 9*z^2)^2"


def test_scalar_on_sphere():
    r = kpalg("scalar", "--config", fx("sphere.kp"), "--no-header")
    assert r.returncode == 0
    assert values(r.stdout)["S"] == "2"


def test_verify_all_passes():
    for name in ["sphere.kp", "ellipsoid_3_2_7.kp", "plane_lambda_x.kp", "su2_construct.kp"]:
        r = kpalg("verify-all", "--config", fx(name), "--no-header")
        assert r.returncode == 0, (name, r.stdout)
        assert "FAIL" not in r.stdout


def test_jacobi_sabotage_fails_with_witness():
    r = kpalg("jacobi", "--config", fx("su2_sabotage.kp"), "--no-header")
    assert r.returncode == 1
    assert "jacobi: FAIL" in r.stdout
    assert "(x,y,z)" in r.stdout


def test_geometry_needs_jacobi():
    r = kpalg("scalar", "--config", fx("su2_sabotage.kp"))
    assert r.returncode == 1
    assert "Jacobi" in r.stderr or "jacobi" in r.stderr


def test_laplacian():
    r = kpalg("laplacian", "z^2", "--config", fx("sphere.kp"), "--no-header")
    assert r.returncode == 0
    assert values(r.stdout)["Delta(f)"] == "-6*z^2 + 2"


def test_output_is_deterministic():
    a = kpalg("curvature", "--config", fx("sphere.kp"), "--no-header")
    b = kpalg("curvature", "--config", fx("sphere.kp"), "--no-header")
    assert a.returncode == 0 and a.stdout == b.stdout


def test_header():
    r = kpalg("kp-check", "--config", fx("sphere.kp"))
    assert r.stdout.startswith("# kpalg kp-check --config ")


def test_json_matches_text():
    t = kpalg("christoffel", "--config", fx("ellipsoid_1_2_3.kp"), "--no-header")
    j = kpalg("christoffel", "--config", fx("ellipsoid_1_2_3.kp"), "--no-header", "--json")
    assert t.returncode == j.returncode == 0
    doc = json.loads(j.stdout)
    assert doc["command"] == "christoffel"
    assert doc["status"] == "PASS"
    assert doc["values"] == values(t.stdout)
    assert "generated" not in doc
    with_header = json.loads(kpalg("christoffel", "--config", fx("ellipsoid_1_2_3.kp"), "--json").stdout)
    assert "generated" in with_header


def test_json_config_equivalent():
    a = kpalg("ricci", "--config", fx("sphere.kp"), "--no-header")
    b = kpalg("ricci", "--config", fx("sphere.json"), "--no-header")
    assert a.stdout == b.stdout


@pytest.mark.parametrize(
    "text, code",
    [
        ("generators: x, y\nbracket x y 1\n", 2),
        ("generators: x, y\nbracket x y : 1 +\nmetric: euclidean\neta: 1\n", 2),
        ("generators: x, y, z\nbracket x w : 1\nmetric: euclidean\neta: 1\n", 3),
        ("generators: x, y\nbracket x y : 1\nmetric: euclidean\neta: 3\n", 1),
    ],
)
def test_exit_codes(tmp_path, text, code):
    cfg = tmp_path / "a.kp"
    cfg.write_text(text)
    r = kpalg("scalar", "--config", cfg)
    assert r.returncode == code, r.stderr
    assert r.stderr.startswith("kpalg: error:")


def test_semantic_error_names_generator(tmp_path):
    cfg = tmp_path / "a.kp"
    cfg.write_text("generators: x, y, z\nbracket x w : 1\n")
    r = kpalg("jacobi", "--config", cfg)
    assert r.returncode == 3
    assert "'w'" in r.stderr


def test_budget_exhaustion_is_a_resource_error(tmp_path):
    cfg = tmp_path / "a.kp"
    cfg.write_text("generators: x, y, z\norder: lex\nrelations: x^3 - y*z^2 + 1, y^3 - x*z + 2, z^3 - x^2*y - 3\n")
    r = kpalg("jacobi", "--config", cfg, "--budget", "2")
    assert r.returncode == 4


def test_missing_file_and_usage():
    assert kpalg("scalar", "--config", fx("missing.kp")).returncode == 5
    assert kpalg("frobnicate", "--config", fx("sphere.kp")).returncode == 64
    assert kpalg("scalar").returncode == 64
    assert kpalg("laplacian", "--config", fx("sphere.kp")).returncode == 64
