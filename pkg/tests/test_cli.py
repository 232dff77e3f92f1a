import json

import numpy as np
import pytest

from thetalab.cli import main
from thetalab.theta import random_tau


@pytest.fixture
def tau_file(tmp_path):
    path = tmp_path / "tau.json"
    path.write_text(json.dumps(random_tau(2, 0).to_json()))
    return str(path)


@pytest.fixture
def product_tau_file(tmp_path):
    path = tmp_path / "tau_prod.json"
    blob = {
        "g": 2,
        "re": [[0.0, 0.0], [0.0, 0.0]],
        "im": [[1.0, 0.0], [0.0, 2.0]],
    }
    path.write_text(json.dumps(blob))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_count_generic_g2(capsys, tau_file):
    code, out, _ = run(capsys, "count", "--tau", tau_file, "--n", "2")
    assert code == 0
    blob = json.loads(out)
    assert blob["theta_n"] == 6


def test_count_product_certified(capsys, product_tau_file):
    code, out, _ = run(capsys, "count", "--tau", product_tau_file, "--n", "2")
    assert code == 0
    blob = json.loads(out)
    assert blob["theta_n"] == 7
    assert blob["certified"]


def test_count_output_deterministic(capsys, tau_file):
    _, out1, _ = run(capsys, "count", "--tau", tau_file, "--n", "2", "--table")
    _, out2, _ = run(capsys, "count", "--tau", tau_file, "--n", "2", "--table")
    assert out1 == out2


def test_count_missing_file_exits_2(capsys):
    code, _, err = run(capsys, "count", "--tau", "/nonexistent/tau.json")
    assert code == 2
    assert err


def test_count_malformed_json_exits_2(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, _ = run(capsys, "count", "--tau", str(bad))
    assert code == 2


def test_bad_subcommand_exits_2(capsys):
    assert run(capsys, "frobnicate")[0] == 2


def test_verify_g2(capsys):
    code, _, err = run(capsys, "verify", "--g", "2")
    assert code == 0
    assert "PASS" in err
    assert "FAIL" not in err


def test_h0_g2_exhaustive(capsys):
    code, out, _ = run(capsys, "h0", "--g", "2")
    assert code == 0
    blob = json.loads(out)
    assert blob["h0"] == 9
    assert blob["exhaustive"]


def test_h0_g3_requires_budget_and_seed(capsys):
    assert run(capsys, "h0", "--g", "3")[0] == 2


def test_h0_g3_small_budget(capsys):
    code, out, _ = run(capsys, "h0", "--g", "3", "--budget", "2000", "--seed", "1")
    assert code == 0
    blob = json.loads(out)
    assert blob["h0_upper"] == 27
    assert not blob["counterexample_found"]


def test_bounds_table(capsys):
    code, out, _ = run(capsys, "bounds", "--g", "2", "--n", "2")
    assert code == 0
    blob = json.loads(out)
    names = [r["name"] for r in blob["rows"]]
    assert "two-torsion-sharp" in names


def test_bounds_with_tau_verdicts(capsys, tau_file):
    code, out, _ = run(capsys, "bounds", "--g", "2", "--n", "2", "--tau", tau_file)
    assert code == 0
    blob = json.loads(out)
    assert blob["theta_n"] == 6
    assert all(v["verdict"] != "VIOLATED" for v in blob["verdicts"])


def test_bounds_csv_format(capsys):
    code, out, _ = run(capsys, "bounds", "--g", "2", "--n", "2", "--format", "csv")
    assert code == 0
    assert out.splitlines()[0].count(",") >= 2


def test_orbits(capsys):
    code, out, _ = run(capsys, "orbits", "--g", "2")
    assert code == 0
    blob = json.loads(out)
    assert sorted(blob["orbit_sizes"]) == [6, 10]


def test_export_matrix(capsys):
    code, out, _ = run(capsys, "export-matrix", "--name", "N", "--g", "2")
    assert code == 0
    blob = json.loads(out)
    mat = np.array(blob["data"])
    assert mat.shape == (10, 6)


def test_export_matrix_deterministic(capsys):
    _, out1, _ = run(capsys, "export-matrix", "--name", "B", "--g", "2")
    _, out2, _ = run(capsys, "export-matrix", "--name", "B", "--g", "2")
    assert out1 == out2


def test_version_flag_exits_zero(capsys):
    assert run(capsys, "--version")[0] == 0
