import json
from pathlib import Path

import pytest

from jetweil.cli import main
from jetweil.config import DEFAULT_CONFIG, load_suite_config

ROOT = Path(__file__).resolve().parent.parent

SMALL_CONFIG = """
sl2:
  vars: [1, 2]
  s0: ["1"]
  jet_order: [2]
fourier:
  jet_order: [2]
  s0: ["1"]
  max_power: 2
cocycle:
  n: [1]
  samples:
    1: 3
kashiwara:
  dim: 1
  pairs: [1]
  degree_bound: 3
  samples:
    1: 2
  i_max: 2
  detailed: 1
"""


@pytest.fixture
def config(tmp_path):
    path = tmp_path / "suites.yaml"
    path.write_text(SMALL_CONFIG, encoding="utf-8")
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# ---------------------------------------------------------
# emit
# ---------------------------------------------------------

def test_emit_square_root_matrix(capsys):
    code, out, _ = run(capsys, "emit", "matrix", "--op", "S", "--jet-order", "2", "--s0", "1")
    assert code == 0
    assert out == '[[1,"1/2"],[0,1]]\n'


def test_emit_csv(capsys):
    code, out, _ = run(capsys, "emit", "matrix", "--op", "S", "--jet-order", "2", "--s0", "1",
                       "--format", "csv")
    assert code == 0
    assert out.splitlines() == ["1,1/2", "0,1"]


@pytest.mark.parametrize("op", ["S", "rho-central", "sigmaJ"])
def test_emit_is_deterministic(capsys, op):
    first = run(capsys, "emit", "matrix", "--op", op, "--jet-order", "3")
    second = run(capsys, "emit", "matrix", "--op", op, "--jet-order", "3")
    assert first[0] == 0
    assert first[1] == second[1]
    json.loads(first[1])


def test_bad_rational_is_a_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["emit", "matrix", "--op", "S", "--s0", "one-half"])
    assert exc.value.code == 2


def test_unknown_operator_is_a_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["emit", "matrix", "--op", "T"])
    assert exc.value.code == 2


# ---------------------------------------------------------
# configuration
# ---------------------------------------------------------

def test_missing_config(capsys, tmp_path):
    code, _, err = run(capsys, "--config", str(tmp_path / "nope.yaml"), "verify", "sl2")
    assert code == 2
    assert "config file not found" in err


def test_unknown_suite_in_config(capsys, tmp_path):
    path = tmp_path / "suites.yaml"
    path.write_text("lorentz:\n  n: 1\n", encoding="utf-8")
    code, _, err = run(capsys, "--config", str(path), "verify", "sl2")
    assert code == 2
    assert "lorentz" in err


def test_config_is_merged_over_bundled_defaults(tmp_path):
    path = tmp_path / "suites.yaml"
    path.write_text("kashiwara:\n  degree_bound: 4\n", encoding="utf-8")
    bundled = load_suite_config()
    merged = load_suite_config(path)
    assert merged["kashiwara"]["degree_bound"] == 4
    assert merged["kashiwara"]["dim"] == bundled["kashiwara"]["dim"] == [1, 2, 3, 4]
    assert merged["sl2"] == bundled["sl2"]
    assert load_suite_config(DEFAULT_CONFIG) == bundled


def test_acceptance_profile_covers_dimension_four():
    profile = load_suite_config(ROOT / "resources" / "profiles" / "acceptance.yaml")["kashiwara"]
    assert profile["dim"] == [1, 2, 3, 4]
    assert profile["pairs"] == [1, 2]
    assert profile["samples"] == {1: 100, 2: 100}
    assert profile["seed"] == load_suite_config()["kashiwara"]["seed"]


def test_missing_input_file(capsys, config, tmp_path):
    code, out, _ = run(capsys, "--config", config, "verify", "cocycle", "--words", str(tmp_path / "none.json"))
    assert code == 2
    assert out == ""


# ---------------------------------------------------------
# verify
# ---------------------------------------------------------

def test_verify_sl2(capsys, config):
    code, out, err = run(capsys, "--config", config, "verify", "sl2")
    report = json.loads(out)
    assert code == 0
    assert report["suite"] == "sl2"
    assert report["exact"] is True
    assert report["summary"]["failed"] == 0
    assert report["summary"]["total"] == len(report["cases"]) > 0
    assert "✅" in err


def test_flags_narrow_the_sweep(capsys, config):
    _, out, _ = run(capsys, "--config", config, "--quiet", "verify", "sl2", "--vars", "1")
    report = json.loads(out)
    assert report["parameters"]["vars"] == [1]


def test_quiet(capsys, config):
    _, _, err = run(capsys, "--config", config, "--quiet", "verify", "sl2")
    assert err == ""


def test_verify_is_byte_identical(capsys, config):
    first = run(capsys, "--config", config, "--quiet", "verify", "cocycle", "--seed", "5")
    second = run(capsys, "--config", config, "--quiet", "verify", "cocycle", "--seed", "5")
    assert first[0] == second[0] == 0
    assert first[1] == second[1]


def test_verify_fourier_warns_about_the_series(capsys, config):
    code, out, err = run(capsys, "--config", config, "verify", "fourier")
    assert code == 0
    assert json.loads(out)["summary"]["errors"] == 0
    assert "⚠️" in err


def test_verify_kashiwara_from_spec(capsys, config):
    spec = ROOT / "resources" / "modules" / "examples.json"
    code, out, _ = run(capsys, "--config", config, "--quiet", "verify", "kashiwara", "--spec", str(spec))
    report = json.loads(out)
    assert code == 0
    assert any(case["name"].startswith("F(G(N))=N/spec02/") for case in report["cases"])


def test_dim_flag_narrows_kashiwara(capsys, config):
    code, out, _ = run(capsys, "--config", config, "--quiet", "verify", "kashiwara", "--dim", "3")
    report = json.loads(out)
    assert code == 0
    assert report["parameters"]["dim"] == [3]
    assert "F(G(N))=N/d=3,n=1/000/n=1" in [case["name"] for case in report["cases"]]


def test_verify_kashiwara_random(capsys, config):
    code, out, _ = run(capsys, "--config", config, "--quiet", "verify", "kashiwara")
    names = [case["name"] for case in json.loads(out)["cases"]]
    assert code == 0
    assert any(name.startswith("negative/z=0/") for name in names)


def test_non_square_base_fails(capsys, config):
    code, _, _ = run(capsys, "--config", config, "--quiet", "verify", "intertwiners", "--s0", "2",
                     "--jet-order", "1")
    assert code == 1


def test_summary_file(capsys, config, tmp_path):
    pytest.importorskip("pystache")
    summary = tmp_path / "summary.md"
    code, _, _ = run(capsys, "--config", config, "--quiet", "--summary", str(summary), "verify", "sl2")
    assert code == 0
    text = summary.read_text(encoding="utf-8")
    assert "sl2" in text
    assert "all cases pass" in text
