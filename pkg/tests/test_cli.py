import numpy as np
import pytest

from scripts import run_all
from src.analysis.validation import CheckResult, ValidationReport
from src.reporting.csv_generator import read_csv
from src.utils.errors import EXIT_NUMERICAL, EXIT_OK, EXIT_USAGE, EXIT_VALIDATION


def test_sweep(tmp_path):
    out = tmp_path / "sweep.csv"
    code = run_all.main(
        ["sweep", "--regime", "rel", "--method", "high-t", "--xi", "1", "--xi", "5", "--points", "4", "--tau-min", "0.1", "--out", str(out)]
    )
    assert code == EXIT_OK
    df = read_csv(out)
    assert len(df) == 8
    assert set(df["method"]) == {"high-t"}


def test_method_alias(tmp_path):
    out = tmp_path / "em.csv"
    code = run_all.main(["sweep", "--method", "euler-maclaurin", "--tau-min", "0.5", "--points", "2", "--xi", "1", "--out", str(out)])
    assert code == EXIT_OK
    assert set(read_csv(out)["method"]) == {"em"}


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["sweep", "--xi", "-1"],
        ["sweep", "--points", "1"],
        ["sweep", "--unknown-flag"],
        ["sweep", "--regime", "quantum"],
        ["sweep", "--method", "direct", "--method", "em"],
        ["sweep", "--config", "does-not-exist.cfg"],
        ["figure", "fig9"],
    ],
)
def test_usage_errors(argv):
    assert run_all.main(argv) == EXIT_USAGE


def test_numerical_failure(tmp_path):
    argv = ["sweep", "--method", "em", "--tau-min", "0.01", "--tau-max", "0.02", "--points", "2", "--out", str(tmp_path / "x.csv")]
    assert run_all.main(argv) == EXIT_NUMERICAL


def test_config_file_with_override(tmp_path):
    config = tmp_path / "nonrel.cfg"
    config.write_text("regime=nonrel\nmethod=exact-nr\nxi=1\nxi=5\npoints=3\n", encoding="utf-8")
    out = tmp_path / "nonrel.csv"
    assert run_all.main(["sweep", "--config", str(config), "--points", "4", "--out", str(out)]) == EXIT_OK
    df = read_csv(out)
    assert len(df) == 8
    assert set(df["regime"]) == {"nonrel"}


def test_figure(tmp_path, capsys):
    assert run_all.main(["figure", "fig4", "--out", str(tmp_path), "--points", "10", "--svg"]) == EXIT_OK
    assert (tmp_path / "mean-energy.csv").exists()
    assert (tmp_path / "mean-energy.svg").exists()
    assert "mean-energy.csv" in capsys.readouterr().out


@pytest.mark.parametrize("extra", [["--xi", "2"], ["--paper-literal"], ["--xlsx", "f.xlsx"]])
def test_figure_rejects_fixed_parameters(tmp_path, extra):
    assert run_all.main(["figure", "entropy-rel", *extra, "--out", str(tmp_path)]) == EXIT_USAGE


def test_figure_n_particles(tmp_path):
    assert run_all.main(["figure", "fig4", "--n-particles", "2", "--points", "3", "--out", str(tmp_path)]) == EXIT_OK
    df = read_csv(tmp_path / "mean-energy.csv")
    df = df[df["regime"] == "rel"]
    assert np.allclose(df["ln_z"], 2 * (6.0 * np.log(df["tau"]) + np.log(30.0) - 3.0 * np.log(df["xi"])))


def test_compare(tmp_path):
    out = tmp_path / "cmp.csv"
    argv = ["compare", "--regime", "nonrel", "--method", "direct", "--method", "exact-nr", "--points", "3", "--xi", "1", "--out", str(out)]
    assert run_all.main(argv) == EXIT_OK
    assert read_csv(out)["dev_direct_vs_exact-nr"].max() <= 1e-10


def test_validate_exit_codes(monkeypatch, capsys):
    def fake_validate(perturbation=0.0):
        return ValidationReport([CheckResult("eq7-b5-coefficient", perturbation == 0.0, "ok")])

    monkeypatch.setattr(run_all, "validate", fake_validate)
    assert run_all.main(["validate"]) == EXIT_OK
    assert "[PASS] eq7-b5-coefficient" in capsys.readouterr().out
    assert run_all.main(["validate", "--perturb", "1e-3"]) == EXIT_VALIDATION
    assert "[FAIL] eq7-b5-coefficient" in capsys.readouterr().out


@pytest.mark.parametrize("flag", ["--paper-literal", "--printed-coefficients"])
def test_printed_coefficients_flag(tmp_path, flag):
    out = tmp_path / "cmp.csv"
    argv = ["compare", "--regime", "rel", "--method", "direct", "--method", "em", flag]
    argv += ["--tau-min", "0.5", "--points", "2", "--xi", "1", "--out", str(out)]
    assert run_all.main(argv) == EXIT_OK
    df = read_csv(out)
    assert "em-printed_ln_z" in df.columns
    assert (df["dev_em_vs_em-printed"] > 0).all()


def test_validate_accepts_paper_literal(monkeypatch):
    monkeypatch.setattr(run_all, "validate", lambda perturbation=0.0: ValidationReport([]))
    assert run_all.main(["validate", "--paper-literal"]) == EXIT_OK
