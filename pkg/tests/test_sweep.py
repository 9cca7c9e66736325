import filecmp
import math

import numpy as np
import pandas as pd
import pytest
from openpyxl import load_workbook

from config.settings import SWEEP_COLUMNS
from src.analysis.partition import Method
from src.model.params import Regime, UnitMode
from src.reporting.csv_generator import read_csv
from src.reporting.models import FIGURES, SweepConfig, get_figure
from src.reporting.sweep import (
    audit_identity,
    compare_methods,
    comparison_frame,
    emit_figure,
    relative_deviation,
    run_sweep,
    sweep_frame,
)
from src.utils.config_file import read_config_file
from src.utils.errors import ExpansionError, UsageError


def small_config(tmp_path, **overrides) -> SweepConfig:
    values = {"points": 5, "tau_min": 0.1, "tau_max": 2.0, "xi": [1.0, 5.0], "out": tmp_path / "sweep.csv"}
    values.update(overrides)
    return SweepConfig.from_mapping(values)


class TestSweepConfig:
    def test_from_strings(self):
        config = SweepConfig.from_mapping(
            {
                "regime": "nonrel",
                "method": "euler-maclaurin",
                "tau-min": "0.5",
                "points": "10",
                "xi": ["1", "5,10"],
                "svg": "yes",
            }
        )
        assert config.regime == Regime.NONRELATIVISTIC
        assert config.method == Method.EULER_MACLAURIN
        assert config.tau_min == 0.5
        assert config.points == 10
        assert config.xi_values == (1.0, 5.0, 10.0)
        assert config.emit_svg is True

    @pytest.mark.parametrize(
        "values, key",
        [
            ({"points": 1}, "points"),
            ({"points": "dos"}, "points"),
            ({"tau_min": 2.0, "tau_max": 1.0}, "tau_min"),
            ({"xi": []}, "xi"),
            ({"xi": "-1"}, "xi"),
            ({"regime": "rel", "method": "exact-nr"}, "exact-nr"),
            ({"method": "montecarlo"}, "montecarlo"),
            ({"colour": "red"}, "colour"),
            ({"m0c2": 2.0}, "m0c2"),
            ({"svg": "quizá"}, "svg"),
        ],
    )
    def test_invalid_values_name_the_key(self, values, key):
        with pytest.raises(UsageError, match=key):
            SweepConfig.from_mapping(values)

    @pytest.mark.parametrize("key", ["paper-literal", "paper_literal", "printed-coefficients"])
    def test_printed_coefficients_keys(self, key):
        assert SweepConfig.from_mapping({key: "true"}).printed_coefficients is True

    def test_log_grid(self):
        config = SweepConfig.from_mapping({"tau_min": 0.01, "tau_max": 1.0, "points": 3, "spacing": "log"})
        assert np.allclose(config.tau_grid(), [0.01, 0.1, 1.0])

    def test_si_rest_energy(self):
        config = SweepConfig.from_mapping({"units": "si", "m0c2": 2.0e-13})
        params = config.params_for(1.0)
        assert config.units == UnitMode.SI
        assert params.m0c2 == 2.0e-13
        assert params.xi_bar == pytest.approx(2.0e-13)

    def test_config_file(self, tmp_path):
        path = tmp_path / "sweep.cfg"
        path.write_text("# barrido\nregime = nonrel\nmethod=exact-nr\nxi=1\nxi=5\ntau-max=3\n\n", encoding="utf-8")
        config = SweepConfig.from_mapping(read_config_file(path))
        assert config.regime == Regime.NONRELATIVISTIC
        assert config.xi_values == (1.0, 5.0)
        assert config.tau_max == 3.0

    def test_config_file_errors(self, tmp_path):
        with pytest.raises(UsageError):
            read_config_file(tmp_path / "missing.cfg")
        path = tmp_path / "bad.cfg"
        path.write_text("regime nonrel\n", encoding="utf-8")
        with pytest.raises(UsageError, match="bad.cfg:1"):
            read_config_file(path)


class TestRunSweep:
    def test_high_t_reference_row(self, tmp_path):
        config = small_config(tmp_path, method="high-t", xi=[1.0], points=20)
        df = read_csv(run_sweep(config))
        assert list(df.columns) == SWEEP_COLUMNS
        row = df.iloc[(df["tau"] - 1.0).abs().argmin()]
        assert row["F_bar"] == pytest.approx(-math.log(30.0), rel=1e-9)
        assert row["U_bar"] == pytest.approx(6.0, rel=1e-9)
        assert row["S_bar"] == pytest.approx(6.0 + math.log(30.0), rel=1e-9)
        assert row["Cv_bar"] == pytest.approx(6.0)

    def test_exact_nonrel_geometric_point(self, tmp_path):
        config = small_config(tmp_path, regime="nonrel", method="exact-nr", xi=[1.0], tau_min=1.0 / math.log(2.0), points=2)
        df = read_csv(run_sweep(config))
        assert df["ln_z"].iloc[0] == pytest.approx(math.log(10.0), rel=1e-11)

    def test_rows_sorted(self, tmp_path):
        config = small_config(tmp_path, xi=[5.0, 1.0])
        df = sweep_frame(config)
        assert list(df["xi"]) == [1.0] * 5 + [5.0] * 5
        assert df["tau"].is_monotonic_increasing is False
        assert all(group["tau"].is_monotonic_increasing for _, group in df.groupby("xi"))

    def test_n_particles_scale_ln_z(self, tmp_path):
        one = sweep_frame(small_config(tmp_path, method="high-t"))
        many = sweep_frame(small_config(tmp_path, method="high-t", n_particles=7))
        assert np.allclose(many["ln_z"], 7 * one["ln_z"])
        assert np.array_equal(many["U_bar"], one["U_bar"])

    def test_deterministic_with_workers(self, tmp_path):
        first = run_sweep(small_config(tmp_path, out=tmp_path / "a.csv"))
        second = run_sweep(small_config(tmp_path, out=tmp_path / "b.csv", workers=4))
        assert filecmp.cmp(first, second, shallow=False)

    def test_csv_format(self, tmp_path):
        path = run_sweep(small_config(tmp_path, method="high-t"))
        raw = path.read_bytes()
        assert b"\r\n" not in raw
        assert raw.startswith(b"regime,method,tau,xi,mu_b,ln_z,")

    def test_svg_output(self, tmp_path):
        path = run_sweep(small_config(tmp_path, method="high-t", svg=True))
        for column in ("F_bar", "U_bar", "S_bar", "Cv_bar"):
            assert (tmp_path / f"sweep_{column}.svg").exists()
        assert path.exists()

    def test_em_low_temperature(self, tmp_path):
        with pytest.raises(ExpansionError):
            run_sweep(small_config(tmp_path, method="em", tau_min=0.01, tau_max=0.02, points=2))

    def test_identity_audit(self, tmp_path):
        for i, (regime, method) in enumerate(
            [("rel", "direct"), ("rel", "high-t"), ("nonrel", "exact-nr"), ("nonrel", "direct")]
        ):
            path = run_sweep(small_config(tmp_path, regime=regime, method=method, mu_b=0.3, out=tmp_path / f"{i}.csv"))
            assert audit_identity(path).empty

    def test_identity_audit_em(self, tmp_path):
        path = run_sweep(small_config(tmp_path, method="em", tau_min=0.5))
        assert audit_identity(path).empty

    def test_identity_audit_detects_corruption(self, tmp_path):
        path = run_sweep(small_config(tmp_path, method="high-t"))
        df = pd.read_csv(path)
        df.loc[2, "U_bar"] += 0.01
        df.to_csv(path, index=False)
        violations = audit_identity(path)
        assert len(violations) == 1
        assert violations["identity_residual"].iloc[0] > 1e-9


class TestFigures:
    def test_known_ids(self):
        assert set(FIGURES) == {"free-energy-rel", "entropy-rel", "free-energy-nonrel", "entropy-nonrel", "mean-energy"}
        assert get_figure("fig2").id == "entropy-rel"
        with pytest.raises(UsageError):
            get_figure("fig9")

    def test_mean_energy_slopes(self, tmp_path):
        [path] = emit_figure("fig4", tmp_path)
        assert path.name == "mean-energy.csv"
        df = read_csv(path)
        rel = df[df["regime"] == "rel"]
        nonrel = df[df["regime"] == "nonrel"]
        assert np.allclose(rel["U_bar"], 6.0 * rel["tau"], rtol=1e-11)
        assert np.allclose(nonrel["U_bar"], 3.0 * nonrel["tau"], rtol=1e-11)
        assert len(rel) == 200

    def test_entropy_offsets(self, tmp_path):
        df = read_csv(emit_figure("entropy-rel", tmp_path)[0])
        table = df.pivot(index="tau", columns="xi", values="S_bar")
        assert np.allclose(table[1.0] - table[15.0], 3.0 * math.log(15.0), atol=1e-9)

    def test_free_energy_zero_crossing(self, tmp_path):
        df = read_csv(emit_figure("free-energy-rel", tmp_path)[0])
        curve = df[df["xi"] == 1.0]
        sign_change = np.flatnonzero(np.diff(np.sign(curve["F_bar"].to_numpy())))
        assert len(sign_change) == 1
        assert curve["tau"].iloc[sign_change[0]] == pytest.approx(30.0 ** (-1.0 / 6.0), abs=0.011)

    def test_svg_deterministic(self, tmp_path):
        first = emit_figure("entropy-nonrel", tmp_path / "a", svg=True)
        second = emit_figure("entropy-nonrel", tmp_path / "b", svg=True)
        assert [p.suffix for p in first] == [".csv", ".svg"]
        for a, b in zip(first, second):
            assert filecmp.cmp(a, b, shallow=False)

    def test_config_particles_carried(self, tmp_path):
        one = read_csv(emit_figure("mean-energy", tmp_path / "a", config=SweepConfig.from_mapping({"points": 3}))[0])
        config = SweepConfig.from_mapping({"points": 3, "n_particles": 4})
        many = read_csv(emit_figure("mean-energy", tmp_path / "b", config=config)[0])
        assert np.allclose(many["ln_z"], 4 * one["ln_z"], rtol=1e-11)
        assert np.array_equal(many["U_bar"], one["U_bar"])

    def test_custom_grid(self, tmp_path):
        config = SweepConfig.from_mapping({"tau_min": 0.5, "tau_max": 1.0, "points": 3})
        df = read_csv(emit_figure("free-energy-nonrel", tmp_path, config=config)[0])
        assert len(df) == 3 * len(get_figure("free-energy-nonrel").xi_values)


class TestCompare:
    def test_nonrel_routes(self, tmp_path):
        config = small_config(tmp_path, regime="nonrel", method=["direct", "high-t", "exact-nr"], xi=[1.0], tau_min=10.0, tau_max=20.0, points=2)
        df, labels = comparison_frame(config)
        assert labels == ["direct", "high-t", "exact-nr"]
        assert df["dev_direct_vs_exact-nr"].max() <= 1e-10
        assert df["dev_high-t_vs_exact-nr"].iloc[0] == pytest.approx(0.091, abs=2e-3)

    def test_duplicate_method_zero_deviation(self, tmp_path):
        df, labels = comparison_frame(small_config(tmp_path, method=["direct", "direct"]))
        assert labels == ["direct", "direct.1"]
        assert (df["dev_direct_vs_direct.1"] == 0.0).all()

    def test_needs_two_methods(self, tmp_path):
        with pytest.raises(UsageError):
            comparison_frame(small_config(tmp_path, method="direct"))

    def test_printed_coefficients_column(self, tmp_path):
        config = small_config(tmp_path, method=["direct", "em"], tau_min=0.5, printed_coefficients=True)
        df, labels = comparison_frame(config)
        assert labels == ["direct", "em", "em-printed"]
        assert (df["dev_em_vs_em-printed"] > 0).all()

    def test_csv_round_trip_and_workbook(self, tmp_path):
        config = small_config(tmp_path, method=["direct", "em"], tau_min=0.5, xlsx=tmp_path / "cmp.xlsx")
        df = read_csv(compare_methods(config))
        recomputed = relative_deviation(df["direct_ln_z"], df["em_ln_z"])
        assert np.allclose(recomputed, df["dev_direct_vs_em"], rtol=1e-9, atol=1e-12)
        workbook = load_workbook(tmp_path / "cmp.xlsx")
        assert workbook.sheetnames == ["Comparación", "Resumen"]
