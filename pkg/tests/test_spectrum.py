import math

import numpy as np
import pytest

from config.settings import BOLTZMANN_SI, ELECTRON_REST_ENERGY_SI
from src.model.params import ModelParams, Regime, UnitMode, UnitsSystem
from src.model.spectrum import degeneracy, energy_nonrel, energy_rel, reduced_state
from src.utils.errors import DomainError


class TestDegeneracy:
    def test_first_levels(self):
        assert degeneracy(1) == 3
        assert degeneracy(2) == 8
        assert degeneracy(10) == 120

    def test_matches_sum_over_projections(self):
        k = np.arange(1, 501)
        explicit = [sum(2 * m + 1 for m in range(1, n + 1)) for n in k]
        assert np.array_equal(degeneracy(k), explicit)

    def test_integer_arithmetic(self):
        assert isinstance(degeneracy(3), int)
        assert degeneracy(np.array([1, 2])).dtype == np.int64

    @pytest.mark.parametrize("k", [0, -1, 1.5])
    def test_invalid_quantum_number(self, k):
        with pytest.raises(DomainError):
            degeneracy(k)


class TestEnergies:
    def test_relativistic_ground_level(self, rel_params):
        assert energy_rel(1, rel_params) == pytest.approx(math.sqrt(3.0))

    def test_field_shift(self, field_params):
        shifted = energy_rel(np.array([1, 2, 3]), field_params)
        bare = energy_rel(np.array([1, 2, 3]), field_params.with_field(0.0, 0.0))
        assert np.allclose(shifted - bare, 2.0)

    def test_relativistic_spectrum_increasing(self, rel_params):
        energies = energy_rel(np.arange(1, 100), rel_params)
        assert np.all(np.diff(energies) > 0)

    def test_reference_level(self):
        assert energy_rel(4, ModelParams(xi=1.0)) == 3.0

    @pytest.mark.parametrize("xi", [0.5, 1.0, 15.0])
    def test_relativistic_gaps_shrink(self, xi):
        gaps = np.diff(energy_rel(np.arange(1, 2001), ModelParams(xi=xi)))
        assert np.all(gaps > 0)
        assert np.all(np.diff(gaps) < 0)

    @pytest.mark.parametrize("k", [1, 3, 10])
    def test_nonrelativistic_limit_error_is_quadratic(self, k):
        def error(xi):
            return abs(energy_rel(k, ModelParams(xi=xi)) - 1.0 - xi * k)

        xi = 1e-3
        assert error(xi) / error(xi / 2.0) == pytest.approx(4.0, abs=0.1)

    def test_nonrelativistic_is_linear(self, nonrel_params):
        k = np.arange(1, 6)
        assert np.allclose(energy_nonrel(k, nonrel_params), k * nonrel_params.xi_bar)

    def test_rejects_zero_level(self, rel_params):
        with pytest.raises(DomainError):
            energy_rel(0, rel_params)


class TestReducedState:
    def test_natural_units(self, field_params):
        state = reduced_state(field_params, 0.5)
        assert state.beta == pytest.approx(2.0)
        assert state.tau == pytest.approx(0.5)
        assert state.a == pytest.approx(4.0)
        assert state.b == pytest.approx(2.0)
        assert state.b_bar == pytest.approx(10.0)
        assert state.x == pytest.approx(math.exp(-10.0))

    @pytest.mark.parametrize("T", [0.3, 1.7, 25.0])
    def test_doubling_temperature_halves_reduced_values(self, field_params, T):
        cold = reduced_state(field_params, T)
        hot = reduced_state(field_params, 2.0 * T)
        assert hot.beta == cold.beta / 2.0
        assert hot.a == cold.a / 2.0
        assert hot.b == cold.b / 2.0
        assert hot.b_bar == cold.b_bar / 2.0

    @pytest.mark.parametrize("T", [0.0, -1.0, math.inf, math.nan])
    def test_invalid_temperature(self, rel_params, T):
        with pytest.raises(DomainError):
            reduced_state(rel_params, T)

    def test_si_units(self):
        params = ModelParams(xi=2.0, m0c2=ELECTRON_REST_ENERGY_SI, units=UnitsSystem.si())
        T0 = params.characteristic_temperature
        state = reduced_state(params, 3.0 * T0)
        assert state.tau == pytest.approx(3.0)
        assert state.b == pytest.approx(1.0 / 3.0)
        assert params.xi_bar == pytest.approx(2.0 * ELECTRON_REST_ENERGY_SI)
        assert T0 == pytest.approx(ELECTRON_REST_ENERGY_SI / BOLTZMANN_SI)


class TestModelParams:
    def test_xi_bar_completed(self):
        params = ModelParams(xi_bar=3.0)
        assert params.xi == 3.0
        assert params.xi_bar == 3.0

    def test_inconsistent_xi(self):
        with pytest.raises(DomainError):
            ModelParams(xi=1.0, xi_bar=2.0)

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"xi": 1.0, "sigma": -1},
            {"xi": 1.0, "delta": 1},
            {"xi": 1.0, "s": -1},
            {"xi": 1.0, "mu": -1.0, "B": 1.0},
            {"xi": 1.0, "m0c2": 2.0},
            {"xi": 1.0, "n_particles": 0},
            {"xi": 0.0},
            {},
        ],
    )
    def test_invalid_parameters(self, kwargs):
        with pytest.raises(DomainError):
            ModelParams(**kwargs)

    def test_regime_from_string(self):
        assert ModelParams(xi=1.0, regime="nonrel").regime == Regime.NONRELATIVISTIC

    def test_with_regime_keeps_values(self, field_params):
        other = field_params.with_regime(Regime.NONRELATIVISTIC)
        assert other.regime == Regime.NONRELATIVISTIC
        assert other.mu_b == field_params.mu_b


class TestUnitsSystem:
    def test_natural_energy_scale(self):
        units = UnitsSystem.natural()
        assert units.mode == UnitMode.NATURAL
        assert units.energy_to_si(1.0) == ELECTRON_REST_ENERGY_SI
        assert units.energy_from_si(units.energy_to_si(2.5)) == pytest.approx(2.5)
        assert units.temperature_to_si(1.0) == pytest.approx(ELECTRON_REST_ENERGY_SI / BOLTZMANN_SI)

    def test_si_is_identity(self):
        units = UnitsSystem.si()
        assert units.energy_to_si(4.0) == 4.0
        assert units.temperature_from_si(300.0) == 300.0

    def test_invalid_rest_energy(self):
        with pytest.raises(DomainError):
            UnitsSystem.natural(0.0)
