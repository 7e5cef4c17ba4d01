import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from closedform.signal import SignalStats, dispersion_thermal, mean_thermal
from closedform.thermal import thermal_spec
from model.params import DetectorParams
from sensitivity.sql import (
    LINEARIZED_SOLVE,
    SQL_THERMAL,
    SQL_VACUUM,
    detection_margin,
    envelope_time,
    h_sql,
    h_sql_thermal,
    solve_h_threshold_linearized,
)
from sensitivity.sweep import MAX_ERROR_TEXT, _error_cell, build_grid, sweep
from utils.errors import ConvergenceError, LinearizationError, ParameterError


def test_detection_margin():
    assert detection_margin(SignalStats(mean=0.6, second_moment=0.61, dispersion=0.25)) == pytest.approx(0.1)
    assert detection_margin(SignalStats(mean=0.0, second_moment=0.04, dispersion=0.04)) == pytest.approx(-0.2)


class TestFormulas:
    def test_vacuum_limit(self, ligo):
        result = h_sql(ligo)
        assert result.method == SQL_VACUUM
        assert result.h_threshold == pytest.approx(4.94e-24, rel=1e-3)
        assert result.h_threshold == pytest.approx(5e-24, rel=0.02)

    def test_vacuum_scaling(self, ligo):
        base = h_sql(ligo).h_threshold
        assert h_sql(ligo, t_obs=2.0).h_threshold == pytest.approx(base / 2)
        assert h_sql(ligo.with_overrides(m=4 * ligo.m)).h_threshold == pytest.approx(base / 2)

    def test_non_positive_observation_time(self, ligo):
        with pytest.raises(ParameterError):
            h_sql(ligo, t_obs=0.0)

    def test_thermal_limit_at_zero_temperature(self, ligo):
        assert h_sql_thermal(ligo, T=0.0).h_threshold == h_sql(ligo).h_threshold

    def test_thermal_limit_at_100_kelvin(self, ligo):
        result = h_sql_thermal(ligo, T=100.0)
        assert result.method == SQL_THERMAL
        assert result.h_threshold == pytest.approx(3.27e-18, rel=1e-2)
        assert result.h_threshold > 1e-19
        assert result.h_threshold / h_sql(ligo).h_threshold == pytest.approx(6.6e5, rel=1e-2)
        assert "exceeds sql_vacuum" in result.note

    def test_exact_thermal_term(self, ligo):
        printed = h_sql_thermal(ligo, T=100.0).h_threshold
        exact = h_sql_thermal(ligo, T=100.0, exact_thermal=True).h_threshold
        assert exact / printed == pytest.approx(math.sqrt(2), rel=1e-6)

    @settings(max_examples=30, deadline=None)
    @given(lo=st.floats(0.0, 1e4), step=st.floats(0.0, 1e4))
    def test_thermal_limit_monotone_in_temperature(self, lo, step):
        params = DetectorParams()
        assert h_sql_thermal(params, T=lo + step).h_threshold >= h_sql_thermal(params, T=lo).h_threshold

    def test_negative_temperature(self, ligo):
        with pytest.raises(ParameterError):
            h_sql_thermal(ligo, T=-1.0)


class TestLinearized:
    def test_envelope_time(self, ligo):
        t_star = envelope_time(ligo, 1.0)
        assert t_star == pytest.approx((0.5 * math.pi + 9 * math.pi) / 30, rel=1e-12)
        assert abs(math.sin(ligo.omega0 * t_star)) == pytest.approx(1.0)
        assert envelope_time(ligo, 0.0) == pytest.approx(0.5 * math.pi / ligo.omega0)

    def test_semiclassical_vacuum_threshold(self, ligo):
        result = solve_h_threshold_linearized(ligo, T=0.0, semiclassical=True)
        vacuum = h_sql(ligo).h_threshold
        assert result.method == LINEARIZED_SOLVE
        assert 0.5 * vacuum <= result.h_threshold <= 2 * vacuum
        t_star = envelope_time(ligo, 1.0)
        assert result.h_threshold == pytest.approx(math.sqrt(2) * h_sql(ligo, t_star).h_threshold, rel=2e-3)

    def test_thermal_threshold_close_to_formula(self, ligo):
        result = solve_h_threshold_linearized(ligo, T=100.0)
        formula = h_sql_thermal(ligo, T=100.0).h_threshold
        assert 0.5 * formula <= result.h_threshold <= 2 * formula

    def test_temperature_ratio(self, ligo):
        cold = solve_h_threshold_linearized(ligo, T=0.0, semiclassical=True).h_threshold
        warm = solve_h_threshold_linearized(ligo, T=100.0, semiclassical=True).h_threshold
        ratio = h_sql_thermal(ligo, T=100.0).h_threshold / h_sql(ligo).h_threshold
        assert warm / cold == pytest.approx(ratio, rel=1e-2)

    @pytest.mark.parametrize("T, exact_thermal", [(0.0, False), (100.0, True)])
    def test_margin_vanishes_at_threshold(self, ligo, T, exact_thermal):
        result = solve_h_threshold_linearized(ligo, T=T, exact_thermal=exact_thermal)
        t_star = envelope_time(ligo, 1.0)
        spec = thermal_spec(ligo, T)
        stats = dispersion_thermal(t_star, ligo.with_overrides(h0=result.h_threshold, T=T), spec)
        reference = mean_thermal(t_star, ligo.with_overrides(h0=0.0, T=T), spec)
        noise = math.sqrt(stats.dispersion)
        assert abs(detection_margin(stats, reference)) <= 2e-3 * noise

    def test_raw_margin_is_offset_by_light_pressure(self, ligo):
        result = solve_h_threshold_linearized(ligo, T=0.0)
        t_star = envelope_time(ligo, 1.0)
        params = ligo.with_overrides(h0=result.h_threshold, T=0.0)
        stats = dispersion_thermal(t_star, params, thermal_spec(params))
        # The zero-strain output N theta_l dwarfs sqrt(D) at the threshold
        assert abs(detection_margin(stats)) > 1e3 * math.sqrt(stats.dispersion)

    def test_photon_fluctuations_raise_vacuum_threshold(self, ligo):
        full = solve_h_threshold_linearized(ligo, T=0.0).h_threshold
        semiclassical = solve_h_threshold_linearized(ligo, T=0.0, semiclassical=True).h_threshold
        assert full > semiclassical

    def test_large_coupling_rejected(self, ligo):
        with pytest.raises(LinearizationError):
            solve_h_threshold_linearized(ligo.with_overrides(omega=1e26))

    def test_non_bracketing(self, ligo):
        with pytest.raises(ConvergenceError):
            solve_h_threshold_linearized(ligo, T=0.0, hi=1e-25)

    def test_condition_holding_at_lower_bracket(self, ligo):
        result = solve_h_threshold_linearized(ligo, T=0.0, lo=1e-20)
        assert result.h_threshold == 1e-20
        assert "lower bracket" in result.note


class TestSweep:
    def test_single_zero_temperature(self, ligo):
        rows = sweep(ligo, T_grid=[0.0])
        assert len(rows) == 1
        assert rows[0].vacuum == rows[0].thermal == h_sql(ligo).h_threshold
        assert rows[0].linearized is not None
        assert rows[0].error == ""

    def test_temperature_ratio(self, ligo):
        rows = sweep(ligo, T_grid=[0.0, 100.0])
        assert rows[1].thermal / rows[0].thermal == pytest.approx(6.6e5, rel=1e-2)

    def test_log_grid_monotone(self, ligo):
        rows = sweep(ligo, T_grid=build_grid(1e-9, 1e10, 20, log=True))
        thresholds = [row.thermal for row in rows]
        assert all(b >= a for a, b in zip(thresholds, thresholds[1:]))

    def test_time_grid(self, ligo):
        rows = sweep(ligo.with_overrides(T=10.0), t_grid=[0.5, 1.0, 2.0])
        assert [row.t_obs for row in rows] == [0.5, 1.0, 2.0]
        assert all(row.T == 10.0 for row in rows)
        assert rows[0].vacuum > rows[1].vacuum > rows[2].vacuum

    def test_failures_are_kept_per_point(self, ligo):
        rows = sweep(ligo.with_overrides(omega=1e26), T_grid=[0.0, 1.0])
        assert all(row.linearized is None for row in rows)
        assert all("linearized" in row.error for row in rows)
        assert all(row.vacuum is not None for row in rows)

    def test_error_cell_keeps_every_method_visible(self):
        errors = [f"{name}: " + "x" * 300 for name in ("vacuum", "thermal", "linearized")]
        cell = _error_cell(errors)
        assert len(cell) <= MAX_ERROR_TEXT + 2 * len("; ")
        assert [part.split(":")[0] for part in cell.split("; ")] == ["vacuum", "thermal", "linearized"]
        assert cell.endswith("...")
        assert _error_cell(["linearized: short"]) == "linearized: short"
        assert _error_cell([]) == ""

    def test_threads_preserve_order(self, ligo):
        grid = np.linspace(0.0, 300.0, 9)
        assert sweep(ligo, T_grid=grid, max_workers=3) == sweep(ligo, T_grid=grid)

    @pytest.mark.parametrize("kwargs", [{}, {"T_grid": [1.0], "t_grid": [1.0]}, {"T_grid": []}])
    def test_grid_errors(self, ligo, kwargs):
        with pytest.raises(ParameterError):
            sweep(ligo, **kwargs)

    def test_build_grid_errors(self):
        with pytest.raises(ParameterError):
            build_grid(0.0, 1.0, 0)
        with pytest.raises(ParameterError):
            build_grid(0.0, 1.0, 5, log=True)
        with pytest.raises(ParameterError):
            build_grid(2.0, 1.0, 5)
