import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from model.params import DetectorParams, build_params, derive_couplings, drive_amplitude, thermal_ratio
from model.phases import (
    effective_drive_frequency,
    gravitational_force,
    interference_phase,
    is_near_resonant,
    phase_state,
    theta_g,
    theta_g_quadrature,
    theta_l,
)
from oracle.desk import desk_params, load_desk_profiles
from utils.errors import ParameterError


def test_default_couplings(ligo):
    couplings = derive_couplings(ligo)
    assert couplings.g == pytest.approx(2.517e-12, rel=1e-3)
    assert couplings.kappa == pytest.approx(3.773e-7, rel=1e-3)


def test_zero_optical_frequency_gives_zero_couplings(ligo):
    couplings = derive_couplings(ligo.with_overrides(omega=0.0))
    assert couplings.g == 0.0
    assert couplings.kappa == 0.0


def test_thermal_ratio_at_100_kelvin(ligo):
    assert thermal_ratio(ligo, 100.0) == pytest.approx(4.36e11, rel=1e-2)


@pytest.mark.parametrize("values", [{"m": -1.0}, {"L": 0.0}, {"omega": -5.0}, {"bogus": 1.0}, {"T": -1.0}])
def test_invalid_params_raise_parameter_error(values):
    with pytest.raises(ParameterError):
        build_params(values)


def test_params_are_frozen(ligo):
    with pytest.raises(Exception):
        ligo.m = 3.0


def test_with_overrides_validates(ligo):
    assert ligo.with_overrides(m=20.0).m == 20.0
    with pytest.raises(ParameterError):
        ligo.with_overrides(omega0=0.0)


def test_drive_amplitude_scales_with_h0(ligo):
    assert drive_amplitude(ligo.with_overrides(h0=2 * ligo.h0)) == pytest.approx(2 * drive_amplitude(ligo))


def test_gravitational_force_vectorized(ligo):
    tau = np.linspace(0.0, 1.0, 5)
    force = gravitational_force(tau, ligo)
    assert force.shape == (5,)
    assert force[0] == pytest.approx(ligo.L * ligo.m * ligo.h0 * ligo.omega_g ** 2)


def test_phases_vanish_at_zero_time(ligo):
    assert theta_g(0.0, ligo) == 0.0
    assert theta_l(0.0, ligo) == 0.0


def test_theta_l_maximum_at_half_period(ligo):
    couplings = derive_couplings(ligo)
    t = math.pi / ligo.omega0
    assert theta_l(t, ligo) == pytest.approx(4 * couplings.kappa * couplings.g / ligo.omega0, rel=1e-12)


def test_theta_l_peak_at_detector_scale(ligo):
    t = np.linspace(0.0, 2 * math.pi / ligo.omega0, 2001)
    peak = max(theta_l(x, ligo) for x in t)
    assert peak == pytest.approx(1.2e-19, rel=0.1)


def test_theta_g_linear_in_h0(ligo):
    assert theta_g(0.7, ligo.with_overrides(h0=3 * ligo.h0)) == pytest.approx(3 * theta_g(0.7, ligo), rel=1e-14)


@pytest.mark.parametrize("omega_g", [30.0, 20.0, 45.0, 29.9])
@pytest.mark.parametrize("t", [0.3, 1.0, 2.5])
def test_theta_g_matches_quadrature(ligo, omega_g, t):
    params = ligo.with_overrides(omega_g=omega_g)
    scale = params.omega * params.L * params.h0 * omega_g ** 2 / (params.omega0 * params.c)
    assert theta_g(t, params) == pytest.approx(theta_g_quadrature(t, params), abs=1e-12 * scale * t)


def test_theta_g_matches_quadrature_random_draws(ligo):
    rng = np.random.default_rng(11)
    for omega_g, t in zip(rng.uniform(5.0, 60.0, 100), rng.uniform(0.05, 5.0, 100)):
        params = ligo.with_overrides(omega_g=omega_g)
        scale = params.omega * params.L * params.h0 * omega_g ** 2 / (params.omega0 * params.c)
        assert theta_g(t, params) == pytest.approx(theta_g_quadrature(t, params), abs=1e-10 * scale * t)


def test_resonance_window_snaps_to_resonant_branch(ligo):
    near = ligo.with_overrides(omega_g=ligo.omega0 * (1 + 1e-8))
    assert is_near_resonant(near)
    assert effective_drive_frequency(near) == ligo.omega0
    assert theta_g(1.0, near) == theta_g(1.0, ligo)


def test_resonant_theta_g_closed_form(ligo):
    t = 1.0
    expected = ligo.omega * ligo.L * ligo.h0 * ligo.omega0 * t * math.sin(ligo.omega0 * t) / (2 * ligo.c)
    assert theta_g(t, ligo) == pytest.approx(expected, rel=1e-12)


def test_interference_phase_bridge_at_desk_scale(desk_ground):
    params, _ = desk_ground
    for t in np.linspace(0.1, 3 * math.pi, 25):
        state = phase_state(t, params)
        for n in range(21):
            expected = state.theta_g + n * state.theta_l
            assert abs(interference_phase(state, n, params) - expected) <= 1e-14 * (1 + n)


@settings(max_examples=40, deadline=None)
@given(
    t=st.floats(0.0, 3 * math.pi),
    ratio=st.floats(0.1, 0.8),
    n=st.integers(0, 20),
)
def test_interference_phase_bridge_off_resonance(t, ratio, n):
    params, _ = desk_params(load_desk_profiles()["default"])
    params = params.with_overrides(omega_g=ratio)
    state = phase_state(t, params)
    expected = state.theta_g + n * state.theta_l
    assert abs(interference_phase(state, n, params) - expected) <= 1e-14 * (1 + n)


@pytest.mark.parametrize("n", [0, 1, 3, 20])
def test_sector_phase_real_part_is_half_displacement_norm(desk_ground, n):
    params, t = desk_ground
    state = phase_state(t, params)
    assert state.c(n).real == pytest.approx(0.5 * abs(state.beta(n)) ** 2, rel=1e-10, abs=1e-14)


def test_phase_state_at_zero_time_is_trivial(desk_ground):
    params, _ = desk_ground
    state = phase_state(0.0, params)
    assert state.beta(4) == 0
    assert state.c(4) == 0


def test_detector_params_defaults():
    params = DetectorParams()
    assert params.N == 1e17
    assert params.t_obs == 1.0
    assert params.T == 0.0
