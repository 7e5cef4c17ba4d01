import math

import pytest

from closedform.thermal import (
    MAX_GIBBS_TERMS,
    gibbs_cutoff,
    gibbs_laguerre_sum,
    mean_occupation,
    quanta_exponent,
    thermal_alpha,
    thermal_spec,
    thermal_sum_direct,
)
from model.params import derive_couplings
from model.phases import theta_g, theta_l
from utils.errors import ConvergenceError, ParameterError


def test_zero_temperature(ligo):
    assert math.isinf(quanta_exponent(ligo.omega0, 0.0))
    assert mean_occupation(ligo.omega0, 0.0) == 0.0
    spec = thermal_spec(ligo, 0.0)
    assert spec.alpha == 1.0
    assert spec.attenuation == 0.0


def test_negative_temperature_rejected(ligo):
    with pytest.raises(ParameterError):
        quanta_exponent(ligo.omega0, -1.0)


def test_occupation_is_bose_einstein():
    assert mean_occupation(1.0, 1.0 / math.log(2.0), hbar=1.0, k_B=1.0) == pytest.approx(1.0)


def test_huge_quanta_exponent_gives_empty_mode():
    assert mean_occupation(1.0, 1e-4, hbar=1.0, k_B=1.0) == 0.0


def test_ligo_attenuation_at_100_kelvin(ligo):
    spec = thermal_spec(ligo, 100.0)
    g = derive_couplings(ligo).g
    assert spec.ratio == pytest.approx(4.36e11, rel=1e-2)
    assert spec.nbar == pytest.approx(spec.ratio - 0.5, rel=1e-9)
    assert spec.attenuation == pytest.approx(g * g * spec.nbar, rel=1e-9)
    assert spec.alpha < 1.0


def test_alpha_is_one_without_coupling(ligo):
    spec = thermal_alpha(derive_couplings(ligo.with_overrides(omega=0.0)), ligo.omega0, 300.0)
    assert spec.alpha == 1.0


@pytest.mark.parametrize("g", [0.1, 0.2, 0.5])
@pytest.mark.parametrize("x", [0.5, 1.0, 3.0])
def test_gibbs_laguerre_sum_equals_attenuation(g, x):
    z = g * g
    assert abs(gibbs_laguerre_sum(z, x) - math.exp(-z / math.expm1(x))) <= 1e-12


def test_alpha_decreases_with_temperature_and_coupling(ligo):
    temperatures = [0.0, 1e-3, 1.0, 10.0, 100.0, 300.0]
    alphas = [thermal_spec(ligo, T).alpha for T in temperatures]
    assert all(a >= b for a, b in zip(alphas, alphas[1:]))
    unit = ligo.with_overrides(hbar=1.0, k_B=1.0, omega0=1.0, m=1.0, c=1.0, L=1.0)
    by_coupling = [
        thermal_alpha(derive_couplings(unit.with_overrides(omega=w)), 1.0, 2.0, hbar=1.0, k_B=1.0).alpha
        for w in (0.0, 0.1, 0.2, 0.4, 0.8)
    ]
    assert by_coupling[0] == 1.0
    assert all(a > b for a, b in zip(by_coupling, by_coupling[1:]))


def test_gibbs_laguerre_sum_at_zero_temperature():
    assert gibbs_laguerre_sum(0.3, math.inf) == 1.0


def test_gibbs_cutoff_grows_as_temperature_rises():
    assert gibbs_cutoff(0.5, 0.1) > gibbs_cutoff(0.5, 1.0)


def test_gibbs_laguerre_sum_rejects_short_cutoff():
    with pytest.raises(ConvergenceError):
        gibbs_laguerre_sum(0.5, 0.5, n_cut=5)


def test_gibbs_laguerre_sum_at_high_occupation():
    # nbar = 200, g = 0.2: thousands of Gibbs terms
    x = math.log1p(1.0 / 200.0)
    assert gibbs_cutoff(0.04, x) > 4000
    assert gibbs_laguerre_sum(0.04, x) == pytest.approx(math.exp(-8.0), rel=1e-6)


def test_gibbs_laguerre_sum_rejects_oversized_cutoff():
    with pytest.raises(ConvergenceError, match="MAX_GIBBS_TERMS"):
        gibbs_laguerre_sum(0.04, 0.001, n_cut=MAX_GIBBS_TERMS + 1)


def test_direct_thermal_sum_refuses_detector_scale(ligo):
    with pytest.raises(ConvergenceError):
        thermal_sum_direct(1.0, ligo, 100.0)


@pytest.mark.parametrize("photons", [0, 3])
def test_direct_thermal_sum(desk_thermal, photons):
    params, t = desk_thermal
    g = derive_couplings(params).g
    spec = thermal_spec(params)
    value = thermal_sum_direct(t, params, params.T, photons=photons)
    phase = theta_g(t, params) + photons * theta_l(t, params)
    magnitude = spec.alpha * math.exp(-0.5 * g * g)
    assert abs(value) == pytest.approx(magnitude, rel=1e-10)
    assert value.imag == pytest.approx(magnitude * math.sin(phase), rel=1e-10)


def test_direct_thermal_sum_at_zero_temperature(desk_ground):
    params, t = desk_ground
    g = derive_couplings(params).g
    value = thermal_sum_direct(t, params, 0.0)
    assert value.imag == pytest.approx(math.exp(-0.5 * g * g) * math.sin(theta_g(t, params)), rel=1e-12)
