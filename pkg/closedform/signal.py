"""Mean, second moment and dispersion of the interference output.

All kernels are numpy-vectorized over their phase arguments. The photon-number
average of exp(i n phi) over the coherent laser state is either the exact Poisson
value exp(N (e^{i phi} - 1)) or its Gaussian surrogate exp(i N phi - N phi^2 / 2).
Differences 1 - exp(-s) are taken with expm1 and 1 - cos with sin^2, so
detector-scale values (g^2 ~ 1e-23) keep full precision.
"""

import logging
from dataclasses import dataclass
from typing import Literal, Optional

import numpy as np

from closedform.thermal import ThermalSpec
from model.params import DetectorParams, derive_couplings
from model.phases import theta_g, theta_l
from utils.errors import ParameterError

logger = logging.getLogger(__name__)

PhotonAverage = Literal["gaussian", "exact"]
# "printed_ground": exp(-(g^2 - N theta_l^2)/2) prefactor
# "printed_thermal": alpha exp(+g^2/2) prefactor without the N theta_l^2 factor
MeanVariant = Literal["corrected", "printed_ground", "printed_thermal"]


@dataclass(frozen=True)
class SignalStats:
    """Output-signal statistics: mean I [I_N], second moment <A^2> [I_N^2], dispersion D [I_N^2].

    dispersion_factored is the product form (I_N^2/2)(1 - e^{-u})(1 + e^{-u} cos 2phi),
    available for the ground state with the Gaussian photon average.
    """

    mean: float
    second_moment: float
    dispersion: float
    dispersion_factored: Optional[float] = None


def coherent_average_exact(theta_l, N):
    """Exact Poisson average of exp(i n theta_l): exp(N (e^{i theta_l} - 1))."""
    theta_l = np.asarray(theta_l, dtype=float)
    half = np.sin(0.5 * theta_l)
    return np.exp(N * (-2.0 * half * half + 1j * np.sin(theta_l)))


def coherent_average_gaussian(theta_l, N):
    """Large-N surrogate exp(i N theta_l - N theta_l^2 / 2)."""
    theta_l = np.asarray(theta_l, dtype=float)
    return np.exp(1j * N * theta_l - 0.5 * N * theta_l * theta_l)


def _photon_moments(theta_l, N, photon_average: PhotonAverage, order: int):
    """Log-magnitude decay and phase of the photon average at order * theta_l."""
    x = order * np.asarray(theta_l, dtype=float)
    if photon_average == "gaussian":
        return 0.5 * N * x * x, N * x
    if photon_average == "exact":
        half = np.sin(0.5 * x)
        return 2.0 * N * half * half, N * np.sin(x)
    raise ParameterError(f"Unknown photon average '{photon_average}'")


def signal_mean(
    g,
    theta_g,
    theta_l,
    N,
    I_N: float = 1.0,
    thermal_exponent=0.0,
    photon_average: PhotonAverage = "gaussian",
    variant: MeanVariant = "corrected",
):
    """Mean output I = alpha I_N exp(-g^2/2) Im[e^{i theta_g} <e^{i n theta_l}>].

    Args:
        g: Interference coupling
        theta_g: Gravitational phase
        theta_l: Per-photon light-pressure phase
        N: Mean photon number
        I_N: Output power scale
        thermal_exponent: -ln(alpha) = g^2 nbar
        photon_average: 'gaussian' or 'exact'
        variant: 'corrected' or one of the printed prefactor variants

    Returns:
        Mean signal in units of I_N
    """
    g = np.asarray(g, dtype=float)
    theta_g = np.asarray(theta_g, dtype=float)
    theta_l = np.asarray(theta_l, dtype=float)
    phase = theta_g + N * theta_l

    if variant == "printed_ground":
        return I_N * np.exp(-0.5 * (g * g - N * theta_l * theta_l)) * np.sin(phase)
    if variant == "printed_thermal":
        return I_N * np.exp(0.5 * g * g - thermal_exponent) * np.sin(phase)
    if variant != "corrected":
        raise ParameterError(f"Unknown mean variant '{variant}'")

    decay, photon_phase = _photon_moments(theta_l, N, photon_average, 1)
    return I_N * np.exp(-thermal_exponent - 0.5 * g * g - decay) * np.sin(theta_g + photon_phase)


def signal_second_moment(
    g,
    theta_g,
    theta_l,
    N,
    I_N: float = 1.0,
    thermal_exponent=0.0,
    photon_average: PhotonAverage = "gaussian",
):
    """<A^2> = (I_N^2/2)(1 - alpha^4 e^{-2 g^2} Re[e^{2i theta_g} <e^{2i n theta_l}>])."""
    g = np.asarray(g, dtype=float)
    theta_g = np.asarray(theta_g, dtype=float)
    decay, photon_phase = _photon_moments(theta_l, N, photon_average, 2)
    s = 4.0 * thermal_exponent + 2.0 * g * g + decay
    phi = 2.0 * theta_g + photon_phase
    half = np.sin(0.5 * phi)
    return 0.5 * I_N * I_N * (2.0 * half * half - np.cos(phi) * np.expm1(-s))


def factored_dispersion(g, theta_g, theta_l, N, I_N: float = 1.0):
    """(I_N^2/2)(1 - e^{-u})(1 + e^{-u} cos(2 theta_g + 2 N theta_l)), u = g^2 + N theta_l^2."""
    g = np.asarray(g, dtype=float)
    theta_l = np.asarray(theta_l, dtype=float)
    u = g * g + N * theta_l * theta_l
    phi = 2.0 * (np.asarray(theta_g, dtype=float) + N * theta_l)
    return 0.5 * I_N * I_N * (-np.expm1(-u)) * (1.0 + np.exp(-u) * np.cos(phi))


def _gaussian_dispersion(g, theta_g, theta_l, N, I_N, thermal_exponent):
    # D = (1/2)(1 - e^{-2m})(1 + cos(2 psi) e^{-2m}), both factors non-negative
    g = np.asarray(g, dtype=float)
    theta_l = np.asarray(theta_l, dtype=float)
    two_m = 2.0 * thermal_exponent + g * g + N * theta_l * theta_l
    psi = np.asarray(theta_g, dtype=float) + N * theta_l
    return 0.5 * I_N * I_N * (-np.expm1(-two_m)) * (1.0 + np.cos(2.0 * psi) * np.exp(-two_m))


def stats_from_phases(
    g: float,
    theta_g: float,
    theta_l: float,
    N: float,
    I_N: float = 1.0,
    thermal_exponent: float = 0.0,
    photon_average: PhotonAverage = "gaussian",
    variant: MeanVariant = "corrected",
    factored: bool = False,
) -> SignalStats:
    """Assemble SignalStats from phases; the shared path of every closed form."""
    mean = signal_mean(g, theta_g, theta_l, N, I_N, thermal_exponent, photon_average, variant)
    second = signal_second_moment(g, theta_g, theta_l, N, I_N, thermal_exponent, photon_average)
    if photon_average == "gaussian" and variant == "corrected":
        dispersion = _gaussian_dispersion(g, theta_g, theta_l, N, I_N, thermal_exponent)
    else:
        # second - mean^2 cancels to a few ulps below zero when D is tiny
        dispersion = np.maximum(second - mean * mean, 0.0)
    factored_value = None
    if factored and photon_average == "gaussian" and thermal_exponent == 0.0:
        factored_value = float(factored_dispersion(g, theta_g, theta_l, N, I_N))
    return SignalStats(
        mean=float(mean),
        second_moment=float(second),
        dispersion=float(dispersion),
        dispersion_factored=factored_value,
    )


def _phases(t: float, params: DetectorParams):
    return derive_couplings(params).g, theta_g(t, params), theta_l(t, params)


def mean_ground(
    t: float,
    params: DetectorParams,
    photon_average: PhotonAverage = "gaussian",
    printed: bool = False,
) -> float:
    """Mean output with the oscillator prepared in its ground state.

    Args:
        t: Time [s]
        params: Detector parameters
        photon_average: 'gaussian' (large-N surrogate) or 'exact'
        printed: Use the exp(-(g^2 - N theta_l^2)/2) prefactor variant

    Returns:
        I(t) in the units of I_N
    """
    g, th_g, th_l = _phases(t, params)
    variant = "printed_ground" if printed else "corrected"
    return float(signal_mean(g, th_g, th_l, params.N, params.I_N, 0.0, photon_average, variant))


def dispersion_ground(
    t: float,
    params: DetectorParams,
    photon_average: PhotonAverage = "gaussian",
) -> SignalStats:
    """Second moment and dispersion for the ground-state preparation.

    With the Gaussian photon average the factored dispersion is filled in as well.
    """
    g, th_g, th_l = _phases(t, params)
    return stats_from_phases(g, th_g, th_l, params.N, params.I_N, 0.0, photon_average, factored=True)


def mean_thermal(
    t: float,
    params: DetectorParams,
    thermal: ThermalSpec,
    photon_average: PhotonAverage = "gaussian",
    printed: bool = False,
) -> float:
    """Mean output for a Gibbs-state oscillator; alpha times the ground-state mean.

    Args:
        t: Time [s]
        params: Detector parameters
        thermal: Thermal summary at the oscillator frequency
        photon_average: 'gaussian' or 'exact'
        printed: Use the alpha exp(+g^2/2) prefactor variant

    Returns:
        I(t) in the units of I_N
    """
    g, th_g, th_l = _phases(t, params)
    variant = "printed_thermal" if printed else "corrected"
    exponent = g * g * thermal.nbar
    return float(signal_mean(g, th_g, th_l, params.N, params.I_N, exponent, photon_average, variant))


def dispersion_thermal(
    t: float,
    params: DetectorParams,
    thermal: ThermalSpec,
    photon_average: PhotonAverage = "gaussian",
) -> SignalStats:
    """Second moment (with the alpha^4 factor) and dispersion for a Gibbs-state oscillator."""
    g, th_g, th_l = _phases(t, params)
    exponent = g * g * thermal.nbar
    return stats_from_phases(g, th_g, th_l, params.N, params.I_N, exponent, photon_average)
