"""Thermal (Gibbs) preparation of the oscillator: occupation, attenuation, Laguerre sum."""

import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import constants

from closedform.laguerre import laguerre_finite_sum
from model.params import DerivedCouplings, DetectorParams, derive_couplings
from model.phases import theta_g, theta_l
from utils.errors import ConvergenceError, ParameterError

logger = logging.getLogger(__name__)

# exp(-x) underflows to 0 well before this
_MAX_EXPONENT = 700.0
GIBBS_TAIL_TOL = 1e-15
# The literal double sum costs O(n_cut^2); beyond this, use the closed form alpha
MAX_GIBBS_TERMS = 20_000


@dataclass(frozen=True)
class ThermalSpec:
    """Gibbs state summary: temperature T [K], energy theta = kT [J], occupation nbar,
    attenuation alpha = exp(-g^2 nbar), 1 - alpha and kT / (hbar omega0)."""

    T: float
    theta: float
    nbar: float
    alpha: float
    attenuation: float
    ratio: float


def quanta_exponent(omega0: float, T: float, hbar: float = constants.hbar, k_B: float = constants.k) -> float:
    """hbar omega0 / kT; infinite at T = 0."""
    if T < 0:
        raise ParameterError(f"Temperature must be non-negative, got {T}")
    if T == 0:
        return math.inf
    return hbar * omega0 / (k_B * T)


def mean_occupation(omega0: float, T: float, hbar: float = constants.hbar, k_B: float = constants.k) -> float:
    """Bose-Einstein occupation 1 / (exp(hbar omega0 / kT) - 1)."""
    x = quanta_exponent(omega0, T, hbar, k_B)
    if x > _MAX_EXPONENT:
        return 0.0
    return 1.0 / math.expm1(x)


def thermal_alpha(
    couplings: DerivedCouplings,
    omega0: float,
    T: float,
    hbar: float = constants.hbar,
    k_B: float = constants.k,
) -> ThermalSpec:
    """Attenuation alpha = exp(-g^2 / (exp(hbar omega0 / kT) - 1)) of the mean signal.

    Args:
        couplings: Derived couplings (only g is used)
        omega0: Oscillator frequency [1/s]
        T: Temperature [K]
        hbar: Reduced Planck constant
        k_B: Boltzmann constant

    Returns:
        ThermalSpec; alpha is exactly 1 at T = 0 or g = 0
    """
    nbar = mean_occupation(omega0, T, hbar, k_B)
    exponent = couplings.g ** 2 * nbar
    return ThermalSpec(
        T=T,
        theta=k_B * T,
        nbar=nbar,
        alpha=math.exp(-exponent),
        attenuation=-math.expm1(-exponent),
        ratio=k_B * T / (hbar * omega0),
    )


def thermal_spec(params: DetectorParams, T: Optional[float] = None) -> ThermalSpec:
    """ThermalSpec for params at T (defaults to params.T)."""
    T = params.T if T is None else T
    return thermal_alpha(derive_couplings(params), params.omega0, T, params.hbar, params.k_B)


def gibbs_tail_bound(z: float, x: float, n_cut: int) -> float:
    """Bound e^{z/2} q^{n_cut} on the normalized remainder, q = exp(-x)."""
    if math.isinf(x):
        return 0.0
    return math.exp(0.5 * max(z, 0.0) - x * n_cut)


def gibbs_cutoff(z: float, x: float, tol: float = GIBBS_TAIL_TOL) -> int:
    """Smallest n_cut whose Gibbs tail bound is below tol."""
    if math.isinf(x):
        return 1
    return max(1, math.ceil((0.5 * max(z, 0.0) - math.log(tol)) / x))


def gibbs_laguerre_sum(z: float, x: float, n_cut: Optional[int] = None, tol: float = GIBBS_TAIL_TOL) -> float:
    """Normalized Gibbs-weighted Laguerre sum (1 - q) sum_{n < n_cut} q^n L_n(z).

    Each L_n is evaluated from its alternating binomial sum, so the result is the
    literal double sum over n and k. It equals exp(-z / (e^x - 1)).

    Args:
        z: Laguerre argument (g^2)
        x: hbar omega0 / kT (math.inf for T = 0)
        n_cut: Number of Gibbs terms; chosen from the tail bound when None
        tol: Required tail bound

    Returns:
        Normalized sum

    Raises:
        ConvergenceError: If the tail bound at n_cut is not below tol, or the
            cutoff needed exceeds MAX_GIBBS_TERMS
    """
    if math.isinf(x):
        return 1.0
    if n_cut is None:
        n_cut = gibbs_cutoff(z, x, tol)
    if n_cut > MAX_GIBBS_TERMS:
        raise ConvergenceError(
            f"Gibbs-Laguerre sum needs n_cut={n_cut:.3g} terms at hbar omega0/kT={x:.3g}, "
            f"more than MAX_GIBBS_TERMS={MAX_GIBBS_TERMS}; use thermal_alpha instead"
        )
    bound = gibbs_tail_bound(z, x, n_cut)
    if bound >= tol:
        raise ConvergenceError(
            f"Gibbs-Laguerre sum not converged at n_cut={n_cut}: tail bound {bound:.3e} >= {tol:.1e}"
        )

    n = np.arange(n_cut)
    weights = np.exp(-x * n)
    values = np.array([laguerre_finite_sum(k, z) for k in n])
    total = -math.expm1(-x) * float(np.dot(weights, values))
    logger.debug(f"Gibbs-Laguerre sum z={z:g} x={x:g} n_cut={n_cut}: {total!r}")
    return total


def thermal_sum_direct(
    t: float,
    params: DetectorParams,
    T: float,
    n_cut: Optional[int] = None,
    photons: int = 0,
) -> complex:
    """Partially averaged output signal for a definite photon number.

    Returns exp(-g^2/2) exp(i (theta_g + photons * theta_l)) times the normalized
    Gibbs-Laguerre sum at z = g^2; the imaginary part is the sector mean over I_N.

    Args:
        t: Time [s]
        params: Detector parameters
        T: Temperature [K]
        n_cut: Gibbs cutoff (None picks one from the tail bound)
        photons: Photon number of the sector

    Returns:
        Complex signal over I_N

    Raises:
        ConvergenceError: If the Gibbs sum needs more than MAX_GIBBS_TERMS terms,
            which is the case for detector parameters at any T > 0
    """
    g = derive_couplings(params).g
    x = quanta_exponent(params.omega0, T, params.hbar, params.k_B)
    trace_factor = gibbs_laguerre_sum(g * g, x, n_cut)
    phase = theta_g(t, params) + photons * theta_l(t, params)
    return trace_factor * math.exp(-0.5 * g * g) * complex(math.cos(phase), math.sin(phase))
