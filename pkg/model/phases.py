"""Time-dependent phases and sector integrals of the driven oscillator.

In the photon-number sector n the oscillator is driven by kappa*n + f(t), with
f(t) = F_g(t) / sqrt(2 m omega0 hbar) and F_g(t) = L m h0 omega_g^2 cos(omega_g t).
Everything here is evaluated from analytic antiderivatives of products of complex
exponentials, so PhaseState values are exact up to rounding.
"""

import logging
import math
from dataclasses import dataclass
from typing import Iterable, Tuple

import numpy as np
from scipy import integrate

from model.params import DetectorParams, derive_couplings, drive_amplitude

logger = logging.getLogger(__name__)

RESONANCE_WINDOW = 1e-6


def is_near_resonant(params: DetectorParams, window: float = RESONANCE_WINDOW) -> bool:
    """True when |omega_g - omega0| < window * omega0."""
    return abs(params.omega_g - params.omega0) < window * params.omega0


def effective_drive_frequency(params: DetectorParams, window: float = RESONANCE_WINDOW) -> float:
    """Drive frequency used by the closed forms; snapped to omega0 inside the resonance window."""
    if params.omega_g != params.omega0 and is_near_resonant(params, window):
        logger.debug(
            f"omega_g={params.omega_g} within {window:g} of omega0={params.omega0}, "
            "using resonant branch"
        )
        return params.omega0
    return params.omega_g


def _phase_integral(nu: float, t: float) -> complex:
    """E(nu, t) = integral_0^t exp(i nu s) ds, smooth through nu = 0."""
    if nu == 0.0:
        return complex(t)
    return complex(t * np.exp(0.5j * nu * t) * np.sinc(nu * t / (2.0 * np.pi)))


def _memory_integral(mu: float, nu: float, t: float) -> complex:
    """J(mu, nu, t) = integral_0^t exp(i mu s) * conj(E(nu, s)) ds."""
    if nu == 0.0:
        if mu == 0.0:
            return complex(0.5 * t * t)
        return (t * np.exp(1j * mu * t) - _phase_integral(mu, t)) / (1j * mu)
    return (_phase_integral(mu - nu, t) - _phase_integral(mu, t)) / (-1j * nu)


def gravitational_force(tau, params: DetectorParams):
    """Classical force of the gravitational wave on the oscillator [N].

    Args:
        tau: Time or array of times [s]
        params: Detector parameters

    Returns:
        L m h0 omega_g^2 cos(omega_g tau), same shape as tau
    """
    return params.L * params.m * params.h0 * params.omega_g ** 2 * np.cos(params.omega_g * tau)


def _theta_g_prefactor(params: DetectorParams, omega_g: float) -> float:
    # (omega/omega0) * (L m h0 omega_g^2) / (m c)
    return params.omega * params.L * params.h0 * omega_g ** 2 / (params.omega0 * params.c)


def theta_g(t: float, params: DetectorParams, window: float = RESONANCE_WINDOW) -> float:
    """Gravitational interference phase at time t.

    Evaluates (omega/omega0) * integral_0^t F_g(tau)/(m c) sin(omega0 (t - tau)) dtau
    from its antiderivative. The non-resonant form is written as a product of sines,
    which stays accurate as omega_g approaches omega0.

    Args:
        t: Time [s], t >= 0
        params: Detector parameters
        window: Relative resonance window

    Returns:
        Dimensionless phase
    """
    w0 = params.omega0
    wg = effective_drive_frequency(params, window)
    if wg == w0:
        kernel = 0.5 * t * math.sin(w0 * t)
    else:
        kernel = (
            2.0 * w0 * math.sin(0.5 * (w0 + wg) * t) * math.sin(0.5 * (w0 - wg) * t)
            / ((w0 - wg) * (w0 + wg))
        )
    return _theta_g_prefactor(params, wg) * kernel


def theta_g_quadrature(t: float, params: DetectorParams, epsrel: float = 1e-13) -> float:
    """Gravitational phase by adaptive quadrature of the defining integral."""
    if t == 0:
        return 0.0

    def integrand(tau):
        return gravitational_force(tau, params) * math.sin(params.omega0 * (t - tau))

    value, _ = integrate.quad(integrand, 0.0, t, epsabs=0.0, epsrel=epsrel, limit=500)
    return params.omega / (params.omega0 * params.m * params.c) * value


def theta_l(t: float, params: DetectorParams) -> float:
    """Per-photon light-pressure phase 2 kappa g (1 - cos(omega0 t)) / omega0.

    Args:
        t: Time [s], t >= 0
        params: Detector parameters

    Returns:
        Dimensionless phase
    """
    couplings = derive_couplings(params)
    # 1 - cos(x) = 2 sin^2(x/2) keeps precision for small omega0 t
    half = math.sin(0.5 * params.omega0 * t)
    return 4.0 * couplings.kappa * couplings.g * half * half / params.omega0


@dataclass(frozen=True)
class PhaseState:
    """Phases and complex sector integrals at one time.

    c_parts holds the coefficients of C_n(t) = c0 + c1 n + c2 n^2.
    """

    t: float
    theta_g: float
    theta_l: float
    beta_f: complex
    beta_kappa: complex
    c_parts: Tuple[complex, complex, complex]

    def beta(self, n: int) -> complex:
        """beta_n(t) = n * beta_kappa + beta_f."""
        return n * self.beta_kappa + self.beta_f

    def c(self, n: int) -> complex:
        c0, c1, c2 = self.c_parts
        return c0 + n * c1 + n * n * c2


def _cross(
    forcing: Iterable[Tuple[float, float]],
    memory: Iterable[Tuple[float, float]],
    t: float,
) -> complex:
    memory = list(memory)
    return sum(
        (a * b * _memory_integral(mu, nu, t) for a, mu in forcing for b, nu in memory),
        0j,
    )


def phase_state(t: float, params: DetectorParams, window: float = RESONANCE_WINDOW) -> PhaseState:
    """Evaluate theta_g, theta_l, beta and the C(t) polynomial at time t.

    Args:
        t: Time [s], t >= 0
        params: Detector parameters
        window: Relative resonance window; inside it the drive is treated as resonant

    Returns:
        PhaseState
    """
    couplings = derive_couplings(params)
    w0 = params.omega0
    wg = effective_drive_frequency(params, window)
    half_f = 0.5 * drive_amplitude(params)

    # f(tau) exp(i omega0 tau) = half_f * (exp(i a tau) + exp(i b tau))
    photon_terms = [(couplings.kappa, w0)]
    drive_terms = [(half_f, w0 + wg), (half_f, w0 - wg)]

    beta_kappa = couplings.kappa * _phase_integral(w0, t)
    beta_f = sum((a * _phase_integral(nu, t) for a, nu in drive_terms), 0j)

    c2 = _cross(photon_terms, photon_terms, t)
    c1 = _cross(photon_terms, drive_terms, t) + _cross(drive_terms, photon_terms, t)
    c0 = _cross(drive_terms, drive_terms, t)

    return PhaseState(
        t=t,
        theta_g=theta_g(t, params, window),
        theta_l=theta_l(t, params),
        beta_f=complex(beta_f),
        beta_kappa=complex(beta_kappa),
        c_parts=(complex(c0), complex(c1), complex(c2)),
    )


def interference_phase(state: PhaseState, n: int, params: DetectorParams) -> float:
    """2 g Im[exp(i omega0 t) conj(beta_n(t))], the sector-n interference phase.

    Equals theta_g(t) + n theta_l(t).
    """
    g = derive_couplings(params).g
    return 2.0 * g * (np.exp(1j * params.omega0 * state.t) * np.conj(state.beta(n))).imag
