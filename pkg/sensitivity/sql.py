"""Detection condition and the minimal detectable strain.

Three estimates are provided:

- sql_vacuum: (1 / (L t omega0)) sqrt(hbar / (m omega0))
- sql_thermal: sql_vacuum * sqrt(1 + kT / (hbar omega0)), or sqrt(1 + 2 nbar) with exact_thermal
- linearized_solve: smallest h0 with |theta_g| > sqrt(g^2 + g^2 tau + N theta_l^2) at the
  envelope time, found by bisection
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional

from scipy import optimize

from closedform.signal import SignalStats
from closedform.thermal import mean_occupation
from model.params import DetectorParams, derive_couplings, thermal_ratio
from model.phases import theta_g, theta_l
from utils.errors import ConvergenceError, LinearizationError, ParameterError

logger = logging.getLogger(__name__)

SQL_VACUUM = "sql_vacuum"
SQL_THERMAL = "sql_thermal"
LINEARIZED_SOLVE = "linearized_solve"

# Upper edge of the small-phase regime assumed by the linearized condition
LINEARIZATION_LIMIT = 0.1
# Order of magnitude usually quoted for the thermal limit at 100 K
QUOTED_THERMAL_ORDER = 1e-19


@dataclass(frozen=True)
class SqlResult:
    """Minimal detectable strain [-] for temperature T [K] and observation time t_obs [s]."""

    h_threshold: float
    T: float
    t_obs: float
    method: str
    note: str = ""


def detection_margin(stats: SignalStats, reference: Optional[float] = None) -> float:
    """Signal minus sqrt(D); the signal is detectable when this is positive.

    Without a reference the signal is the raw mean I. With one, it is |I - reference|,
    where reference is the calibrated zero-strain output I(h0 = 0) at the same time
    and temperature. The light-pressure offset N theta_l then drops out, which is the
    convention the linearized threshold solver uses.
    """
    noise = math.sqrt(max(stats.dispersion, 0.0))
    if reference is None:
        return stats.mean - noise
    return abs(stats.mean - reference) - noise


def _observation_time(params: DetectorParams, t_obs: Optional[float]) -> float:
    t = params.t_obs if t_obs is None else t_obs
    if not t > 0:
        raise ParameterError(f"Observation time must be positive, got {t}")
    return t


def h_sql(params: DetectorParams, t_obs: Optional[float] = None) -> SqlResult:
    """Zero-temperature standard quantum limit on the strain.

    Args:
        params: Detector parameters
        t_obs: Observation time [s]; defaults to params.t_obs

    Returns:
        SqlResult tagged sql_vacuum
    """
    t = _observation_time(params, t_obs)
    value = math.sqrt(params.hbar / (params.m * params.omega0)) / (params.L * t * params.omega0)
    return SqlResult(h_threshold=value, T=0.0, t_obs=t, method=SQL_VACUUM)


def _thermal_term(params: DetectorParams, T: float, exact_thermal: bool) -> float:
    # kT / (hbar omega0), or 2 nbar from the alpha^4 factor of the exact dispersion
    if T < 0:
        raise ParameterError(f"Temperature must be non-negative, got {T}")
    if exact_thermal:
        return 2.0 * mean_occupation(params.omega0, T, params.hbar, params.k_B)
    return thermal_ratio(params, T)


def h_sql_thermal(
    params: DetectorParams,
    t_obs: Optional[float] = None,
    T: Optional[float] = None,
    exact_thermal: bool = False,
) -> SqlResult:
    """Temperature-dependent standard quantum limit.

    Args:
        params: Detector parameters
        t_obs: Observation time [s]; defaults to params.t_obs
        T: Temperature [K]; defaults to params.T
        exact_thermal: Use 1 + 2 nbar under the root instead of 1 + kT / (hbar omega0)

    Returns:
        SqlResult tagged sql_thermal; the note compares it with the vacuum limit
    """
    T = params.T if T is None else T
    vacuum = h_sql(params, t_obs)
    factor = math.sqrt(1.0 + _thermal_term(params, T, exact_thermal))
    value = vacuum.h_threshold * factor

    note = ""
    if factor > 1.0:
        note = f"exceeds sql_vacuum by {factor:.3g}x"
        if value > QUOTED_THERMAL_ORDER:
            note += f"; {value / QUOTED_THERMAL_ORDER:.3g}x the quoted {QUOTED_THERMAL_ORDER:g} order"
    if exact_thermal:
        note = "; ".join(filter(None, ["exact thermal term", note]))
    return SqlResult(h_threshold=value, T=T, t_obs=vacuum.t_obs, method=SQL_THERMAL, note=note)


def envelope_time(params: DetectorParams, t_obs: float) -> float:
    """Time nearest t_obs where |sin(omega0 t)| = 1, i.e. omega0 t = pi/2 + k pi, k >= 0."""
    k = max(0, round((params.omega0 * t_obs - 0.5 * math.pi) / math.pi))
    return (0.5 * math.pi + k * math.pi) / params.omega0


@dataclass(frozen=True)
class LinearizedCondition:
    """Terms of the linearized detection condition at one time.

    signal is |theta_g|, noise is sqrt(g^2 + g^2 tau + N theta_l^2) (without the
    N theta_l^2 term in the semiclassical form) and offset is the h0-independent
    light-pressure phase N theta_l.
    """

    signal: float
    noise: float
    offset: float

    @property
    def margin(self) -> float:
        return self.signal - self.noise


def linearized_stats(
    params: DetectorParams,
    t: float,
    T: Optional[float] = None,
    semiclassical: bool = False,
    exact_thermal: bool = False,
) -> LinearizedCondition:
    """Evaluate the linearized detection condition at time t.

    Args:
        params: Detector parameters
        t: Evaluation time [s]
        T: Temperature [K]; defaults to params.T
        semiclassical: Drop the photon-number fluctuation term N theta_l^2
        exact_thermal: Use 2 nbar for the thermal term instead of kT / (hbar omega0)

    Returns:
        LinearizedCondition
    """
    T = params.T if T is None else T
    g = derive_couplings(params).g
    th_l = theta_l(t, params)
    radicand = g * g * (1.0 + _thermal_term(params, T, exact_thermal))
    if not semiclassical:
        radicand += params.N * th_l * th_l
    return LinearizedCondition(
        signal=abs(theta_g(t, params)),
        noise=math.sqrt(radicand),
        offset=params.N * th_l,
    )


def solve_h_threshold_linearized(
    params: DetectorParams,
    t_obs: Optional[float] = None,
    T: Optional[float] = None,
    semiclassical: bool = False,
    exact_thermal: bool = False,
    lo: float = 1e-30,
    hi: float = 1e-10,
    rtol: float = 1e-3,
) -> SqlResult:
    """Smallest h0 satisfying the linearized detection condition at the envelope time.

    Bisection runs on log10(h0), so rtol is a relative tolerance on h0.

    Args:
        params: Detector parameters
        t_obs: Observation time [s]; defaults to params.t_obs
        T: Temperature [K]; defaults to params.T
        semiclassical: Drop the photon-number fluctuation term
        exact_thermal: Use 2 nbar for the thermal term
        lo: Lower end of the search bracket
        hi: Upper end of the search bracket
        rtol: Relative tolerance on the threshold

    Returns:
        SqlResult tagged linearized_solve

    Raises:
        LinearizationError: If g or the phases at the threshold are not small
        ConvergenceError: If no h0 in [lo, hi] satisfies the condition
    """
    t = _observation_time(params, t_obs)
    T = params.T if T is None else T
    g = derive_couplings(params).g
    if g >= LINEARIZATION_LIMIT:
        raise LinearizationError(f"Coupling g={g:.3g} is not small; the linearized condition needs g < {LINEARIZATION_LIMIT}")

    t_star = envelope_time(params, t)
    unit = params.with_overrides(h0=1.0)
    base = linearized_stats(unit, t_star, T, semiclassical, exact_thermal)
    if abs(base.offset) >= LINEARIZATION_LIMIT:
        raise LinearizationError(f"Light-pressure phase N theta_l={base.offset:.3g} is not small")

    # theta_g is linear in h0
    def margin(log_h: float) -> float:
        return 10.0 ** log_h * base.signal - base.noise

    log_lo, log_hi = math.log10(lo), math.log10(hi)
    notes = [f"envelope t*={t_star:.6g} s"]
    if semiclassical:
        notes.append("semiclassical")
    if exact_thermal:
        notes.append("exact thermal term")

    if margin(log_lo) > 0:
        notes.append(f"condition already holds at lower bracket {lo:g}")
        logger.warning(f"Linearized condition holds at h0={lo:g}; returning the bracket edge")
        threshold = lo
    elif margin(log_hi) <= 0:
        raise ConvergenceError(
            f"No h0 in [{lo:g}, {hi:g}] satisfies the linearized condition "
            f"(noise {base.noise:.3g}, signal per unit strain {base.signal:.3g})"
        )
    else:
        root = optimize.bisect(margin, log_lo, log_hi, xtol=math.log10(1.0 + rtol))
        threshold = 10.0 ** root

    phase = threshold * base.signal + abs(base.offset)
    if phase >= LINEARIZATION_LIMIT:
        raise LinearizationError(f"Phase {phase:.3g} at the threshold is outside the small-phase regime")

    logger.debug(f"Linearized threshold {threshold:.6g} at t*={t_star:.6g}, T={T:g}")
    return SqlResult(h_threshold=threshold, T=T, t_obs=t, method=LINEARIZED_SOLVE, note="; ".join(notes))
