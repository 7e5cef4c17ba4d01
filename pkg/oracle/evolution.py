"""Brute-force evolution of the oscillator in each photon-number sector.

The Hamiltonian commutes with the photon number, so the joint state splits into
sectors. In sector n the evolution operator reduces to

    U_n = e^{i omega0 t b+b} e^{-C_n} e^{-i b+ conj(beta_n)} e^{-i b beta_n}
        = e^{i omega0 t b+b} e^{-C_n + |beta_n|^2/2} D(-i conj(beta_n))

acting on the oscillator alone. Expectations are Poisson-weighted sums of
per-sector traces.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError
from scipy import stats

from closedform.signal import SignalStats
from closedform.thermal import ThermalSpec
from model.params import DetectorParams, derive_couplings
from model.phases import PhaseState, phase_state
from oracle.fock import ObservableMatrices, build_thermal_state, displacement_matrix, observable_matrices
from utils.budget import TruncationBudget
from utils.errors import ParameterError, TruncationError

logger = logging.getLogger(__name__)

MIN_N_OSC = 16
# Sectors lighter than this contribute nothing representable
_NEGLIGIBLE_WEIGHT = 1e-300


class OracleConfig(BaseModel):
    """Truncation dimensions and tolerances of the brute-force oracle."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    n_osc: int = Field(60, ge=MIN_N_OSC, description="oscillator Fock dimension")
    n_field: Optional[int] = Field(None, ge=1, description="photon sectors 0..n_field-1; None picks from tol_trunc")
    tol_trunc: float = Field(1e-10, gt=0, description="allowed discarded probability mass")
    tol_match: float = Field(1e-10, gt=0, description="oracle vs closed-form tolerance")
    amp_guard: float = Field(
        0.5,
        gt=0,
        description=(
            "displacement guard |amp|^2 < amp_guard * n_osc; the default profile reaches |beta|^2 = 16.1, "
            "past n_osc/8 = 7.5 at n_osc = 60, so leakage is policed by the edge-population budget"
        ),
    )
    edge_levels: int = Field(2, ge=1, description="top Fock levels counted as leaked population")
    max_workers: int = Field(1, ge=1, description="threads used for sector evaluation")


def build_oracle_config(values: Dict[str, Any]) -> OracleConfig:
    """Validate oracle settings.

    Args:
        values: Field name to value mapping

    Returns:
        OracleConfig

    Raises:
        TruncationError: If n_osc is below the minimum dimension
        ParameterError: For any other invalid field
    """
    n_osc = values.get("n_osc")
    if n_osc is not None and n_osc < MIN_N_OSC:
        raise TruncationError(f"n_osc={n_osc} is below the minimum truncation dimension {MIN_N_OSC}")
    try:
        return OracleConfig.model_validate(values)
    except ValidationError as e:
        details = "; ".join(f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in e.errors())
        raise ParameterError(f"Invalid oracle configuration: {details}") from e


@dataclass(frozen=True)
class SectorState:
    """Oscillator density matrix after evolution in one photon-number sector."""

    n_photons: int
    weight: float
    osc_state: np.ndarray

    @property
    def trace(self) -> float:
        return float(np.trace(self.osc_state).real)

    @property
    def purity(self) -> float:
        return float(np.real(np.vdot(self.osc_state, self.osc_state)))

    def edge_population(self, levels: int) -> float:
        """Population of the top `levels` Fock states."""
        return float(np.sum(np.diag(self.osc_state)[-levels:].real))


@dataclass
class OracleResult:
    """Oracle statistics together with the truncation accounting that produced them."""

    stats: SignalStats
    n_osc: int
    n_field: int
    budget: Dict[str, Any] = field(default_factory=dict)


def photon_weights(N: float, n_field: int) -> Tuple[np.ndarray, float]:
    """Poisson probabilities of photon numbers 0..n_field-1 and the mass beyond them.

    Args:
        N: Mean photon number
        n_field: Number of sectors kept

    Returns:
        (weights, tail)
    """
    if N < 0:
        raise ParameterError(f"Mean photon number must be non-negative, got {N}")
    if N == 0:
        weights = np.zeros(n_field)
        weights[0] = 1.0
        return weights, 0.0
    n = np.arange(n_field)
    return stats.poisson.pmf(n, N), float(stats.poisson.sf(n_field - 1, N))


def resolve_n_field(N: float, config: OracleConfig) -> int:
    """Sector cutoff: the configured one, or the smallest with Poisson tail below tol_trunc / 10."""
    if config.n_field is not None:
        return config.n_field
    if N == 0:
        return 1
    target = 0.1 * config.tol_trunc
    n_field = int(np.ceil(N)) + 1
    while stats.poisson.sf(n_field - 1, N) >= target:
        n_field += 1
    logger.debug(f"Auto n_field={n_field} for N={N:g}")
    return n_field


def evolve_sector(
    n_photons: int,
    t: float,
    params: DetectorParams,
    rho0: np.ndarray,
    config: Optional[OracleConfig] = None,
    state: Optional[PhaseState] = None,
    sector_phase: bool = True,
    weight: float = 1.0,
) -> SectorState:
    """Evolve the oscillator density matrix of one photon-number sector to time t.

    Args:
        n_photons: Photon number of the sector
        t: Time [s]
        params: Detector parameters
        rho0: Initial oscillator density matrix (n_osc x n_osc)
        config: Oracle configuration (amp_guard is used)
        state: Precomputed phase_state(t, params)
        sector_phase: Apply the e^{-C_n + |beta_n|^2/2} scalar; it cancels in U rho U+
        weight: Poisson weight stored on the result

    Returns:
        SectorState

    Raises:
        TruncationError: If the displacement violates the guard
    """
    config = config or OracleConfig()
    state = state or phase_state(t, params)
    n_osc = rho0.shape[0]

    beta = state.beta(n_photons)
    amp = -1j * np.conj(beta)
    unitary = displacement_matrix(amp, n_osc, config.amp_guard)
    if sector_phase:
        unitary = np.exp(-state.c(n_photons) + 0.5 * abs(beta) ** 2) * unitary
    rotation = np.exp(1j * params.omega0 * t * np.arange(n_osc))
    unitary = rotation[:, None] * unitary

    rho = unitary @ rho0 @ unitary.conj().T
    return SectorState(n_photons=n_photons, weight=float(weight), osc_state=rho)


def _sector_moments(
    n: int,
    weight: float,
    t: float,
    params: DetectorParams,
    rho0: np.ndarray,
    config: OracleConfig,
    state: PhaseState,
    observables: ObservableMatrices,
    sector_phase: bool,
) -> Tuple[int, float, float, float]:
    sector = evolve_sector(n, t, params, rho0, config, state, sector_phase, weight)
    mean = float(np.real(np.sum(observables.signal * sector.osc_state.T)))
    second = float(np.real(np.sum(observables.signal_squared * sector.osc_state.T)))
    return n, mean, second, sector.edge_population(config.edge_levels)


def expectation(
    t: float,
    params: DetectorParams,
    thermal: ThermalSpec,
    config: Optional[OracleConfig] = None,
    sector_phase: bool = True,
) -> OracleResult:
    """Mean, second moment and dispersion of the output by direct trace.

    I / I_N = sum_n w_n Tr(A rho_n(t)), likewise for A^2, with Poisson weights w_n of
    mean N. Every discarded piece of probability (Gibbs tail, Poisson tail, population
    reaching the top Fock levels) is charged to one truncation budget.

    Args:
        t: Time [s]
        params: Detector parameters (desk scale)
        thermal: Oscillator preparation; only nbar is used
        config: Oracle configuration
        sector_phase: Include the scalar sector phase

    Returns:
        OracleResult

    Raises:
        TruncationError: If any guard fails or the budget reaches tol_trunc
    """
    config = config or OracleConfig()
    budget = TruncationBudget(limit=config.tol_trunc)
    g = derive_couplings(params).g

    observables = observable_matrices(g, config.n_osc)
    rho0 = build_thermal_state(config.n_osc, thermal.nbar, config.tol_trunc)
    budget.record("thermal_tail", 1.0 - float(np.trace(rho0).real))

    n_field = resolve_n_field(params.N, config)
    weights, tail = photon_weights(params.N, n_field)
    if not budget.can_spend(tail):
        raise TruncationError(
            f"Poisson tail {tail:.3e} beyond n_field={n_field} leaves no room in tol_trunc={config.tol_trunc:.1e}"
        )
    budget.record("poisson_tail", tail)

    state = phase_state(t, params)
    sectors = [(n, float(w)) for n, w in enumerate(weights) if w > _NEGLIGIBLE_WEIGHT]
    logger.debug(f"Evaluating {len(sectors)} of {n_field} sectors with n_osc={config.n_osc}")

    def run(item):
        n, w = item
        return _sector_moments(n, w, t, params, rho0, config, state, observables, sector_phase)

    if config.max_workers > 1:
        with ThreadPoolExecutor(max_workers=config.max_workers) as pool:
            results: List[Tuple[int, float, float, float]] = list(pool.map(run, sectors))
    else:
        results = [run(item) for item in sectors]

    mean = 0.0
    second = 0.0
    for (n, mean_n, second_n, edge_n), (_, w) in zip(sorted(results), sectors):
        mean += w * mean_n
        second += w * second_n
        budget.record("edge_population", w * edge_n)

    if budget.exceeded:
        raise TruncationError(
            f"Truncation budget {budget.spent:.3e} reached tol_trunc={config.tol_trunc:.1e} "
            f"(n_osc={config.n_osc}, n_field={n_field})"
        )

    I_N = params.I_N
    mean *= I_N
    second *= I_N * I_N
    result = OracleResult(
        stats=SignalStats(mean=mean, second_moment=second, dispersion=max(second - mean * mean, 0.0)),
        n_osc=config.n_osc,
        n_field=n_field,
        budget=budget.get_stats(),
    )
    logger.info(
        f"Oracle t={t:g} nbar={thermal.nbar:g}: mean={mean:.12g}, "
        f"truncation {budget.spent:.2e} of {budget.limit:.1e}"
    )
    return result
