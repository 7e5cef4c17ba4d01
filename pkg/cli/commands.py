"""Implementations of the constants, signal, sql, sweep and verify commands.

Each command returns a Table; rendering and exit status are handled by main.py.
"""

import logging
from typing import Dict, Optional, Sequence

from pydantic import ValidationError

from closedform.signal import PhotonAverage, dispersion_ground, dispersion_thermal, mean_ground, mean_thermal
from closedform.thermal import thermal_spec
from cli.config import RunConfig
from cli.output import Column, Table
from model.params import derive_couplings, drive_amplitude
from model.phases import theta_g, theta_l
from oracle.desk import DeskProfile, load_desk_profiles
from oracle.evolution import OracleConfig
from oracle.report import VerificationReport, run_verification
from sensitivity.sql import h_sql, h_sql_thermal, solve_h_threshold_linearized
from sensitivity.sweep import sweep
from utils.errors import GwSqlError, ParameterError
from utils.formatting import format_quantity

logger = logging.getLogger(__name__)

CONSTANT_COLUMNS = [
    Column("g", "g"),
    Column("kappa", "kappa", "1/s"),
    Column("f0", "drive_amplitude", "1/s"),
    Column("T", "T", "K"),
    Column("nbar", "nbar"),
    Column("alpha", "alpha"),
    Column("ratio", "kT_over_hbar_omega0"),
    Column("theta_l_max", "theta_l_max"),
]

SIGNAL_COLUMNS = [
    Column("t", "t", "s"),
    Column("theta_g", "theta_g"),
    Column("theta_l", "theta_l"),
    Column("I_ground", "I_ground_over_IN"),
    Column("D_ground", "D_ground_over_IN2"),
    Column("I_thermal", "I_thermal_over_IN"),
    Column("D_thermal", "D_thermal_over_IN2"),
]

SQL_COLUMNS = [
    Column("method", "method", None),
    Column("h_threshold", "h_threshold"),
    Column("T", "T", "K"),
    Column("t_obs", "t_obs", "s"),
    Column("note", "note", None),
]

SWEEP_COLUMNS = [
    Column("T", "T", "K"),
    Column("t_obs", "t_obs", "s"),
    Column("vacuum", "h_sql_vacuum"),
    Column("thermal", "h_sql_thermal"),
    Column("linearized", "h_linearized"),
    Column("note", "note", None),
    Column("error", "error", None),
]

VERIFY_COLUMNS = [
    Column("check", "check", None),
    Column("expected", "expected", None),
    Column("actual", "actual", None),
    Column("abs_err", "abs_err", None),
    Column("rel_err", "rel_err", None),
    Column("tol", "tol", None),
    Column("pass", "pass", None),
    Column("truncation", "truncation", None),
]


def cmd_constants(config: RunConfig) -> Table:
    """Couplings and thermal quantities of the configured detector."""
    params = config.params
    couplings = derive_couplings(params)
    thermal = thermal_spec(params)
    row = {
        "g": couplings.g,
        "kappa": couplings.kappa,
        "f0": drive_amplitude(params),
        "T": params.T,
        "nbar": thermal.nbar,
        "alpha": thermal.alpha,
        "ratio": thermal.ratio,
        "theta_l_max": 4.0 * couplings.kappa * couplings.g / params.omega0,
    }
    logger.info(f"g = {format_quantity(couplings.g)}, kappa = {format_quantity(couplings.kappa, '1/s')}, alpha={thermal.alpha!r}")
    return Table(columns=CONSTANT_COLUMNS, rows=[row])


def cmd_signal(config: RunConfig, t_grid: Sequence[float], photon_average: PhotonAverage = "gaussian") -> Table:
    """Phases, means and dispersions over a time grid.

    Raises:
        ParameterError: If the grid is empty
        GwSqlError: The first failing row, with its index in the message
    """
    if len(t_grid) == 0:
        raise ParameterError("Time grid is empty")
    params = config.params
    thermal = thermal_spec(params)

    rows = []
    for i, t in enumerate(t_grid):
        t = float(t)
        try:
            ground = dispersion_ground(t, params, photon_average)
            warm = dispersion_thermal(t, params, thermal, photon_average)
            rows.append({
                "t": t,
                "theta_g": theta_g(t, params),
                "theta_l": theta_l(t, params),
                "I_ground": mean_ground(t, params, photon_average),
                "D_ground": ground.dispersion,
                "I_thermal": mean_thermal(t, params, thermal, photon_average),
                "D_thermal": warm.dispersion,
            })
        except GwSqlError as e:
            raise type(e)(f"Row {i} (t={t:g}): {e}") from e
    return Table(columns=SIGNAL_COLUMNS, rows=rows)


def cmd_sql(config: RunConfig, semiclassical: bool = False, exact_thermal: bool = False) -> Table:
    """All three strain thresholds at the configured temperature and observation time."""
    params = config.params
    results = [
        h_sql(params),
        h_sql_thermal(params, exact_thermal=exact_thermal),
        solve_h_threshold_linearized(params, semiclassical=semiclassical, exact_thermal=exact_thermal),
    ]
    rows = [
        {"method": r.method, "h_threshold": r.h_threshold, "T": r.T, "t_obs": r.t_obs, "note": r.note}
        for r in results
    ]
    for r in results:
        logger.info(f"{r.method}: h = {format_quantity(r.h_threshold)}")
    return Table(columns=SQL_COLUMNS, rows=rows)


def cmd_sweep(
    config: RunConfig,
    T_grid: Optional[Sequence[float]] = None,
    t_grid: Optional[Sequence[float]] = None,
    max_workers: int = 1,
    semiclassical: bool = False,
    exact_thermal: bool = False,
) -> Table:
    """Thresholds over a temperature or observation-time grid; failed points keep their error."""
    rows = sweep(
        config.params,
        T_grid=T_grid,
        t_grid=t_grid,
        max_workers=max_workers,
        semiclassical=semiclassical,
        exact_thermal=exact_thermal,
    )
    return Table(columns=SWEEP_COLUMNS, rows=[vars(row) for row in rows])


def resolve_profile(
    name: str = "default",
    overrides: Optional[Dict[str, object]] = None,
    profiles_path: Optional[str] = None,
) -> DeskProfile:
    """Pick a packaged desk profile and apply field overrides."""
    profiles = load_desk_profiles(profiles_path)
    if name not in profiles:
        raise ParameterError(f"Unknown desk profile '{name}'. Available: {', '.join(sorted(profiles))}")
    profile = profiles[name]
    changes = {k: v for k, v in (overrides or {}).items() if v is not None}
    if changes:
        try:
            profile = DeskProfile.model_validate({**profile.model_dump(), **changes})
        except ValidationError as e:
            raise ParameterError(f"Invalid desk profile override: {e}") from e
    return profile


def cmd_verify(
    oracle_config: OracleConfig,
    profile: DeskProfile,
    printed_ground: bool = False,
    printed_thermal: bool = False,
) -> VerificationReport:
    """Run the oracle adjudication suite for a desk profile."""
    return run_verification(profile, oracle_config, printed_ground, printed_thermal)


def verification_table(report: VerificationReport) -> Table:
    return Table(columns=VERIFY_COLUMNS, rows=report.rows())
