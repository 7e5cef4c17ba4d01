"""Temperature and observation-time sweeps of the strain thresholds."""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from model.params import DetectorParams
from sensitivity.sql import h_sql, h_sql_thermal, solve_h_threshold_linearized
from utils.errors import GwSqlError, ParameterError

logger = logging.getLogger(__name__)

# Full messages go to the log; the CSV cell keeps a clipped copy
MAX_ERROR_TEXT = 200


@dataclass(frozen=True)
class SweepRow:
    """Thresholds of all three methods at one grid point.

    A method that failed leaves its value as None and its message in error.
    """

    T: float
    t_obs: float
    vacuum: Optional[float]
    thermal: Optional[float]
    linearized: Optional[float]
    note: str = ""
    error: str = ""


def build_grid(lo: float, hi: float, steps: int, log: bool = False) -> np.ndarray:
    """Evenly spaced grid, geometric with log=True.

    Raises:
        ParameterError: If the grid is empty or a log grid touches zero
    """
    if steps < 1:
        raise ParameterError(f"Grid needs at least one point, got steps={steps}")
    if hi < lo:
        raise ParameterError(f"Grid upper bound {hi} is below lower bound {lo}")
    if log:
        if lo <= 0:
            raise ParameterError(f"Log grid needs a positive lower bound, got {lo}")
        return np.geomspace(lo, hi, steps)
    return np.linspace(lo, hi, steps)


def _error_cell(errors: List[str]) -> str:
    """Join per-method failures, clipping each to an equal share of MAX_ERROR_TEXT."""
    if not errors:
        return ""
    share = MAX_ERROR_TEXT // len(errors)
    return "; ".join(e if len(e) <= share else e[: share - 3] + "..." for e in errors)


def _evaluate_point(
    params: DetectorParams,
    T: float,
    t_obs: float,
    semiclassical: bool,
    exact_thermal: bool,
) -> SweepRow:
    values = {}
    notes = []
    errors = []
    for name, solver in (
        ("vacuum", lambda: h_sql(params, t_obs)),
        ("thermal", lambda: h_sql_thermal(params, t_obs, T, exact_thermal)),
        ("linearized", lambda: solve_h_threshold_linearized(params, t_obs, T, semiclassical, exact_thermal)),
    ):
        try:
            result = solver()
            values[name] = result.h_threshold
            if result.note and name == "thermal":
                notes.append(result.note)
        except GwSqlError as e:
            logger.warning(f"{name} threshold failed at T={T:g}, t_obs={t_obs:g}: {e}")
            values[name] = None
            errors.append(f"{name}: {e}")
    return SweepRow(
        T=float(T),
        t_obs=float(t_obs),
        vacuum=values["vacuum"],
        thermal=values["thermal"],
        linearized=values["linearized"],
        note="; ".join(notes),
        error=_error_cell(errors),
    )


def sweep(
    params: DetectorParams,
    t_obs: Optional[float] = None,
    T_grid: Optional[Sequence[float]] = None,
    t_grid: Optional[Sequence[float]] = None,
    max_workers: int = 1,
    semiclassical: bool = False,
    exact_thermal: bool = False,
) -> List[SweepRow]:
    """Evaluate every threshold over a temperature grid or an observation-time grid.

    Args:
        params: Detector parameters
        t_obs: Observation time for a temperature sweep; defaults to params.t_obs
        T_grid: Temperatures [K]; the temperature is fixed at params.T for a time sweep
        t_grid: Observation times [s]
        max_workers: Threads used to evaluate grid points
        semiclassical: Semiclassical linearized condition
        exact_thermal: Use 2 nbar for the thermal term

    Returns:
        One SweepRow per grid point in grid order

    Raises:
        ParameterError: If not exactly one non-empty grid is given
    """
    if (T_grid is None) == (t_grid is None):
        raise ParameterError("Give exactly one of T_grid or t_grid")
    t_obs = params.t_obs if t_obs is None else t_obs
    if T_grid is not None:
        points = [(float(T), t_obs) for T in T_grid]
    else:
        points = [(params.T, float(t)) for t in t_grid]
    if not points:
        raise ParameterError("Sweep grid is empty")

    def run(point):
        return _evaluate_point(params, point[0], point[1], semiclassical, exact_thermal)

    logger.info(f"Sweeping {len(points)} points with {max_workers} worker(s)")
    if max_workers > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            return list(pool.map(run, points))
    return [run(point) for point in points]
