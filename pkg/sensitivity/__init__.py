"""Detection condition, standard quantum limits and threshold sweeps."""

from sensitivity.sql import (
    LINEARIZED_SOLVE,
    SQL_THERMAL,
    SQL_VACUUM,
    LinearizedCondition,
    SqlResult,
    detection_margin,
    envelope_time,
    h_sql,
    h_sql_thermal,
    linearized_stats,
    solve_h_threshold_linearized,
)
from sensitivity.sweep import SweepRow, build_grid, sweep

__all__ = [
    "LINEARIZED_SOLVE",
    "SQL_THERMAL",
    "SQL_VACUUM",
    "LinearizedCondition",
    "SqlResult",
    "SweepRow",
    "build_grid",
    "detection_margin",
    "envelope_time",
    "h_sql",
    "h_sql_thermal",
    "linearized_stats",
    "solve_h_threshold_linearized",
    "sweep",
]
