"""Closed-form output statistics for ground-state and thermal oscillator preparations."""

from closedform.laguerre import (
    generating_terms_needed,
    laguerre_eval,
    laguerre_finite_sum,
    laguerre_generating_closed,
    laguerre_generating_sum,
    laguerre_table,
)
from closedform.signal import (
    SignalStats,
    coherent_average_exact,
    coherent_average_gaussian,
    dispersion_ground,
    dispersion_thermal,
    factored_dispersion,
    mean_ground,
    mean_thermal,
    signal_mean,
    signal_second_moment,
    stats_from_phases,
)
from closedform.thermal import (
    ThermalSpec,
    gibbs_cutoff,
    gibbs_laguerre_sum,
    mean_occupation,
    quanta_exponent,
    thermal_alpha,
    thermal_spec,
    thermal_sum_direct,
)

__all__ = [
    "SignalStats",
    "ThermalSpec",
    "coherent_average_exact",
    "coherent_average_gaussian",
    "dispersion_ground",
    "dispersion_thermal",
    "factored_dispersion",
    "generating_terms_needed",
    "gibbs_cutoff",
    "gibbs_laguerre_sum",
    "laguerre_eval",
    "laguerre_finite_sum",
    "laguerre_generating_closed",
    "laguerre_generating_sum",
    "laguerre_table",
    "mean_ground",
    "mean_occupation",
    "mean_thermal",
    "quanta_exponent",
    "signal_mean",
    "signal_second_moment",
    "stats_from_phases",
    "thermal_alpha",
    "thermal_spec",
    "thermal_sum_direct",
]
