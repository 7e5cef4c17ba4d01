"""Detector parameters, coupling constants and phase integrals."""

from model.params import (
    DerivedCouplings,
    DetectorParams,
    build_params,
    derive_couplings,
    drive_amplitude,
    thermal_ratio,
)
from model.phases import (
    RESONANCE_WINDOW,
    PhaseState,
    gravitational_force,
    interference_phase,
    is_near_resonant,
    phase_state,
    theta_g,
    theta_g_quadrature,
    theta_l,
)

__all__ = [
    "DerivedCouplings",
    "DetectorParams",
    "PhaseState",
    "RESONANCE_WINDOW",
    "build_params",
    "derive_couplings",
    "drive_amplitude",
    "gravitational_force",
    "interference_phase",
    "is_near_resonant",
    "phase_state",
    "thermal_ratio",
    "theta_g",
    "theta_g_quadrature",
    "theta_l",
]
