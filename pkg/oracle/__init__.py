"""Truncated Fock-space oracle for desk-scale verification of the closed forms."""

from oracle.desk import DeskProfile, check_desk_scale, desk_params, load_desk_profiles
from oracle.evolution import (
    OracleConfig,
    OracleResult,
    SectorState,
    build_oracle_config,
    evolve_sector,
    expectation,
    photon_weights,
    resolve_n_field,
)
from oracle.fock import annihilation, build_thermal_state, displacement_matrix, observable_matrices
from oracle.report import VerificationCheck, VerificationReport, run_verification

__all__ = [
    "DeskProfile",
    "OracleConfig",
    "OracleResult",
    "SectorState",
    "VerificationCheck",
    "VerificationReport",
    "annihilation",
    "build_oracle_config",
    "build_thermal_state",
    "check_desk_scale",
    "desk_params",
    "displacement_matrix",
    "evolve_sector",
    "expectation",
    "load_desk_profiles",
    "observable_matrices",
    "photon_weights",
    "resolve_n_field",
    "run_verification",
]
