"""Detector parameters and derived coupling constants."""

import logging
import math
from dataclasses import dataclass
from typing import Any, Dict

from pydantic import BaseModel, ConfigDict, Field, ValidationError
from scipy import constants

from utils.errors import ParameterError

logger = logging.getLogger(__name__)


class DetectorParams(BaseModel):
    """Physical inputs of the detector model in SI units.

    Defaults reproduce the LIGO-II parameter set: omega_g = 30 1/s, L = 4 km,
    m = 10 kg, omega = 1.8e15 1/s, with a resonant oscillator (omega0 = omega_g).
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    omega: float = Field(1.8e15, ge=0, description="optical angular frequency [1/s]")
    L: float = Field(4.0e3, gt=0, description="cavity length [m]")
    m: float = Field(10.0, gt=0, description="oscillator mass [kg]")
    omega0: float = Field(30.0, gt=0, description="oscillator eigenfrequency [1/s]")
    omega_g: float = Field(30.0, ge=0, description="gravitational-wave angular frequency [1/s]")
    h0: float = Field(5.0e-24, ge=0, description="metric-perturbation amplitude [-]")
    N: float = Field(1.0e17, ge=0, description="mean photon number [-]")
    I_N: float = Field(1.0, gt=0, description="output laser power scale")
    T: float = Field(0.0, ge=0, description="temperature [K]")
    t_obs: float = Field(1.0, ge=0, description="observation time [s]")
    hbar: float = Field(constants.hbar, gt=0)
    c: float = Field(constants.c, gt=0)
    k_B: float = Field(constants.k, gt=0)

    def with_overrides(self, **overrides: Any) -> "DetectorParams":
        """Return a validated copy with some fields replaced.

        Args:
            **overrides: Field values to replace

        Returns:
            New DetectorParams

        Raises:
            ParameterError: If a key is unknown or a value violates an invariant
        """
        return build_params({**self.model_dump(), **overrides})


def build_params(values: Dict[str, Any]) -> DetectorParams:
    """Validate a field mapping into DetectorParams.

    Args:
        values: Field name to value mapping

    Returns:
        Validated DetectorParams

    Raises:
        ParameterError: With the pydantic messages joined
    """
    try:
        return DetectorParams.model_validate(values)
    except ValidationError as e:
        details = "; ".join(
            f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in e.errors()
        )
        raise ParameterError(f"Invalid detector parameters: {details}") from e


@dataclass(frozen=True)
class DerivedCouplings:
    """Dimensionless interference coupling g and optomechanical rate kappa [1/s]."""

    g: float
    kappa: float


def derive_couplings(params: DetectorParams) -> DerivedCouplings:
    """Compute g = (omega/c) sqrt(hbar/(2 m omega0)) and kappa = (omega/L) sqrt(2 hbar/(m omega0)).

    Args:
        params: Detector parameters

    Returns:
        DerivedCouplings

    Raises:
        ParameterError: If m, omega0, L or c is not strictly positive
    """
    for name in ("m", "omega0", "L", "c"):
        if not getattr(params, name) > 0:
            raise ParameterError(f"{name} must be strictly positive, got {getattr(params, name)}")

    g = (params.omega / params.c) * math.sqrt(params.hbar / (2.0 * params.m * params.omega0))
    kappa = (params.omega / params.L) * math.sqrt(2.0 * params.hbar / (params.m * params.omega0))
    return DerivedCouplings(g=g, kappa=kappa)


def drive_amplitude(params: DetectorParams) -> float:
    """Peak of the scaled force f = F_g / sqrt(2 m omega0 hbar)."""
    force_peak = params.L * params.m * params.h0 * params.omega_g ** 2
    return force_peak / math.sqrt(2.0 * params.m * params.omega0 * params.hbar)


def thermal_ratio(params: DetectorParams, T: float) -> float:
    """kT / (hbar omega0), the thermal energy in oscillator quanta."""
    return params.k_B * T / (params.hbar * params.omega0)
