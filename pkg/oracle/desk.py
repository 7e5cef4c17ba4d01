"""Desk-scale parameter profiles for brute-force verification.

A profile names target values of g, N, theta_l, theta_g and the thermal occupations
to check. desk_params() turns it into DetectorParams in units with
hbar = c = k_B = m = omega0 = 1 and an evaluation time at an odd multiple of pi / omega0,
where the photon displacement is real and theta_l takes its maximum 4 kappa g.
"""

import json
import logging
import math
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from model.params import DetectorParams, build_params
from model.phases import theta_g
from utils.errors import ParameterError

logger = logging.getLogger(__name__)

PROFILES_PATH = Path(__file__).parent / "desk_profiles.json"
MAX_DESK_G = 0.5
MAX_DESK_N = 50.0


class DeskProfile(BaseModel):
    """Target dimensionless quantities of one verification run."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    name: str = "custom"
    description: str = ""
    g: float = Field(gt=0)
    N: float = Field(ge=0)
    theta_l: float = Field(ge=0)
    theta_g: float
    nbar: List[float] = Field(default_factory=lambda: [0.0])
    omega_g_ratio: float = Field(0.5, gt=0)
    half_periods: int = Field(1, ge=1)

    @field_validator("half_periods")
    @classmethod
    def _odd(cls, value: int) -> int:
        if value % 2 == 0:
            raise ValueError("half_periods must be odd so that theta_l is at its maximum")
        return value

    @field_validator("nbar")
    @classmethod
    def _occupations(cls, value: List[float]) -> List[float]:
        if not value or any(n < 0 for n in value):
            raise ValueError("nbar must be a non-empty list of non-negative occupations")
        return value


def load_desk_profiles(path: Optional[Union[str, Path]] = None) -> Dict[str, DeskProfile]:
    """Load verification profiles from JSON.

    Args:
        path: Profile file; defaults to the packaged desk_profiles.json

    Returns:
        Mapping of profile name to DeskProfile

    Raises:
        ParameterError: If the file is missing or a profile is invalid
    """
    path = Path(path) if path else PROFILES_PATH
    try:
        with open(path, "r", encoding="utf-8") as f:
            raw = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise ParameterError(f"Cannot read desk profiles from {path}: {e}") from e

    profiles = {}
    for name, values in raw.items():
        try:
            profiles[name] = DeskProfile.model_validate({"name": name, **values})
        except ValidationError as e:
            raise ParameterError(f"Invalid desk profile '{name}': {e}") from e
    logger.debug(f"Loaded {len(profiles)} desk profiles from {path}")
    return profiles


def check_desk_scale(profile: DeskProfile):
    """Refuse profiles outside the range where brute force is meaningful."""
    if profile.g > MAX_DESK_G or profile.N > MAX_DESK_N:
        raise ParameterError(
            f"Profile '{profile.name}' is not desk scale (g={profile.g:g}, N={profile.N:g}); "
            f"the Fock-space oracle needs g <= {MAX_DESK_G} and N <= {MAX_DESK_N:g}. "
            "Detector-scale results are covered by the closed forms."
        )


def temperature_for_occupation(nbar: float) -> float:
    """Temperature giving occupation nbar in units hbar = omega0 = k_B = 1."""
    if nbar < 0:
        raise ParameterError(f"Occupation must be non-negative, got {nbar}")
    if nbar == 0:
        return 0.0
    return 1.0 / math.log1p(1.0 / nbar)


def desk_params(profile: DeskProfile, nbar: float = 0.0) -> Tuple[DetectorParams, float]:
    """Detector parameters and evaluation time realizing a profile.

    Args:
        profile: Target quantities
        nbar: Thermal occupation of the oscillator

    Returns:
        (params, t) with g, theta_l(t) and theta_g(t) at their targets

    Raises:
        ParameterError: If the drive cannot produce the requested theta_g
    """
    t = profile.half_periods * math.pi
    omega = profile.g * math.sqrt(2.0)
    kappa = profile.theta_l / (4.0 * profile.g)
    # theta_l = 0 means no radiation pressure; any finite length will do
    length = omega * math.sqrt(2.0) / kappa if kappa > 0 else 1.0e12

    values = dict(
        omega=omega,
        L=length,
        m=1.0,
        omega0=1.0,
        omega_g=profile.omega_g_ratio,
        h0=1.0,
        N=profile.N,
        I_N=1.0,
        T=temperature_for_occupation(nbar),
        t_obs=t,
        hbar=1.0,
        c=1.0,
        k_B=1.0,
    )
    unit_phase = theta_g(t, build_params(values))
    if profile.theta_g == 0:
        values["h0"] = 0.0
    elif unit_phase == 0 or profile.theta_g / unit_phase < 0:
        raise ParameterError(
            f"Drive ratio {profile.omega_g_ratio:g} cannot produce theta_g={profile.theta_g:g} "
            f"at omega0 t = {profile.half_periods} pi"
        )
    else:
        values["h0"] = profile.theta_g / unit_phase
    return build_params(values), t
