"""Shared fixtures: detector-scale defaults and the desk-scale verification setup."""

import pytest

from model.params import DetectorParams
from oracle.desk import DeskProfile, desk_params, load_desk_profiles


@pytest.fixture
def ligo():
    return DetectorParams()


@pytest.fixture
def desk_profile() -> DeskProfile:
    return load_desk_profiles()["default"]


@pytest.fixture
def desk_ground(desk_profile):
    """(params, t) of the default profile with the oscillator in its ground state."""
    return desk_params(desk_profile, 0.0)


@pytest.fixture
def desk_thermal(desk_profile):
    """(params, t) of the default profile with nbar = 1."""
    return desk_params(desk_profile, 1.0)
