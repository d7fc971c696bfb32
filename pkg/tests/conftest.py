"""Shared fixtures: channel integrations are expensive, so each preset is
integrated once per session and every test reads from the bank."""

import math
from typing import NamedTuple, Tuple

import numpy as np
import pytest

from beyondrwa import lie_channel, oracle
from beyondrwa.cli import PRESETS
from beyondrwa.entanglement import concurrence_xstate
from beyondrwa.two_qubit import BellFamilyState, evolve_pair, initial_state

GAMMA_T_GRID = np.linspace(0.0, 10.0, 201)

# touching-zero detection on the rotating-wave curves needs samples inside
# below-threshold windows only ~1e-3 wide
DENSE_GAMMA_T = np.linspace(0.0, 10.0, 40001)


class BankEntry(NamedTuple):
    params: object
    times: np.ndarray
    states: Tuple
    coeffs: Tuple


@pytest.fixture(scope="session")
def channel_bank():
    bank = {}
    for name in ("A", "B", "C"):
        p = PRESETS[name].params
        times = GAMMA_T_GRID / p.gamma
        states = lie_channel.integrate(p, times)
        coeffs = tuple(lie_channel.channel_at(s) for s in states)
        bank[name] = BankEntry(p, times, states, coeffs)
    return bank


def concurrence_curve(coeffs, family: str, beta2: float, phase: float = 0.0):
    rho0 = initial_state(BellFamilyState(family, math.sqrt(beta2), phase))
    return np.array([concurrence_xstate(evolve_pair(cf, rho0)).value
                     for cf in coeffs])


@pytest.fixture(scope="session")
def rwa_dense_curves():
    """Concurrence of the rotating-wave channel on the dense grid, for the
    two configurations the shape checks care about."""
    p = PRESETS["RWA"].params
    coeffs = [oracle.rwa_channel(t, p) for t in DENSE_GAMMA_T / p.gamma]
    return {
        ("phi", 0.5): concurrence_curve(coeffs, "phi", 0.5),
        ("psi", 0.25): concurrence_curve(coeffs, "psi", 0.25),
    }
