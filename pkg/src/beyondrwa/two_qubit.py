"""Two independent qubits in separate reservoirs: initial states and evolution.

Both qubits see identical baths, so the joint map is the tensor square of
the single-qubit channel.  The joint basis is ordered |11>, |10>, |01>, |00>
(first label = qubit A), indices 0..3.  Initial states come from two
one-parameter families of pure states,

    Phi: beta |01> + eta |10>      (one shared excitation)
    Psi: beta |00> + eta |11>      (zero or two excitations)

with beta real in (0,1) and eta = sqrt(1-beta^2) e^{i phase}.  Both families
produce X-shaped density matrices, and the X sparsity pattern is preserved
exactly by the evolution.
"""

from __future__ import annotations

from dataclasses import dataclass

import math

import numpy as np

from .errors import DomainError, ShapeError
from .lie_channel import ChannelCoefficients, transfer_matrix

# indices of the elements an X-state may populate
_X_SLOTS = ((0, 0), (1, 1), (2, 2), (3, 3), (0, 3), (1, 2), (2, 1), (3, 0))


@dataclass(frozen=True)
class BellFamilyState:
    """One member of the Phi or Psi family.

    family: "phi" or "psi"
    beta:   real amplitude, open interval (0,1)
    eta_phase: phase of the second amplitude (radians)
    """

    family: str
    beta: float
    eta_phase: float = 0.0

    def __post_init__(self):
        if self.family not in ("phi", "psi"):
            raise DomainError(f"family must be 'phi' or 'psi', got {self.family!r}")
        if not (0.0 < self.beta < 1.0):
            raise DomainError(f"beta must lie in (0,1), got {self.beta}")

    @property
    def beta2(self) -> float:
        return self.beta * self.beta

    @property
    def eta(self) -> complex:
        mag = math.sqrt(1.0 - self.beta * self.beta)
        return mag * complex(math.cos(self.eta_phase), math.sin(self.eta_phase))


def initial_state(s: BellFamilyState) -> np.ndarray:
    """Pure-state density matrix |xi><xi| in the joint basis."""
    v = np.zeros(4, dtype=complex)
    if s.family == "phi":
        v[2] = s.beta   # |01>
        v[1] = s.eta    # |10>
    else:
        v[3] = s.beta   # |00>
        v[0] = s.eta    # |11>
    return np.outer(v, v.conj())


def _pair_vec(rho: np.ndarray) -> np.ndarray:
    # reorder indices (a,b,a',b') -> (a,a',b,b') so kron(T,T) acts per qubit
    return rho.reshape(2, 2, 2, 2).transpose(0, 2, 1, 3).reshape(16)


def _pair_unvec(w: np.ndarray) -> np.ndarray:
    # the index shuffle is its own inverse
    return w.reshape(2, 2, 2, 2).transpose(0, 2, 1, 3).reshape(4, 4)


def evolve_pair(coeffs: ChannelCoefficients, rho0: np.ndarray) -> np.ndarray:
    """Evolve a joint density matrix through identical local channels.

    Authoritative route: (T x T) on the vectorized state, T the single-qubit
    transfer matrix (decay factor included, so the result carries e^{-2*gamma_k}).
    """
    rho0 = np.asarray(rho0, dtype=complex)
    if rho0.shape != (4, 4):
        raise ShapeError(f"joint state must be 4x4, got {rho0.shape}")
    tm = transfer_matrix(coeffs)
    return _pair_unvec(np.kron(tm, tm) @ _pair_vec(rho0))


def is_x_state(rho: np.ndarray, tol: float = 0.0) -> bool:
    """True when every element outside the diagonal+antidiagonal X pattern
    has magnitude <= tol."""
    rho = np.asarray(rho)
    mask = np.ones((4, 4), dtype=bool)
    for i, j in _X_SLOTS:
        mask[i, j] = False
    return bool(np.all(np.abs(rho[mask]) <= tol))


def explicit_elements(coeffs: ChannelCoefficients, rho0: np.ndarray) -> np.ndarray:
    """Element-by-element closed forms for the X-state sector.

    Cross-check surface only; evolve_pair is authoritative.  The tabulation
    is kept verbatim, including the rho22 cross weight l*m where the tensor
    square yields l*n, so the two routes differ on that single element by
    exactly (l*n - l*m) * e^{-2 gamma_k} * rho22(0).  Tests pin that gap.

    Raises ShapeError when rho0 is not an X-state.
    """
    rho0 = np.asarray(rho0, dtype=complex)
    if rho0.shape != (4, 4):
        raise ShapeError(f"joint state must be 4x4, got {rho0.shape}")
    if not is_x_state(rho0, tol=0.0):
        raise ShapeError("explicit element formulas require an exact X-state input")

    l, m, n, p = coeffs.l, coeffs.m, coeffs.n, coeffs.p
    x, y, q, r = coeffs.x, coeffs.y, coeffs.q, coeffs.r
    d11, d22, d33, d44 = rho0[0, 0], rho0[1, 1], rho0[2, 2], rho0[3, 3]
    o14, o23, o32, o41 = rho0[0, 3], rho0[1, 2], rho0[2, 1], rho0[3, 0]

    out = np.zeros((4, 4), dtype=complex)
    out[0, 0] = l * l * d11 + l * m * d22 + m * l * d33 + m * m * d44
    out[1, 1] = l * p * d11 + l * m * d22 + m * p * d33 + m * n * d44
    out[2, 2] = l * p * d11 + p * m * d22 + n * l * d33 + n * m * d44
    out[3, 3] = p * p * d11 + p * n * d22 + n * p * d33 + n * n * d44
    out[0, 3] = x * x * o14 + x * y * o23 + y * x * o32 + y * y * o41
    out[1, 2] = x * r * o14 + x * q * o23 + y * r * o32 + y * q * o41
    out[2, 1] = r * x * o14 + r * y * o23 + q * x * o32 + q * y * o41
    out[3, 0] = r * r * o14 + r * q * o23 + q * r * o32 + q * q * o41
    return math.exp(-2.0 * coeffs.gamma_k) * out
