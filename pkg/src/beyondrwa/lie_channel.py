"""Single-qubit dynamical map via Lie-algebraic disentangling.

The time-local master equation splits into a coherence sector (raising and
lowering superoperators, complex coefficients eps0, eps+, eps-) and a
population sector (real coefficients nu0, nu+, nu-).  Each sector
exponentiates through a Wei-Norman product ansatz whose scalar parameters
(j+, j0, j-) and (k+, k0, k-) obey Riccati-type equations

    X+' = mu+ - mu- X+^2 + mu0 X+
    X0' = mu0 - 2 mu- X+
    X-' = mu- exp(X0)

with all parameters zero at t=0.  The physical map on a qubit density
matrix is then an overall factor e^{-Gamma_k(t)} times a linear action with
coefficients

    population:  l = e^{k0/2} + e^{-k0/2} k+ k-,   m = e^{-k0/2} k+,
                 n = e^{-k0/2},                     p = e^{-k0/2} k-
    coherence:   x = e^{j0/2} + e^{-j0/2} j+ j-,   y = e^{-j0/2} j+,
                 q = e^{-j0/2},                     r = e^{-j0/2} j-

acting as rho11 -> l rho11 + m rho00, rho10 -> x rho10 + y rho01 and their
partners.  Hermiticity of the map demands x = conj(q) and y = conj(r) up to
integration error; the raw coefficients grow like e^{+Gamma_k}, so any such
comparison must be relative.

Everything here is per-qubit.  Two-qubit evolution is the tensor square of
this map (see two_qubit).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import solve_ivp

from . import kernels
from .errors import BlowupError, GridError, ToleranceError
from .kernels import BathParams, CoefficientSet

# math.exp overflows just above 709; stay clear of it when forming e^{X0/2}
_EXP_ARG_LIMIT = 708.0

_integration_calls = 0


def integration_call_count() -> int:
    """How many times integrate() has run since the last reset."""
    return _integration_calls


def reset_integration_call_count() -> None:
    global _integration_calls
    _integration_calls = 0


@dataclass(frozen=True)
class IntegratorSettings:
    """Tolerances and step policy for the Riccati integration.

    max_step is in units of the reservoir memory time 1/gamma; the actual
    cap is additionally limited to an eighth of the counter-rotating
    oscillation half-period pi/(8 omega0) so the 2 omega0 phase is resolved.
    Set cap_step False to hand step control entirely to the error estimator.
    """

    rel_tol: float = 1e-9
    abs_tol: float = 1e-9
    max_step: float = 0.01
    blowup_threshold: float = 1e8
    cap_step: bool = True


@dataclass(frozen=True)
class DisentangleState:
    """Wei-Norman parameters of both sectors at one time.

    gamma_k carries the global decay exponent so that channel coefficients
    can be formed from this object alone.
    """

    t: float
    j_plus: complex
    j0: complex
    j_minus: complex
    k_plus: float
    k0: float
    k_minus: float
    gamma_k: float

    @classmethod
    def origin(cls) -> "DisentangleState":
        return cls(t=0.0, j_plus=0j, j0=0j, j_minus=0j,
                   k_plus=0.0, k0=0.0, k_minus=0.0, gamma_k=0.0)


@dataclass(frozen=True)
class ChannelCoefficients:
    """Raw map coefficients and decay exponent at one time.

    The physical action carries an extra factor e^{-gamma_k} on every
    element; l..y here are the bare Wei-Norman combinations, which can be
    exponentially large on their own.
    """

    t: float
    l: float
    m: float
    n: float
    p: float
    x: complex
    y: complex
    q: complex
    r: complex
    gamma_k: float

    @classmethod
    def identity(cls, t: float = 0.0) -> "ChannelCoefficients":
        return cls(t=t, l=1.0, m=0.0, n=1.0, p=0.0,
                   x=1.0 + 0j, y=0j, q=1.0 + 0j, r=0j, gamma_k=0.0)


CoefficientFn = Callable[[float, BathParams], CoefficientSet]
DecayFn = Callable[[float, BathParams], float]


def riccati_rhs(state: DisentangleState, coeffs: CoefficientSet) -> DisentangleState:
    """Time derivative of the disentangling variables at one instant.

    Packs d(field)/dt into the corresponding field of the returned object:
    the t slot is dt/dt = 1 and the gamma_k slot is the decay-exponent rate,
    which equals (nu_plus + nu_minus)/2 identically.
    """
    jp, j0 = state.j_plus, state.j0
    kp, k0 = state.k_plus, state.k0
    return DisentangleState(
        t=1.0,
        j_plus=coeffs.eps_plus - coeffs.eps_minus * jp * jp + coeffs.eps0 * jp,
        j0=coeffs.eps0 - 2.0 * coeffs.eps_minus * jp,
        j_minus=coeffs.eps_minus * np.exp(j0),
        k_plus=coeffs.nu_plus - coeffs.nu_minus * kp * kp + coeffs.nu0 * kp,
        k0=coeffs.nu0 - 2.0 * coeffs.nu_minus * kp,
        k_minus=coeffs.nu_minus * math.exp(min(k0, _EXP_ARG_LIMIT)),
        gamma_k=(coeffs.nu_plus + coeffs.nu_minus) / 2.0,
    )


def _rhs(t: float, yv: np.ndarray, p: BathParams, cfn: CoefficientFn) -> list:
    # real 9-vector: [Re j+, Im j+, Re j0, Im j0, Re j-, Im j-, k+, k0, k-]
    c = cfn(t, p)
    jp = complex(yv[0], yv[1])
    j0 = complex(yv[2], yv[3])
    kp, k0 = yv[6], yv[7]
    djp = c.eps_plus - c.eps_minus * jp * jp + c.eps0 * jp
    dj0 = c.eps0 - 2.0 * c.eps_minus * jp
    # Re j0 and k0 track -2 Gamma_k and stay negative on-solution; the cap
    # only protects wild trial steps of the error estimator from overflow
    djm = c.eps_minus * np.exp(complex(min(yv[2], _EXP_ARG_LIMIT), yv[3]))
    dkm = c.nu_minus * math.exp(min(k0, _EXP_ARG_LIMIT))
    dkp = c.nu_plus - c.nu_minus * kp * kp + c.nu0 * kp
    dk0 = c.nu0 - 2.0 * c.nu_minus * kp
    return [djp.real, djp.imag, dj0.real, dj0.imag, djm.real, djm.imag,
            dkp, dk0, dkm]


def _state_from_vector(t: float, yv: np.ndarray, gamma_k: float) -> DisentangleState:
    return DisentangleState(
        t=t,
        j_plus=complex(yv[0], yv[1]),
        j0=complex(yv[2], yv[3]),
        j_minus=complex(yv[4], yv[5]),
        k_plus=float(yv[6]),
        k0=float(yv[7]),
        k_minus=float(yv[8]),
        gamma_k=gamma_k,
    )


def integrate(
    p: BathParams,
    times: Sequence[float],
    settings: Optional[IntegratorSettings] = None,
    coefficient_fn: Optional[CoefficientFn] = None,
    decay_exponent_fn: Optional[DecayFn] = None,
) -> Tuple[DisentangleState, ...]:
    """Integrate both Riccati sectors from t=0 and sample at `times`.

    times must be strictly increasing and nonnegative.  The decay exponent
    is evaluated through its closed form rather than integrated, so swapping
    in an alternative coefficient_fn requires the matching decay_exponent_fn.

    Raises BlowupError when any disentangling variable crosses the blowup
    threshold (states for earlier sample times ride along on the exception),
    and ToleranceError when the stepper gives up.
    """
    global _integration_calls
    if settings is None:
        settings = IntegratorSettings()
    if coefficient_fn is None:
        coefficient_fn = kernels.coefficients
    if decay_exponent_fn is None:
        decay_exponent_fn = kernels.decay_exponent

    ts = np.asarray(times, dtype=float)
    if ts.ndim != 1 or ts.size == 0:
        raise GridError("times must be a nonempty 1-d sequence")
    if ts[0] < 0.0:
        raise GridError(f"times must be nonnegative, got t={ts[0]}")
    if ts.size > 1 and not np.all(np.diff(ts) > 0.0):
        raise GridError("times must be strictly increasing")

    _integration_calls += 1

    if ts[-1] == 0.0:
        return (DisentangleState.origin(),)

    threshold = settings.blowup_threshold

    def blowup_event(t, yv, *_args):
        return float(np.max(np.abs(yv))) - threshold

    blowup_event.terminal = True
    blowup_event.direction = 1.0

    kwargs = {}
    if settings.cap_step:
        kwargs["max_step"] = min(settings.max_step / p.gamma,
                                 math.pi / (8.0 * p.omega0))

    sol = solve_ivp(
        _rhs,
        (0.0, float(ts[-1])),
        np.zeros(9),
        t_eval=ts,
        args=(p, coefficient_fn),
        method="RK45",
        rtol=settings.rel_tol,
        atol=settings.abs_tol,
        events=blowup_event,
        **kwargs,
    )

    if sol.status == -1:
        raise ToleranceError(f"integration failed: {sol.message}")

    states = tuple(
        _state_from_vector(float(sol.t[i]), sol.y[:, i],
                           decay_exponent_fn(float(sol.t[i]), p))
        for i in range(sol.t.size)
    )

    if sol.status == 1:
        raise BlowupError(float(sol.t_events[0][0]), partial=states)
    return states


def channel_at(state: DisentangleState) -> ChannelCoefficients:
    """Map coefficients from the disentangling variables at one time.

    Raises OverflowError before forming e^{k0/2} or e^{Re j0 / 2} when the
    exponent would exceed float range; numpy would silently return inf here,
    so the check is explicit.
    """
    if abs(state.k0) / 2.0 > _EXP_ARG_LIMIT:
        raise OverflowError(
            f"population sector exponent k0/2 = {state.k0 / 2.0:.3g} exceeds "
            f"float range at t={state.t:.6g}"
        )
    if abs(state.j0.real) / 2.0 > _EXP_ARG_LIMIT:
        raise OverflowError(
            f"coherence sector exponent Re j0 / 2 = {state.j0.real / 2.0:.3g} "
            f"exceeds float range at t={state.t:.6g}"
        )

    ek_half = math.exp(state.k0 / 2.0)
    ek_mhalf = math.exp(-state.k0 / 2.0)
    # complex exponentials via magnitude and phase of j0/2
    mag = math.exp(state.j0.real / 2.0)
    mag_m = math.exp(-state.j0.real / 2.0)
    ph = complex(math.cos(state.j0.imag / 2.0), math.sin(state.j0.imag / 2.0))
    ej_half = mag * ph
    ej_mhalf = mag_m / ph

    return ChannelCoefficients(
        t=state.t,
        l=ek_half + ek_mhalf * state.k_plus * state.k_minus,
        m=ek_mhalf * state.k_plus,
        n=ek_mhalf,
        p=ek_mhalf * state.k_minus,
        x=ej_half + ej_mhalf * state.j_plus * state.j_minus,
        y=ej_mhalf * state.j_plus,
        q=ej_mhalf,
        r=ej_mhalf * state.j_minus,
        gamma_k=state.gamma_k,
    )


def apply_channel(coeffs: ChannelCoefficients, rho0: np.ndarray) -> np.ndarray:
    """Evolve one qubit density matrix through the map.

    rho0 is 2x2 in the (excited, ground) basis: rho0[0, 0] is the excited
    population, rho0[0, 1] the coherence <1|rho|0>.
    """
    rho0 = np.asarray(rho0, dtype=complex)
    scale = math.exp(-coeffs.gamma_k)
    out = np.empty((2, 2), dtype=complex)
    out[0, 0] = scale * (coeffs.l * rho0[0, 0] + coeffs.m * rho0[1, 1])
    out[0, 1] = scale * (coeffs.x * rho0[0, 1] + coeffs.y * rho0[1, 0])
    out[1, 0] = scale * (coeffs.q * rho0[1, 0] + coeffs.r * rho0[0, 1])
    out[1, 1] = scale * (coeffs.n * rho0[1, 1] + coeffs.p * rho0[0, 0])
    return out


def transfer_matrix(coeffs: ChannelCoefficients) -> np.ndarray:
    """4x4 matrix acting on vec(rho) = (rho11, rho10, rho01, rho00).

    Includes the e^{-gamma_k} factor, so row sums of the population block
    are trace preserving.  vec() here is the plain row-major flattening of
    the 2x2 matrix.
    """
    scale = math.exp(-coeffs.gamma_k)
    tm = np.zeros((4, 4), dtype=complex)
    tm[0, 0] = coeffs.l
    tm[0, 3] = coeffs.m
    tm[1, 1] = coeffs.x
    tm[1, 2] = coeffs.y
    tm[2, 1] = coeffs.r
    tm[2, 2] = coeffs.q
    tm[3, 0] = coeffs.p
    tm[3, 3] = coeffs.n
    return scale * tm
