"""Independent brute-force routes that validate the channel pipeline.

Three families of cross-checks live here:

* integrate_master_direct: the time-local master equation integrated as a
  plain matrix ODE, superoperator by superoperator, with no Wei-Norman
  structure.  Agreement with lie_channel is the central correctness check
  of the repository.
* quadrature validations of every closed-form kernel (Fourier-weighted
  quadrature for the correlation kernels, running integrals for the rest).
* the exact rotating-wave single-excitation amplitude q(t) and the channel
  built from it, used by the comparison sweeps, plus the residual of its
  defining integro-differential equation  q'(t) = -int_0^t alpha1(t-s) q(s) ds.

A truncated variant of the generator (counter-rotating coefficients dropped
at the equation level) is also provided; it is an exploratory mode, not a
validated model.
"""

from __future__ import annotations

import cmath
import math
from typing import Callable, Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import quad, solve_ivp

from . import kernels
from .errors import DomainError, GridError, ToleranceError
from .kernels import BathParams, CoefficientSet
from .lie_channel import ChannelCoefficients, IntegratorSettings

_SP = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)   # |1><0|
_SM = np.array([[0.0, 0.0], [1.0, 0.0]], dtype=complex)   # |0><1|
_SZ = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
_PE = _SP @ _SM                                            # excited projector


def _direct_rhs(t, yv, p, cfn):
    # Hermitian parameterization: [rho11, Re rho10, Im rho10, rho00];
    # rho00 is integrated on its own so trace drift stays visible
    c = cfn(t, p)
    rho = np.array([[yv[0], yv[1] + 1j * yv[2]],
                    [yv[1] - 1j * yv[2], yv[3]]], dtype=complex)
    gdot = (c.nu_plus + c.nu_minus) / 2.0
    d = (-gdot * rho
         + c.eps0 * (_SZ @ rho - rho @ _SZ) / 4.0
         + c.eps_plus * (_SP @ rho @ _SP)
         + c.eps_minus * (_SM @ rho @ _SM)
         + c.nu0 * (_PE @ rho + rho @ _PE - rho) / 2.0
         + c.nu_plus * (_SP @ rho @ _SM)
         + c.nu_minus * (_SM @ rho @ _SP))
    return [d[0, 0].real, d[0, 1].real, d[0, 1].imag, d[1, 1].real]


def integrate_master_direct(
    p: BathParams,
    rho0: np.ndarray,
    t_grid: Sequence[float],
    settings: Optional[IntegratorSettings] = None,
    coefficient_fn: Optional[Callable[[float, BathParams], CoefficientSet]] = None,
) -> Tuple[np.ndarray, ...]:
    """Integrate the master equation directly and sample at t_grid.

    Same step cap as the channel integration so both routes resolve the
    2 omega0 oscillation equally well.
    """
    if settings is None:
        settings = IntegratorSettings()
    if coefficient_fn is None:
        coefficient_fn = kernels.coefficients

    rho0 = np.asarray(rho0, dtype=complex)
    ts = np.asarray(t_grid, dtype=float)
    if ts.ndim != 1 or ts.size == 0:
        raise GridError("t_grid must be a nonempty 1-d sequence")
    if ts[0] < 0.0:
        raise GridError(f"t_grid must be nonnegative, got t={ts[0]}")
    if ts.size > 1 and not np.all(np.diff(ts) > 0.0):
        raise GridError("t_grid must be strictly increasing")

    if ts[-1] == 0.0:
        return (rho0.copy(),)

    y0 = [rho0[0, 0].real, rho0[0, 1].real, rho0[0, 1].imag, rho0[1, 1].real]
    kwargs = {}
    if settings.cap_step:
        kwargs["max_step"] = min(settings.max_step / p.gamma,
                                 math.pi / (8.0 * p.omega0))
    sol = solve_ivp(
        _direct_rhs,
        (0.0, float(ts[-1])),
        y0,
        t_eval=ts,
        args=(p, coefficient_fn),
        method="RK45",
        rtol=settings.rel_tol,
        atol=settings.abs_tol,
        **kwargs,
    )
    if sol.status != 0:
        raise ToleranceError(f"direct integration failed: {sol.message}")

    out = []
    for i in range(sol.t.size):
        r11, re10, im10, r00 = sol.y[:, i]
        out.append(np.array([[r11, re10 + 1j * im10],
                             [re10 - 1j * im10, r00]], dtype=complex))
    return tuple(out)


# ---------------------------------------------------------------------------
# rotating-wave reference

def rwa_amplitude(t: float, p: BathParams) -> complex:
    """Exact single-excitation amplitude of the rotating-wave model.

    q(t) = e^{-gamma t/2} [cos(d t/2) + (gamma/d) sin(d t/2)] with
    d = sqrt(2 lam gamma - gamma^2); continues through hyperbolic d for
    weak coupling.  Real-valued for real parameters.
    """
    g = p.gamma
    d = cmath.sqrt(complex(2.0 * p.lam * g - g * g))
    env = math.exp(-g * t / 2.0)
    if abs(d) < 1e-12:
        # critically damped limit: sin(dt/2)/d -> t/2
        return complex(env * (1.0 + g * t / 2.0))
    return env * (cmath.cos(d * t / 2.0) + (g / d) * cmath.sin(d * t / 2.0))


def rwa_amplitude_rate(t: float, p: BathParams) -> complex:
    """Closed-form dq/dt; collapses to -(lam gamma/d) e^{-gamma t/2} sin(dt/2)."""
    g = p.gamma
    d = cmath.sqrt(complex(2.0 * p.lam * g - g * g))
    env = math.exp(-g * t / 2.0)
    if abs(d) < 1e-12:
        return complex(-p.lam * g * env * t / 2.0)
    return -(p.lam * g / d) * env * cmath.sin(d * t / 2.0)


def rwa_first_zero(p: BathParams) -> float:
    """First root of q(t); exists only in the oscillatory regime.

    tan(d t/2) = -d/gamma first holds at t = 2 (pi - arctan(d/gamma))/d.
    """
    disc = 2.0 * p.lam * p.gamma - p.gamma**2
    if disc <= 0.0:
        raise DomainError("amplitude has no zero when 2 lam gamma <= gamma^2")
    d = math.sqrt(disc)
    return 2.0 * (math.pi - math.atan(d / p.gamma)) / d


def rwa_channel(t: float, p: BathParams) -> ChannelCoefficients:
    """Package q(t) as channel coefficients for the shared two-qubit pipeline.

    Trace preserving exactly: l + p = 1 and m + n = 1 by construction, with
    gamma_k = 0 since no global decay factor is split off.
    """
    qa = rwa_amplitude(t, p)
    pop = abs(qa) ** 2
    return ChannelCoefficients(
        t=t, l=pop, m=0.0, n=1.0, p=1.0 - pop,
        x=qa, y=0j, q=qa.conjugate(), r=0j, gamma_k=0.0,
    )


def rwa_residual(p: BathParams, t_grid: Sequence[float]) -> float:
    """Max deviation of q(t) from its defining memory-kernel equation.

    Evaluates | q'(t) + int_0^t alpha1(t-s) q(s) ds | over the grid, with
    the convolution done by adaptive quadrature against the closed-form q.
    """
    worst = 0.0
    for t in np.asarray(t_grid, dtype=float):
        if t == 0.0:
            conv = 0.0
        else:
            conv, _ = quad(
                lambda s, tt=t: (kernels.alpha1(tt - s, p)
                                 * rwa_amplitude(s, p)).real,
                0.0, t, limit=400, epsabs=1e-12, epsrel=1e-12,
            )
        worst = max(worst, abs(rwa_amplitude_rate(t, p) + conv))
    return worst


# ---------------------------------------------------------------------------
# quadrature validation of the closed-form kernels

def spectral_integral(p: BathParams) -> float:
    """Numerical total weight of the coupling spectrum (analytically lam gamma/2)."""
    val, _ = quad(lambda u: kernels.spectral_density(u + p.omega0, p),
                  -np.inf, np.inf, limit=400)
    return val


def _lorentzian_core(t: float, p: BathParams) -> float:
    # 2 int_0^inf L(u) cos(ut) du for the even shifted spectrum L
    lor = lambda u: (p.lam * p.gamma**2 / (2.0 * math.pi)) / (u * u + p.gamma**2)
    if t == 0.0:
        val, _ = quad(lor, 0.0, np.inf, limit=800, epsabs=1e-12, epsrel=1e-12)
    else:
        val, _ = quad(lor, 0.0, np.inf, weight="cos", wvar=t, limit=800,
                      epsabs=1e-12, epsrel=1e-12)
    return 2.0 * val


def alpha1_quadrature(t: float, p: BathParams) -> complex:
    """Fourier integral of J against e^{-i(w-w0)t}; the sine part vanishes
    by parity, leaving a cosine-weighted half-line integral."""
    return complex(_lorentzian_core(t, p))


def alpha2_quadrature(t: float, p: BathParams) -> complex:
    """Fourier integral of J against e^{+i(w+w0)t} = e^{2i w0 t} x the
    same even core as alpha1."""
    return cmath.exp(2j * p.omega0 * t) * _lorentzian_core(t, p)


def alpha_quadrature(t: float, p: BathParams) -> complex:
    """Running integral of the normalized counter-rotating kernel, done as
    oscillatory-weighted quadrature of the bare exponential."""
    if t == 0.0:
        return 0j
    env = lambda s: math.exp(-p.gamma * s)
    w = 2.0 * p.omega0
    re, _ = quad(env, 0.0, t, weight="cos", wvar=w, limit=2000,
                 epsabs=1e-13, epsrel=1e-13)
    im, _ = quad(env, 0.0, t, weight="sin", wvar=w, limit=2000,
                 epsabs=1e-13, epsrel=1e-13)
    return complex(re, -im)


def alpha_tilde_quadrature(t: float, p: BathParams, s_lower: float = 0.0) -> complex:
    """int_{s_lower}^{t} alpha(s) ds by adaptive quadrature of the closed-form
    alpha (itself pinned by alpha_quadrature)."""
    re, _ = quad(lambda s: kernels.alpha(s, p).real, s_lower, t,
                 limit=20000, epsabs=1e-12, epsrel=1e-12)
    im, _ = quad(lambda s: kernels.alpha(s, p).imag, s_lower, t,
                 limit=20000, epsabs=1e-12, epsrel=1e-12)
    return complex(re, im)


def decay_exponent_quadrature(t: float, p: BathParams) -> float:
    """Defining integral of Gamma_k, with the alpha^R and f parts integrated
    separately so neither term's roundoff hides the other's."""
    i1, _ = quad(lambda s: kernels.alpha(s, p).real, 0.0, t,
                 limit=20000, epsabs=1e-12, epsrel=1e-12)
    i2, _ = quad(lambda s: kernels.f(s, p), 0.0, t,
                 limit=2000, epsabs=1e-12, epsrel=1e-12)
    return p.lam * (p.gamma * i1 + i2) / 2.0


# ---------------------------------------------------------------------------
# truncated generator (exploratory, no accuracy claims)

def truncated_coefficients(t: float, p: BathParams) -> CoefficientSet:
    """Generator with every counter-rotating contribution removed.

    Only the alpha1-driven decay survives: nu_minus = lam f(t), no upward
    pumping, no coherence coupling to the conjugate, bare 2 omega0 rotation.
    """
    ft = kernels.f(t, p)
    return CoefficientSet(
        eps0=-2j * p.omega0,
        eps_plus=0j,
        eps_minus=0j,
        nu0=-p.lam * ft,
        nu_plus=0.0,
        nu_minus=p.lam * ft,
    )


def truncated_decay_exponent(t: float, p: BathParams) -> float:
    """Decay exponent matching truncated_coefficients: (lam/2) F(t)."""
    return p.lam * kernels.big_f(t, p) / 2.0
