"""Concurrence branches, the general spin-flip oracle, and ESD detection."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from beyondrwa.entanglement import (concurrence_general, concurrence_xstate,
                                    detect_esd)
from beyondrwa.errors import (DomainError, GridError, NegativeDiagonalError,
                              NumericalError, ShapeError)
from beyondrwa.two_qubit import BellFamilyState, initial_state


def test_bell_states_have_unit_concurrence():
    for family in ("phi", "psi"):
        rho = initial_state(BellFamilyState(family, math.sqrt(0.5)))
        res = concurrence_xstate(rho)
        assert res.value == pytest.approx(1.0, abs=1e-12)
        assert concurrence_general(rho) == pytest.approx(1.0, abs=1e-12)


def test_werner_state():
    # p |psi-><psi-| + (1-p) I/4 has concurrence (3p-1)/2 for p > 1/3
    v = np.zeros(4, dtype=complex)
    v[1], v[2] = 1.0 / math.sqrt(2.0), -1.0 / math.sqrt(2.0)
    for p, want in ((0.8, 0.7), (0.5, 0.25), (0.2, 0.0)):
        rho = p * np.outer(v, v.conj()) + (1.0 - p) * np.eye(4) / 4.0
        assert concurrence_general(rho) == pytest.approx(want, abs=1e-12)
        assert concurrence_xstate(rho).value == pytest.approx(want, abs=1e-12)


def test_product_state_is_separable():
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = 1.0
    res = concurrence_xstate(rho)
    assert res.value == 0.0
    assert res.c1 <= 0.0 and res.c2 <= 0.0
    assert concurrence_general(rho) == 0.0


@pytest.mark.parametrize("phase", [0.0, 0.4, math.pi / 2.0, 2.2, math.pi])
@pytest.mark.parametrize("family", ["phi", "psi"])
def test_initial_concurrence_ignores_phase(family, phase):
    beta = math.sqrt(0.3)
    rho = initial_state(BellFamilyState(family, beta, phase))
    want = 2.0 * beta * math.sqrt(1.0 - 0.3)
    assert concurrence_xstate(rho).value == pytest.approx(want, abs=1e-14)


def test_branch_roles_at_t_zero():
    phi = concurrence_xstate(initial_state(BellFamilyState("phi", 0.6)))
    assert phi.value == phi.c1 and phi.c2 <= 0.0
    psi = concurrence_xstate(initial_state(BellFamilyState("psi", 0.6)))
    assert psi.value == psi.c2 and psi.c1 <= 0.0


def x_state_strategy():
    # Hermitian X matrices with nonnegative diagonal, off-diagonals bounded
    # by the diagonals' geometric means so the state is positive
    diag = st.lists(st.floats(0.01, 1.0), min_size=4, max_size=4)
    fracs = st.tuples(st.floats(0.0, 1.0), st.floats(0.0, 1.0))
    phases = st.tuples(st.floats(0.0, 2.0 * math.pi),
                       st.floats(0.0, 2.0 * math.pi))

    @st.composite
    def build(draw):
        d = np.array(draw(diag))
        d = d / d.sum()
        f_in, f_out = draw(fracs)
        ph_in, ph_out = draw(phases)
        rho = np.diag(d).astype(complex)
        rho[1, 2] = f_in * math.sqrt(d[1] * d[2]) * np.exp(1j * ph_in)
        rho[2, 1] = np.conj(rho[1, 2])
        rho[0, 3] = f_out * math.sqrt(d[0] * d[3]) * np.exp(1j * ph_out)
        rho[3, 0] = np.conj(rho[0, 3])
        return rho

    return build()


@given(x_state_strategy())
@settings(max_examples=150)
def test_value_is_clamped_max_of_branches(rho):
    res = concurrence_xstate(rho)
    assert res.value == max(0.0, res.c1, res.c2)
    assert res.value >= 0.0


@given(x_state_strategy())
@settings(max_examples=150, deadline=None)
def test_general_oracle_matches_closed_form(rho):
    assert abs(concurrence_general(rho) - concurrence_xstate(rho).value) < 1e-10


def test_negative_diagonal_guard():
    rho = np.diag([0.6, 0.3, 0.3, -0.2]).astype(complex)
    with pytest.raises(NegativeDiagonalError):
        concurrence_xstate(rho)
    # transient-scale negativity is tolerated, product clamped at zero
    mild = np.diag([0.65, 0.2, 0.2, -0.05]).astype(complex)
    assert concurrence_xstate(mild).value == 0.0


def test_general_rejects_indefinite_states():
    rho = np.diag([1.1, 0.0, 0.0, -0.1]).astype(complex)
    with pytest.raises(NumericalError):
        concurrence_general(rho)


def test_shape_rejection():
    with pytest.raises(ShapeError):
        concurrence_xstate(np.eye(3))
    with pytest.raises(ShapeError):
        concurrence_general(np.eye(3))
    non_x = np.full((4, 4), 0.25)
    with pytest.raises(ShapeError):
        concurrence_xstate(non_x)


# ---------------------------------------------------------------------------
# sudden-death detection

def test_esd_constant_zero():
    rep = detect_esd([0.0, 1.0, 2.0], [0.0, 0.0, 0.0])
    assert rep.death_time == 0.0
    assert not rep.revived
    assert rep.episode_count == 0
    assert rep.max_revival == 0.0


def test_esd_never_dies():
    rep = detect_esd([0.0, 1.0, 2.0], [1.0, 0.5, 0.2])
    assert rep.death_time is None
    assert not rep.revived


def test_esd_synthetic_revivals():
    t = np.arange(8.0)
    v = [1.0, 0.5, 0.0, 0.3, 0.0, 0.2, 0.0, 0.0]
    rep = detect_esd(t, v)
    assert rep.death_time == 2.0
    assert rep.revived
    assert rep.episode_count == 2
    assert rep.max_revival == 0.3
    assert [e.peak for e in rep.episodes] == [0.3, 0.2]
    assert rep.episodes[0].t_start == 3.0
    assert rep.episodes[0].t_end == 3.0
    assert rep.episodes[1].t_peak == 5.0


def test_esd_open_ended_episode_counts():
    rep = detect_esd([0.0, 1.0, 2.0, 3.0], [1.0, 0.0, 0.5, 0.6])
    assert rep.episode_count == 1
    assert rep.episodes[0].t_end == 3.0
    assert rep.max_revival == 0.6


def test_esd_threshold_semantics():
    # exactly-at-threshold samples are neither dead nor revived
    rep = detect_esd([0.0, 1.0, 2.0, 3.0], [1.0, 0.1, 1.0, 0.1], threshold=0.1)
    assert rep.death_time is None
    rep = detect_esd([0.0, 1.0, 2.0, 3.0], [1.0, 0.05, 0.1, 0.2], threshold=0.1)
    assert rep.death_time == 1.0
    assert rep.episode_count == 1
    assert rep.episodes[0].t_start == 3.0


def test_esd_input_validation():
    with pytest.raises(GridError):
        detect_esd([0.0, 1.0], [1.0, 0.0])
    with pytest.raises(GridError):
        detect_esd([0.0, 1.0, 0.5], [1.0, 0.0, 0.0])
    with pytest.raises(GridError):
        detect_esd([0.0, 1.0, 2.0], [1.0, 0.0])
    with pytest.raises(DomainError):
        detect_esd([0.0, 1.0, 2.0], [1.0, 0.0, 0.0], threshold=0.0)


def test_esd_on_rotating_wave_curve(rwa_dense_curves):
    # damped periodic vanishing: several revivals with decreasing peaks
    curve = rwa_dense_curves[("phi", 0.5)]
    gts = np.linspace(0.0, 10.0, curve.size)
    rep = detect_esd(gts, curve)
    assert rep.death_time is not None
    assert rep.episode_count >= 2
    peaks = [e.peak for e in rep.episodes if e.peak >= 0.01]
    assert len(peaks) >= 2
    assert all(a > b for a, b in zip(peaks, peaks[1:]))
