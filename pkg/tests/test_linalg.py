"""Core linear algebra: exact propagators, RK4, tensor products, fidelity."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aagates.errors import ModelError, NumericalError
from aagates.linalg import (
    SIGMA_X,
    Operator,
    StateVector,
    gate_fidelity,
    propagator_constant,
    rk4_evolve,
    tensor,
    unitarity_defect,
    wrap_angle,
)
from aagates.models import build_rotating_two_level

RABI = 0.02  # rad/fs


def random_hermitian(rng: np.random.Generator, dim: int, scale: float = 0.05) -> np.ndarray:
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return scale * (a + a.conj().T)


# ---------------------------------------------------------------------------
# propagator_constant
# ---------------------------------------------------------------------------

def test_zero_hamiltonian_gives_identity():
    u = propagator_constant(np.zeros((2, 2)), 123.4)
    assert np.allclose(u, np.eye(2), atol=1e-14)


def test_half_period_rabi_rotation_is_minus_i_sigma_x():
    h = RABI * SIGMA_X
    t = math.pi / (2 * RABI)
    u = propagator_constant(h, t)
    assert np.allclose(u, -1j * SIGMA_X, atol=1e-12)


def test_tilted_field_propagator_against_rk4_oracle():
    # B = (rabi, 0, rabi): rotation by pi about (1,0,1)/sqrt(2)
    h = build_rotating_two_level(RABI, 0.0, 2 * RABI)
    t = math.pi / (2 * math.hypot(RABI, RABI))
    u_exact = propagator_constant(h, t)
    for k in range(2):
        psi0 = np.zeros(2, complex)
        psi0[k] = 1.0
        psi_rk4 = rk4_evolve(lambda _t: h, psi0, 0.0, t, t / 10_000).state
        assert np.max(np.abs(u_exact[:, k] - psi_rk4)) <= 1e-8


def test_non_hermitian_input_rejected():
    with pytest.raises(ModelError):
        propagator_constant(np.array([[0, 1], [0, 0]], dtype=complex), 1.0)


def test_negative_time_rejected():
    with pytest.raises(ValueError):
        propagator_constant(np.zeros((2, 2)), -1.0)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from([2, 3, 4]), st.floats(0.0, 200.0))
def test_propagator_unitarity(seed, dim, t):
    h = random_hermitian(np.random.default_rng(seed), dim)
    u = propagator_constant(h, t)
    assert unitarity_defect(u) <= 1e-9


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1), st.floats(1.0, 80.0), st.floats(1.0, 80.0))
def test_propagator_composition(seed, t1, t2):
    h = random_hermitian(np.random.default_rng(seed), 3)
    u12 = propagator_constant(h, t1 + t2)
    u_composed = propagator_constant(h, t2) @ propagator_constant(h, t1)
    assert np.max(np.abs(u12 - u_composed)) <= 1e-9


# ---------------------------------------------------------------------------
# rk4_evolve
# ---------------------------------------------------------------------------

def test_rk4_zero_hamiltonian_keeps_state():
    psi0 = np.array([0.6, 0.8j])
    result = rk4_evolve(lambda _t: np.zeros((2, 2)), psi0, 0.0, 50.0, 0.1)
    assert np.allclose(result.state, psi0, atol=1e-14)
    assert result.norm_drift <= 1e-15


def test_rk4_matches_exact_propagator():
    h = RABI * SIGMA_X
    t = math.pi / (2 * RABI)
    psi0 = np.array([1.0, 0.0], dtype=complex)
    expected = propagator_constant(h, t) @ psi0
    got = rk4_evolve(lambda _t: h, psi0, 0.0, t, t / 2000).state
    assert np.max(np.abs(expected - got)) <= 1e-8


def test_rk4_fourth_order_convergence():
    h = RABI * SIGMA_X
    t = math.pi / (2 * RABI)
    psi0 = np.array([1.0, 0.0], dtype=complex)
    exact = propagator_constant(h, t) @ psi0

    def error(n_steps):
        got = rk4_evolve(lambda _t: h, psi0, 0.0, t, t / n_steps).state
        return np.max(np.abs(got - exact))

    ratio = error(40) / error(80)
    order = math.log2(ratio)
    assert 3.5 <= order <= 4.5


def test_rk4_norm_drift_policy():
    # far too coarse a step for a stiff generator: drift must raise, not hide
    h = 50.0 * SIGMA_X
    psi0 = np.array([1.0, 0.0], dtype=complex)
    with pytest.raises(NumericalError):
        rk4_evolve(lambda _t: h, psi0, 0.0, 10.0, 0.5)


def test_rk4_norm_drift_small_for_sane_steps():
    h = build_rotating_two_level(RABI, 0.3, 0.01)
    psi0 = np.array([1.0, 0.0], dtype=complex)
    result = rk4_evolve(lambda _t: h, psi0, 0.0, 500.0, 0.25)
    assert result.norm_drift <= 1e-6
    assert abs(np.linalg.norm(result.state) - 1.0) <= 1e-9


# ---------------------------------------------------------------------------
# tensor
# ---------------------------------------------------------------------------

def test_tensor_identities():
    assert np.allclose(tensor(np.eye(2), np.eye(2)), np.eye(4))


def test_tensor_single_raising_entry():
    raise_op = np.array([[0, 1], [0, 0]], dtype=complex)  # |E><G| with E first
    both = tensor(raise_op, raise_op)
    expected = np.zeros((4, 4))
    expected[0, 3] = 1.0  # maps |GG> (last) to |EE> (first) in this ordering
    assert np.allclose(both, expected)


def test_tensor_mixed_product_property():
    rng = np.random.default_rng(7)
    a, b, c, d = (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)) for _ in range(4))
    lhs = tensor(a, b) @ tensor(c, d)
    rhs = tensor(a @ c, b @ d)
    assert np.max(np.abs(lhs - rhs)) <= 1e-12


def test_tensor_sigma_x_pair_swaps_gg_to_ee():
    gg = np.array([0, 0, 0, 1.0], dtype=complex)  # (EE, EG, GE, GG) ordering
    out = tensor(SIGMA_X, SIGMA_X) @ gg
    assert np.allclose(out, [1, 0, 0, 0])


# ---------------------------------------------------------------------------
# gate_fidelity
# ---------------------------------------------------------------------------

def test_fidelity_of_equal_unitaries():
    u = propagator_constant(random_hermitian(np.random.default_rng(3), 2), 10.0)
    assert gate_fidelity(u, u) == pytest.approx(1.0, abs=1e-12)


@settings(max_examples=40, deadline=None)
@given(st.floats(-math.pi, math.pi))
def test_fidelity_global_phase_invariance(theta):
    u = np.eye(2, dtype=complex)
    assert gate_fidelity(u, np.exp(1j * theta) * u) == pytest.approx(1.0, abs=1e-12)


def test_fidelity_orthogonal_gates():
    assert gate_fidelity(np.eye(2, dtype=complex), SIGMA_X) == pytest.approx(0.0, abs=1e-14)


def test_fidelity_dimension_mismatch():
    with pytest.raises(ModelError):
        gate_fidelity(np.eye(2), np.eye(4))


# ---------------------------------------------------------------------------
# wrappers and small types
# ---------------------------------------------------------------------------

def test_state_vector_normalizes_and_rejects():
    sv = StateVector(np.array([1.0 + 1e-8, 0.0]))
    assert np.linalg.norm(sv.amplitudes) == pytest.approx(1.0, abs=1e-15)
    with pytest.raises(ModelError):
        StateVector(np.array([2.0, 0.0]))
    with pytest.raises(ModelError):
        StateVector(np.array([np.nan, 0.0]))


def test_operator_tag_validation():
    op = Operator(SIGMA_X, hermitian=True, unitary=True)
    op.validate()
    bad = Operator(np.array([[0, 1], [0.5, 0]], dtype=complex), hermitian=True)
    with pytest.raises(ModelError):
        bad.validate()


def test_wrap_angle_principal_interval():
    assert wrap_angle(math.pi) == pytest.approx(math.pi)
    assert wrap_angle(-math.pi) == pytest.approx(math.pi)
    assert wrap_angle(3 * math.pi / 2) == pytest.approx(-math.pi / 2)
    assert wrap_angle(0.3) == pytest.approx(0.3)
