"""Dense complex linear algebra for small quantum systems.

Exact propagators for constant hermitian Hamiltonians (spectral form),
a fixed-step RK4 integrator for time-dependent ones, Kronecker products
and a global-phase-invariant gate fidelity.

Units: hbar = 1, time in femtoseconds, angular frequencies in rad/fs.
All matrices are plain ``numpy.ndarray`` with dtype complex128; dimensions
stay small (<= 16 enforced nowhere, expected <= 4).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .errors import ModelError, NumericalError

HERMITIAN_TOL = 1e-12
UNITARY_TOL = 1e-9
NORM_DRIFT_TOL = 1e-6

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
PAULI = (SIGMA_X, SIGMA_Y, SIGMA_Z)


def wrap_angle(theta: float) -> float:
    """Wrap an angle to the principal interval (-pi, pi]."""
    wrapped = math.remainder(theta, 2.0 * math.pi)
    if wrapped <= -math.pi:
        wrapped += 2.0 * math.pi
    return wrapped


def require_finite(a: np.ndarray, what: str = "array") -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    if not np.all(np.isfinite(a.view(float))):
        raise ModelError(f"{what} contains NaN or Inf entries")
    return a


def hermiticity_defect(h: np.ndarray) -> float:
    """Max absolute deviation of ``h`` from its conjugate transpose."""
    h = np.asarray(h, dtype=complex)
    return float(np.max(np.abs(h - h.conj().T)))


def require_hermitian(h: np.ndarray, tol: float = HERMITIAN_TOL) -> np.ndarray:
    h = require_finite(h, "Hamiltonian")
    defect = hermiticity_defect(h)
    if defect > tol:
        raise ModelError(f"matrix is not hermitian: max |H - H^dag| = {defect:.3e} > {tol:.1e}")
    return h


def unitarity_defect(u: np.ndarray) -> float:
    """Max absolute deviation of ``u^dag u`` from identity."""
    u = np.asarray(u, dtype=complex)
    return float(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))))


def require_unitary(u: np.ndarray, tol: float = UNITARY_TOL) -> np.ndarray:
    u = require_finite(u, "operator")
    defect = unitarity_defect(u)
    if defect > tol:
        raise ModelError(f"matrix is not unitary: max |U^dag U - I| = {defect:.3e} > {tol:.1e}")
    return u


@dataclass(frozen=True)
class StateVector:
    """Normalized complex amplitude vector of a d-level system.

    The constructor accepts anything within 1e-6 of unit norm and stores
    the exactly renormalized amplitudes; anything further off is treated
    as a caller bug, not a state.
    """

    amplitudes: np.ndarray

    def __post_init__(self):
        a = require_finite(self.amplitudes, "state vector").reshape(-1)
        norm = float(np.linalg.norm(a))
        if abs(norm - 1.0) > NORM_DRIFT_TOL:
            raise ModelError(f"state vector norm {norm:.9f} is not 1 within {NORM_DRIFT_TOL:.0e}")
        object.__setattr__(self, "amplitudes", a / norm)

    @classmethod
    def basis(cls, dim: int, index: int) -> "StateVector":
        a = np.zeros(dim, dtype=complex)
        a[index] = 1.0
        return cls(a)

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    def __array__(self, dtype=None):
        return np.asarray(self.amplitudes, dtype=dtype)


@dataclass(frozen=True)
class Operator:
    """Square complex matrix with advisory hermitian/unitary tags.

    Tags are not trusted: ``validate`` re-checks them on demand against
    the standard tolerances.
    """

    matrix: np.ndarray
    hermitian: bool | None = None
    unitary: bool | None = None

    def __post_init__(self):
        m = require_finite(self.matrix, "operator")
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ModelError(f"operator must be square, got shape {m.shape}")
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def validate(self) -> None:
        if self.hermitian:
            require_hermitian(self.matrix)
        if self.unitary:
            require_unitary(self.matrix)

    def __array__(self, dtype=None):
        return np.asarray(self.matrix, dtype=dtype)


def propagator_constant(h: np.ndarray, t: float) -> np.ndarray:
    """Exact propagator U = exp(-i H t) for a constant hermitian H.

    Uses the spectral decomposition of H rather than a series expansion,
    so unitarity holds to machine precision for the small dimensions used
    here.
    """
    h = require_hermitian(h, tol=HERMITIAN_TOL)
    if t < 0:
        raise ValueError(f"propagation time must be >= 0, got {t}")
    try:
        w, v = np.linalg.eigh(h)
    except np.linalg.LinAlgError as exc:
        cond = float(np.linalg.cond(h)) if np.any(h) else float("inf")
        raise NumericalError(f"eigendecomposition failed (cond ~ {cond:.3e}): {exc}") from exc
    u = (v * np.exp(-1j * w * t)) @ v.conj().T
    defect = unitarity_defect(u)
    if defect > UNITARY_TOL:
        raise NumericalError(f"propagator unitarity defect {defect:.3e} exceeds {UNITARY_TOL:.0e}")
    return u


class RK4Result(NamedTuple):
    state: np.ndarray
    norm_drift: float
    steps: int


def _rk4_step(h_of_t: Callable[[float], np.ndarray], psi: np.ndarray, t: float, dt: float) -> np.ndarray:
    h0 = h_of_t(t)
    h_mid = h_of_t(t + 0.5 * dt)
    h1 = h_of_t(t + dt)
    k1 = -1j * (h0 @ psi)
    k2 = -1j * (h_mid @ (psi + 0.5 * dt * k1))
    k3 = -1j * (h_mid @ (psi + 0.5 * dt * k2))
    k4 = -1j * (h1 @ (psi + dt * k3))
    return psi + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def rk4_evolve(
    h_of_t: Callable[[float], np.ndarray],
    psi0: np.ndarray,
    t0: float,
    t1: float,
    dt: float,
) -> RK4Result:
    """Integrate i dpsi/dt = H(t) psi with the classic fixed-step RK4.

    The step is shrunk uniformly so an integer number of steps lands
    exactly on ``t1``.  The final state is renormalized only when the raw
    norm drift stays within 1e-6; larger drift indicates the step size is
    too coarse and raises instead of being silently hidden.
    """
    if dt <= 0:
        raise ValueError(f"dt must be positive, got {dt}")
    if t1 < t0:
        raise ValueError(f"t1 must be >= t0, got [{t0}, {t1}]")
    psi = np.array(psi0, dtype=complex).reshape(-1)
    span = t1 - t0
    if span == 0.0:
        return RK4Result(psi, 0.0, 0)
    n_steps = max(1, int(math.ceil(span / dt - 1e-12)))
    h = span / n_steps
    # Hermiticity is a caller contract; spot-check a few sample times.
    for t_check in (t0, t0 + 0.5 * span, t1):
        require_hermitian(h_of_t(t_check), tol=HERMITIAN_TOL)
    for k in range(n_steps):
        psi = _rk4_step(h_of_t, psi, t0 + k * h, h)
    norm = float(np.linalg.norm(psi))
    drift = abs(norm - 1.0)
    if drift > NORM_DRIFT_TOL:
        raise NumericalError(
            f"norm drift {drift:.3e} exceeds {NORM_DRIFT_TOL:.0e}; decrease dt below {dt:g}"
        )
    return RK4Result(psi / norm, drift, n_steps)


def tensor(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product, (A tensor B) acting on the composite system."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def gate_fidelity(u: np.ndarray, v: np.ndarray) -> float:
    """Global-phase-invariant overlap |Tr(U^dag V)| / d of two unitaries."""
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    if u.shape != v.shape:
        raise ModelError(f"dimension mismatch: {u.shape} vs {v.shape}")
    d = u.shape[0]
    return float(abs(np.trace(u.conj().T @ v)) / d)
