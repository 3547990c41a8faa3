"""Hamiltonian builders for the driven exciton-qubit level schemes.

Basis orders are fixed here and relied on everywhere downstream:

* two-level:      (|E>, |G>)
* biexciton:      (|GG>, |GE>, |EG>, |EE>)
* polarized:      (|E+>, |E->, |G>)

Conventions
-----------
The rotating two-level Hamiltonian follows the effective-field form
H = B . sigma with B = (rabi cos(phase), rabi sin(phase), detuning / 2),
i.e. <E|H|G> = rabi * exp(-i phase).  The lab-frame builder keeps the
explicit minus sign on the coupling, so transforming a lab trajectory
into the rotating frame reproduces the B-field form with the phase
shifted by pi.  Gates depend only on phase differences, which are the
same in both conventions.

Biexciton scheme: ``delta`` is the detuning of the single-exciton
intermediate states from each laser when the pair of lasers sits at the
two-photon resonance.  The dipole shift of |EE> is then 2*delta and the
resonant laser frequency is omega0 + delta.  With this parameterization
the effective two-photon coupling is 2*rabi^2/delta and the peak
single-exciton population is bounded by 4*(rabi/delta)^2.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import ModelError, ValidityError
from .linalg import PAULI, wrap_angle

TWO_LEVEL_BASIS = ("E", "G")
BIEXCITON_BASIS = ("GG", "GE", "EG", "EE")
RAMAN_BASIS = ("E+", "E-", "G")


# ---------------------------------------------------------------------------
# single exciton qubit (|E>, |G>)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TwoLevelParams:
    """Laser drive of a single G <-> E transition.

    omega0       transition angular frequency (rad/fs), > 0
    omega_laser  laser angular frequency (rad/fs)
    rabi         coupling strength Omega >= 0 (rad/fs)
    phase        laser phase (rad), stored wrapped to (-pi, pi]
    """

    omega0: float
    omega_laser: float
    rabi: float
    phase: float = 0.0

    def __post_init__(self):
        if self.omega0 <= 0:
            raise ModelError(f"omega0 must be positive, got {self.omega0}")
        if self.rabi < 0:
            raise ModelError(f"rabi must be >= 0, got {self.rabi}")
        object.__setattr__(self, "phase", wrap_angle(self.phase))

    @property
    def detuning(self) -> float:
        return self.omega0 - self.omega_laser


def bloch_field(rabi: float, phase: float, detuning: float) -> np.ndarray:
    """Effective-field vector B = (rabi cos phase, rabi sin phase, detuning/2)."""
    return np.array([rabi * np.cos(phase), rabi * np.sin(phase), 0.5 * detuning])


def build_rotating_two_level(rabi: float, phase: float = 0.0, detuning: float = 0.0) -> np.ndarray:
    """Rotating-frame drive Hamiltonian B . sigma (traceless, eigenvalues +-|B|)."""
    if rabi < 0:
        raise ModelError(f"rabi must be >= 0, got {rabi}")
    b = bloch_field(rabi, phase, detuning)
    return b[0] * PAULI[0] + b[1] * PAULI[1] + b[2] * PAULI[2]


def build_lab_two_level(params: TwoLevelParams) -> Callable[[float], np.ndarray]:
    """Full lab-frame Hamiltonian H0 + H_int(t) in the (|E>, |G>) basis.

    H0 = diag(omega0/2, -omega0/2); the coupling is
    -[rabi * exp(-i(omega_laser t + phase)) |E><G| + h.c.].
    """
    w0, wl = params.omega0, params.omega_laser
    rabi, phi = params.rabi, params.phase

    def hamiltonian(t: float) -> np.ndarray:
        coupling = -rabi * np.exp(-1j * (wl * t + phi))
        return np.array(
            [[0.5 * w0, coupling], [np.conj(coupling), -0.5 * w0]], dtype=complex
        )

    return hamiltonian


def frame_rotate(psi_lab: np.ndarray, omega_laser: float, t: float) -> np.ndarray:
    """Map two-level lab-frame amplitudes into the frame precessing at the laser.

    Applies diag(exp(+i omega_laser t / 2), exp(-i omega_laser t / 2)); the
    inverse is ``frame_rotate(psi, -omega_laser, t)``.  Norm is preserved
    exactly.
    """
    psi = np.asarray(psi_lab, dtype=complex).reshape(-1)
    if psi.shape[0] != 2:
        raise ModelError(f"frame_rotate expects a two-level state, got dim {psi.shape[0]}")
    half = 0.5 * omega_laser * t
    return np.array([np.exp(1j * half) * psi[0], np.exp(-1j * half) * psi[1]])


# ---------------------------------------------------------------------------
# coupled dots with a biexciton shift (|GG>, |GE>, |EG>, |EE>)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LaserDrive:
    """One laser: coupling strength, phase, angular frequency (all rad-based)."""

    rabi: float = 0.0
    phase: float = 0.0
    frequency: float = 0.0

    def __post_init__(self):
        if self.rabi < 0:
            raise ModelError(f"rabi must be >= 0, got {self.rabi}")
        object.__setattr__(self, "phase", wrap_angle(self.phase))


def two_photon_resonance(omega0: float, delta: float) -> float:
    """Laser frequency that makes GG <-> EE a resonant two-photon transition.

    Half the GG -> EE gap: with |EE> shifted by 2*delta above the bare
    two-exciton energy this is omega0 + delta, leaving both single-photon
    steps detuned by delta.
    """
    return omega0 + delta


@dataclass(frozen=True)
class BiexcitonParams:
    """Two coupled dots, one laser per dot.

    omega0  bare single-dot transition frequency (rad/fs)
    delta   detuning of the single-exciton intermediates at two-photon
            resonance (rad/fs); the |EE> dipole shift is 2*delta
    laser1  drives dot 1 (first letter of the basis labels)
    laser2  drives dot 2
    """

    omega0: float
    delta: float
    laser1: LaserDrive = field(default_factory=LaserDrive)
    laser2: LaserDrive = field(default_factory=LaserDrive)

    def __post_init__(self):
        if self.omega0 <= 0:
            raise ModelError(f"omega0 must be positive, got {self.omega0}")
        if self.delta < 0:
            raise ModelError(f"delta must be >= 0, got {self.delta}")

    @classmethod
    def resonant(
        cls,
        omega0: float,
        delta: float,
        rabi: float,
        phase1: float = 0.0,
        phase2: float = 0.0,
    ) -> "BiexcitonParams":
        """Equal-strength lasers parked at the two-photon resonance."""
        freq = two_photon_resonance(omega0, delta)
        return cls(
            omega0=omega0,
            delta=delta,
            laser1=LaserDrive(rabi, phase1, freq),
            laser2=LaserDrive(rabi, phase2, freq),
        )

    @property
    def validity_ratio(self) -> float:
        """max(rabi)/delta; the two-photon picture needs this << 1."""
        top = max(self.laser1.rabi, self.laser2.rabi)
        return float("inf") if self.delta == 0 else top / self.delta


def biexciton_diagonal(omega0: float, delta: float) -> np.ndarray:
    """Free energies (-omega0, 0, 0, omega0 + 2*delta) in the fixed basis order."""
    return np.array([-omega0, 0.0, 0.0, omega0 + 2.0 * delta])


# raising operator of each dot in the (GG, GE, EG, EE) basis
_RAISE_DOT1 = np.zeros((4, 4), dtype=complex)
_RAISE_DOT1[2, 0] = 1.0  # |EG><GG|
_RAISE_DOT1[3, 1] = 1.0  # |EE><GE|
_RAISE_DOT2 = np.zeros((4, 4), dtype=complex)
_RAISE_DOT2[1, 0] = 1.0  # |GE><GG|
_RAISE_DOT2[3, 2] = 1.0  # |EE><EG|


def build_biexciton_full(params: BiexcitonParams) -> Callable[[float], np.ndarray]:
    """Lab-frame 4-level Hamiltonian with both single-photon couplings kept.

    Laser i drives dot i's G <-> E transition with its own rabi, phase and
    frequency.  Suppression of the single-exciton states is something this
    model predicts, not something built in.
    """
    diag = np.diag(biexciton_diagonal(params.omega0, params.delta)).astype(complex)
    l1, l2 = params.laser1, params.laser2

    def hamiltonian(t: float) -> np.ndarray:
        c1 = -l1.rabi * np.exp(-1j * (l1.frequency * t + l1.phase))
        c2 = -l2.rabi * np.exp(-1j * (l2.frequency * t + l2.phase))
        h_int = c1 * _RAISE_DOT1 + c2 * _RAISE_DOT2
        return diag + h_int + h_int.conj().T

    return hamiltonian


def build_biexciton_rotating(params: BiexcitonParams) -> np.ndarray:
    """Static 4-level Hamiltonian in the frame rotating at the laser frequency.

    Requires both lasers at the same frequency (the configuration used for
    the conditional gate).  Diagonal: GG and EE sit at ``detuning_2ph``
    relative to the singles, where detuning_2ph = delta at exact two-photon
    resonance; couplings are -rabi_i * exp(-i phase_i) on each dot's raising
    operator.
    """
    l1, l2 = params.laser1, params.laser2
    if abs(l1.frequency - l2.frequency) > 1e-12:
        raise ValidityError(
            "rotating biexciton frame needs equal laser frequencies, got "
            f"{l1.frequency} and {l2.frequency}"
        )
    wl = l1.frequency
    diag_lab = biexciton_diagonal(params.omega0, params.delta)
    # frame R = diag(e^{-i wl t}, 1, 1, e^{+i wl t}) referenced to the singles
    diag_rot = diag_lab + np.array([wl, 0.0, 0.0, -wl])
    h = np.diag(diag_rot).astype(complex)
    h_int = (
        -l1.rabi * np.exp(-1j * l1.phase) * _RAISE_DOT1
        - l2.rabi * np.exp(-1j * l2.phase) * _RAISE_DOT2
    )
    return h + h_int + h_int.conj().T


def build_two_photon_effective(params: BiexcitonParams) -> np.ndarray:
    """Effective drive on span{|GG>, |EE>} after eliminating the singles.

    Second order in the couplings: the two intermediate paths add, giving
    <EE|H|GG> = (2 rabi1 rabi2 / delta) * exp(-i(phase1 + phase2)).  Basis
    order (|GG>, |EE>).
    """
    if params.delta == 0:
        raise ModelError("delta = 0: singular shift, no two-photon selectivity")
    ratio = params.validity_ratio
    if ratio > 0.1:
        warnings.warn(
            f"rabi/delta = {ratio:.3f} > 0.1; two-photon effective model is marginal",
            stacklevel=2,
        )
    l1, l2 = params.laser1, params.laser2
    omega_eff = 2.0 * l1.rabi * l2.rabi / params.delta
    coupling = omega_eff * np.exp(-1j * (l1.phase + l2.phase))
    return np.array([[0.0, np.conj(coupling)], [coupling, 0.0]], dtype=complex)


# ---------------------------------------------------------------------------
# polarized excitons driven through a detuned Raman transition (|E+>, |E->, |G>)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RamanParams:
    """Two circularly polarized lasers addressing the E+/E- transitions.

    rabi_plus, rabi_minus   couplings of the +/- lasers (rad/fs)
    detuning                common laser detuning Delta from the exciton
                            lines (rad/fs), nonzero
    phase_plus, phase_minus laser phases (rad)
    two_photon_detuning     beat-note offset between the two lasers; a
                            nonzero value tilts the effective field of the
                            logical qubit out of the equatorial plane
                            (used by the iterated small-angle gates)
    """

    rabi_plus: float
    rabi_minus: float
    detuning: float
    phase_plus: float = 0.0
    phase_minus: float = 0.0
    two_photon_detuning: float = 0.0

    def __post_init__(self):
        if self.rabi_plus < 0 or self.rabi_minus < 0:
            raise ModelError("rabi frequencies must be >= 0")
        if self.detuning == 0:
            raise ModelError("detuning must be nonzero for a Raman configuration")

    @property
    def validity_ratio(self) -> float:
        """max(rabi)/|detuning|, recorded with every build."""
        return max(self.rabi_plus, self.rabi_minus) / abs(self.detuning)


def build_raman_three_level(params: RamanParams) -> np.ndarray:
    """Rotating-frame 3-level Hamiltonian in the basis (|E+>, |E->, |G>).

    Diagonal (-eps/2, +eps/2, Delta) with eps the two-photon detuning;
    each laser addresses only its own polarization transition, so the
    direct E+ <-> E- element is exactly zero.  Couplings are
    <E+-|H|G> = rabi_+- * exp(i phase_+-).
    """
    eps = params.two_photon_detuning
    h = np.diag([-0.5 * eps, 0.5 * eps, params.detuning]).astype(complex)
    h[0, 2] = params.rabi_plus * np.exp(1j * params.phase_plus)
    h[2, 0] = np.conj(h[0, 2])
    h[1, 2] = params.rabi_minus * np.exp(1j * params.phase_minus)
    h[2, 1] = np.conj(h[1, 2])
    return h


def build_raman_effective(params: RamanParams) -> np.ndarray:
    """Effective drive on span{|E+>, |E->} after eliminating |G>.

    Coupling magnitude rabi_plus * rabi_minus / detuning with relative
    phase (phase_plus - phase_minus); a nonzero two-photon detuning is
    kept on the diagonal.
    """
    if params.detuning == 0:
        raise ModelError("detuning = 0: singular Raman denominator")
    ratio = params.validity_ratio
    if ratio > 0.2:
        warnings.warn(
            f"rabi/detuning = {ratio:.3f} > 0.2; adiabatic elimination is unreliable",
            stacklevel=2,
        )
    coupling = (
        params.rabi_plus
        * params.rabi_minus
        / params.detuning
        * np.exp(1j * (params.phase_plus - params.phase_minus))
    )
    eps = params.two_photon_detuning
    return np.array(
        [[-0.5 * eps, coupling], [np.conj(coupling), 0.5 * eps]], dtype=complex
    )


def raman_effective_field(params: RamanParams) -> np.ndarray:
    """Predicted effective-field vector on the logical (E+, E-) qubit.

    Includes the second-order light shifts of the two logical states, which
    add to the bare two-photon detuning; the coupling picks up a minus sign
    from the elimination (the intermediate |G> lies above by +Delta).
    """
    delta = params.detuning
    eps = params.two_photon_detuning
    g = params.rabi_plus * params.rabi_minus / delta
    chi = params.phase_plus - params.phase_minus
    shift_plus = -params.rabi_plus**2 / (delta + 0.5 * eps)
    shift_minus = -params.rabi_minus**2 / (delta - 0.5 * eps)
    bz = 0.5 * (-eps + shift_plus - shift_minus)
    # <E+|H|G><G|H|E-> / (0 - Delta) = -g e^{i chi} = g e^{i(chi+pi)}
    return np.array([-g * np.cos(chi), g * np.sin(chi), bz])
