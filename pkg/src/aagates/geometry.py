"""Bloch-sphere trajectories and phase bookkeeping for cyclic evolutions.

Phase conventions (for evolution under exp(-i H t)):

* dynamical phase  = - integral of <psi|H|psi> dt  (trapezoidal quadrature)
* total phase      = arg <psi(0)|psi(T)>, principal value in (-pi, pi]
* geometric phase  = total - dynamical, wrapped to (-pi, pi]

With the signed solid angle measured counterclockwise around the enclosed
region (right-hand rule along the traversal), every cyclic two-level
evolution satisfies  geometric + solid_angle / 2 = 0 (mod 2 pi).  Note the
geometric phase of a loop built from two pi-pulses includes the spinor
half-turn: a full 2 pi rotation contributes pi, so e.g. the resonant
two-pulse loop with phases (phi0, -phi0) carries a per-state geometric
phase of 2*phi0 - pi, not 2*phi0.  The logical (differential) phase
between the two basis states, which is what a phase gate imprints, is
still 2*phi0; see ``gates.differential_phase``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import ConfigurationError, CyclicityError, ModelError, SamplingError
from .linalg import PAULI, wrap_angle

MAX_SAMPLE_GAP = 0.1  # rad, great-circle distance between consecutive samples
CYCLIC_TOL = 1e-4  # Bloch-vector mismatch accepted as "the loop closed"


class BlochSample(NamedTuple):
    """One trajectory sample: time, Bloch vector, <H>, accumulated phase."""

    t: float
    n: np.ndarray
    energy: float
    dyn_phase_accum: float


@dataclass(frozen=True)
class Trajectory:
    """Time-sampled evolution: states, energies and running dynamical phase.

    ``states`` has shape (N, d); ``energies[k]`` is <psi_k|H(t_k)|psi_k>;
    ``dyn_accum`` is the running trapezoidal value of -integral <H> dt.
    Times must be strictly increasing and start at 0.
    """

    times: np.ndarray
    states: np.ndarray
    energies: np.ndarray
    model: str = ""
    dyn_accum: np.ndarray = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        s = np.asarray(self.states, dtype=complex)
        e = np.asarray(self.energies, dtype=float)
        if t.ndim != 1 or len(t) != s.shape[0] or len(t) != len(e):
            raise ModelError("trajectory arrays must share the leading dimension")
        if len(t) and t[0] != 0.0:
            raise ModelError(f"trajectory must start at t = 0, got {t[0]}")
        if np.any(np.diff(t) <= 0):
            raise ModelError("trajectory times must be strictly increasing")
        accum = self.dyn_accum
        if accum is None:
            accum = np.zeros_like(t)
            if len(t) > 1:
                increments = -0.5 * (e[1:] + e[:-1]) * np.diff(t)
                accum[1:] = np.cumsum(increments)
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "states", s)
        object.__setattr__(self, "energies", e)
        object.__setattr__(self, "dyn_accum", np.asarray(accum, dtype=float))

    @property
    def dim(self) -> int:
        return self.states.shape[1]

    def populations(self) -> np.ndarray:
        return np.abs(self.states) ** 2

    def bloch_vectors(self) -> np.ndarray:
        if self.dim != 2:
            raise ModelError(f"Bloch vectors need a two-level system, got dim {self.dim}")
        return np.stack([bloch_vector(psi) for psi in self.states])

    def sample(self, k: int) -> BlochSample:
        return BlochSample(
            float(self.times[k]),
            bloch_vector(self.states[k]),
            float(self.energies[k]),
            float(self.dyn_accum[k]),
        )


def bloch_vector(psi: np.ndarray) -> np.ndarray:
    """Expectation values (<sx>, <sy>, <sz>) of a two-level state."""
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    if psi.shape[0] != 2:
        raise ModelError(f"bloch_vector needs a two-level state, got dim {psi.shape[0]}")
    return np.array([np.real(np.vdot(psi, p @ psi)) for p in PAULI])


def dynamical_phase(traj: Trajectory) -> float:
    """-integral <psi|H|psi> dt over the trajectory (trapezoid rule).

    Uses the running accumulation carried by the trajectory, which the
    sequence runner builds segment by segment so the quadrature never
    straddles a boundary where <H> jumps.
    """
    if len(traj.times) < 2:
        raise ModelError("dynamical phase needs at least two samples")
    return float(traj.dyn_accum[-1])


def _cyclicity_mismatch(traj: Trajectory) -> float:
    n = traj.bloch_vectors()
    return float(np.linalg.norm(n[-1] - n[0]))


def total_phase(traj: Trajectory) -> float:
    """arg <psi(0)|psi(T)> for a cyclic trajectory, in (-pi, pi]."""
    mismatch = _cyclicity_mismatch(traj)
    if mismatch > CYCLIC_TOL:
        raise CyclicityError(
            f"trajectory is not cyclic: |n(T) - n(0)| = {mismatch:.3e} > {CYCLIC_TOL:.0e}",
            mismatch=mismatch,
        )
    overlap = np.vdot(traj.states[0], traj.states[-1])
    return wrap_angle(float(np.angle(overlap)))


def aa_phase(traj: Trajectory) -> float:
    """Geometric phase of a cyclic evolution: total minus dynamical."""
    return wrap_angle(total_phase(traj) - dynamical_phase(traj))


def _fan_reference(points: np.ndarray) -> np.ndarray:
    """Pick a fan apex whose antipode stays clear of every sample."""
    candidates = []
    mean = points.mean(axis=0)
    if np.linalg.norm(mean) > 1e-6:
        candidates.append(mean / np.linalg.norm(mean))
    area_vec = np.cross(points[:-1], points[1:]).sum(axis=0)
    if np.linalg.norm(area_vec) > 1e-9:
        candidates.append(area_vec / np.linalg.norm(area_vec))
    for axis in np.vstack([np.eye(3), -np.eye(3)]):
        candidates.append(axis)
    best, best_margin = None, -np.inf
    for c in candidates:
        # margin = angular clearance between the apex antipode and the loop
        margin = float(np.arccos(np.clip(np.max(points @ (-c)), -1.0, 1.0)))
        if margin > best_margin:
            best, best_margin = c, margin
        if margin > 0.3:
            return c
    if best is None or best_margin <= 0.05:
        raise SamplingError("no valid fan apex: loop passes near every candidate antipode")
    return best


def solid_angle(traj: Trajectory) -> float:
    """Signed solid angle enclosed by a cyclic two-level trajectory.

    Sums signed spherical-triangle excesses (tangent half-angle form,
    Omega = 2 atan2(a.(b x c), 1 + a.b + b.c + c.a)) fanned from a
    reference apex over the geodesic polygon through the Bloch samples.
    The sign follows the traversal orientation (counterclockwise
    positive); the result lies in (-4 pi, 4 pi).  Line-integral
    formulations are avoided because the resonant phase-gate loops pass
    through the poles.
    """
    points = traj.bloch_vectors()
    mismatch = float(np.linalg.norm(points[-1] - points[0]))
    if mismatch > CYCLIC_TOL:
        raise CyclicityError(
            f"trajectory is not cyclic: |n(T) - n(0)| = {mismatch:.3e}", mismatch=mismatch
        )
    norms = np.linalg.norm(points, axis=1)
    points = points / norms[:, None]
    gaps = np.arccos(np.clip(np.sum(points[:-1] * points[1:], axis=1), -1.0, 1.0))
    if np.any(gaps >= MAX_SAMPLE_GAP):
        raise SamplingError(
            f"trajectory undersampled: max Bloch gap {gaps.max():.3f} rad >= {MAX_SAMPLE_GAP}"
        )
    apex = _fan_reference(points)
    a = points
    b = np.roll(points, -1, axis=0)
    numerators = np.einsum("j,ij->i", apex, np.cross(a, b))
    denominators = 1.0 + a @ apex + np.einsum("ij,ij->i", a, b) + b @ apex
    return float(np.sum(2.0 * np.arctan2(numerators, denominators)))


def swept_angle_gamma(rabi: float, detuning: float) -> float:
    """Rotation angle gamma = 2 atan(2 rabi / detuning) of the two-pulse gate."""
    if detuning == 0.0:
        raise ConfigurationError(
            "resonant drive: the rotation-angle formula does not apply; "
            "the resonant phase gate has phase 2*phi0 instead"
        )
    return 2.0 * math.atan(2.0 * rabi / detuning)
