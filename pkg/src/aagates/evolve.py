"""Evolution of pulse sequences: exact per-segment propagators or RK4.

Within a segment every Hamiltonian used here is constant (the pulses are
square and the models live in their rotating frames), so the spectral
propagator solves the Schroedinger equation exactly.  The RK4 path
integrates the same problem step by step and serves as the independent
cross-check; both record time-sampled trajectories with energies and the
running dynamical phase.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

from .errors import NumericalError
from .geometry import Trajectory
from .linalg import NORM_DRIFT_TOL, propagator_constant, rk4_evolve
from .pulses import PulseSegment, PulseSequence

DEFAULT_SAMPLES_PER_SEGMENT = 2000

SegmentHamiltonian = Callable[[PulseSegment], np.ndarray]


def sequence_propagator(
    seq: PulseSequence,
    segment_hamiltonian: SegmentHamiltonian,
    method: str = "exact",
    dt: float | None = None,
) -> np.ndarray:
    """Total propagator of the sequence (ordered product over segments).

    With ``method="exact"`` each segment contributes its spectral
    propagator and the repetition enters as a matrix power.  With
    ``method="rk4"`` every segment of every repeat is integrated with the
    fixed-step rule (dt defaults to duration/2000).
    """
    if method == "exact":
        u_loop = None
        for seg in seq.segments:
            u_seg = propagator_constant(segment_hamiltonian(seg), seg.duration)
            u_loop = u_seg if u_loop is None else u_seg @ u_loop
        return np.linalg.matrix_power(u_loop, seq.repeats)
    if method == "rk4":
        u = None
        for seg in seq.expanded():
            h = segment_hamiltonian(seg)
            step = dt if dt is not None else seg.duration / DEFAULT_SAMPLES_PER_SEGMENT
            dim = h.shape[0]
            cols = []
            for k in range(dim):
                psi0 = np.zeros(dim, dtype=complex)
                psi0[k] = 1.0
                cols.append(rk4_evolve(lambda _t: h, psi0, 0.0, seg.duration, step).state)
            u_seg = np.column_stack(cols)
            u = u_seg if u is None else u_seg @ u
        return u
    raise ValueError(f"unknown method {method!r}")


def _sample_segment_exact(
    h: np.ndarray, psi_start: np.ndarray, duration: float, n_samples: int
) -> tuple[np.ndarray, np.ndarray]:
    """States at n_samples times in (0, duration], from the spectral form."""
    w, v = np.linalg.eigh(h)
    amps = v.conj().T @ psi_start
    ts = np.linspace(0.0, duration, n_samples + 1)[1:]
    states = (np.exp(-1j * np.outer(ts, w)) * amps) @ v.T
    return ts, states


def run_sequence(
    seq: PulseSequence,
    segment_hamiltonian: SegmentHamiltonian,
    psi0: np.ndarray,
    samples_per_segment: int = DEFAULT_SAMPLES_PER_SEGMENT,
    method: str = "exact",
    model: str = "",
) -> Trajectory:
    """Evolve ``psi0`` through the sequence, recording a dense trajectory.

    Samples include t = 0 and every segment boundary.  Energies are
    <psi|H_segment|psi> evaluated with the segment active at each sample
    (boundary samples use the segment that just ended, matching the
    left-continuous convention of the trapezoidal dynamical phase).
    """
    psi = np.array(psi0, dtype=complex).reshape(-1)
    times = [0.0]
    states = [psi.copy()]
    first_h = segment_hamiltonian(seq.segments[0])
    energies = [float(np.real(np.vdot(psi, first_h @ psi)))]
    dyn_accum = [0.0]
    t_offset = 0.0
    for seg in seq.expanded():
        h = segment_hamiltonian(seg)
        if method == "exact":
            ts, seg_states = _sample_segment_exact(h, psi, seg.duration, samples_per_segment)
        elif method == "rk4":
            step = seg.duration / samples_per_segment
            ts = np.linspace(0.0, seg.duration, samples_per_segment + 1)[1:]
            seg_states = np.empty((samples_per_segment, psi.shape[0]), dtype=complex)
            current = psi
            drift_total = 0.0
            for k in range(samples_per_segment):
                result = rk4_evolve(lambda _t: h, current, 0.0, step, step)
                drift_total += result.norm_drift
                if drift_total > NORM_DRIFT_TOL:
                    raise NumericalError(
                        f"accumulated norm drift {drift_total:.3e} exceeds "
                        f"{NORM_DRIFT_TOL:.0e}; decrease the step"
                    )
                current = result.state
                seg_states[k] = current
        else:
            raise ValueError(f"unknown method {method!r}")
        seg_energies = np.real(np.einsum("ti,ij,tj->t", seg_states.conj(), h, seg_states))
        # the integrand is piecewise-defined: integrate this segment with its
        # own Hamiltonian, starting from the boundary state it receives
        e_left = float(np.real(np.vdot(psi, h @ psi)))
        seg_t = np.concatenate([[0.0], ts])
        seg_e = np.concatenate([[e_left], seg_energies])
        increments = -0.5 * (seg_e[1:] + seg_e[:-1]) * np.diff(seg_t)
        dyn_accum.extend(dyn_accum[-1] + np.cumsum(increments))
        energies.extend(seg_energies)
        times.extend(t_offset + ts)
        states.extend(seg_states)
        psi = seg_states[-1]
        t_offset += seg.duration
    return Trajectory(
        times=np.array(times),
        states=np.vstack(states),
        energies=np.array(energies),
        model=model,
        dyn_accum=np.array(dyn_accum),
    )


def basis_trajectories(
    seq: PulseSequence,
    segment_hamiltonian: SegmentHamiltonian,
    dim: int,
    samples_per_segment: int = DEFAULT_SAMPLES_PER_SEGMENT,
    method: str = "exact",
    model: str = "",
) -> list[Trajectory]:
    """One trajectory per computational basis state."""
    out = []
    for k in range(dim):
        psi0 = np.zeros(dim, dtype=complex)
        psi0[k] = 1.0
        out.append(
            run_sequence(seq, segment_hamiltonian, psi0, samples_per_segment, method, model)
        )
    return out
