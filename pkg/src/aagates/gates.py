"""Gate synthesis and verification for the two-pulse geometric gate set.

Targets
-------
* ``target_gate1(gamma)``: real rotation |0> -> cos g |0> - sin g |1>,
  |1> -> cos g |1> + sin g |0>; the NOT gate is gamma = pi/2.
* ``target_gate2(gt)``: selective phase diag(e^{i gt}, e^{-i gt}).

The realized two-pi-pulse propagators equal these targets up to a global
minus sign (two half-turns make one full turn, and a 2 pi rotation of a
spinor is -1).  Fidelities are global-phase invariant, so the sign never
affects grading; phase values reported for gates are differential
(between the logical basis states), where the sign cancels.  Trajectory-
level geometric phases in :mod:`aagates.geometry` keep the sign.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal, NamedTuple

import numpy as np

from .errors import (
    ConfigurationError,
    CyclicityError,
    ModelError,
    SamplingError,
    ValidityError,
)
from .evolve import (
    DEFAULT_SAMPLES_PER_SEGMENT,
    basis_trajectories,
    run_sequence,
)
from .geometry import (
    Trajectory,
    dynamical_phase,
    solid_angle,
    total_phase,
)
from .linalg import gate_fidelity, propagator_constant, wrap_angle
from .models import (
    BiexcitonParams,
    LaserDrive,
    RamanParams,
    build_biexciton_rotating,
    build_raman_three_level,
    build_rotating_two_level,
    build_two_photon_effective,
    raman_effective_field,
    two_photon_resonance,
)
from .pulses import PulseSegment, PulseSequence, gate1_sequence


def target_gate1(gamma: float) -> np.ndarray:
    """Rotation gate of angle gamma in the logical basis."""
    c, s = math.cos(gamma), math.sin(gamma)
    return np.array([[c, s], [-s, c]], dtype=complex)


def target_gate2(gamma_tilde: float) -> np.ndarray:
    """Selective phase gate diag(e^{i gt}, e^{-i gt})."""
    return np.diag([np.exp(1j * gamma_tilde), np.exp(-1j * gamma_tilde)])


def conditional_phase_target(gamma_tilde: float, gamma_prime: float | None = None) -> np.ndarray:
    """Two-qubit target diag(e^{i gamma'}, 1, 1, e^{i gamma_tilde}).

    The synchronized two-photon drive imprints opposite phases on the two
    states of the driven pair, so the partner phase on |GG> defaults to
    -gamma_tilde.
    """
    gp = -gamma_tilde if gamma_prime is None else gamma_prime
    return np.diag([np.exp(1j * gp), 1.0, 1.0, np.exp(1j * gamma_tilde)]).astype(complex)


class Gate1Synthesis(NamedTuple):
    detuning: float
    sequence: PulseSequence


def synthesize_gate1(gamma_target: float, rabi: float) -> Gate1Synthesis:
    """Detuning and pulse pair realizing the rotation gate of angle gamma.

    Inverts gamma = 2 atan(2 rabi / detuning): detuning = 2 rabi / tan(gamma/2).
    """
    if not 0.0 < gamma_target < math.pi:
        raise ConfigurationError(
            f"gamma must lie strictly inside (0, pi), got {gamma_target}; "
            "the endpoints are the resonant/degenerate limits"
        )
    if rabi <= 0:
        raise ConfigurationError(f"rabi must be > 0, got {rabi}")
    detuning = 2.0 * rabi / math.tan(0.5 * gamma_target)
    return Gate1Synthesis(detuning, gate1_sequence(rabi, detuning))


def su2_normalize(u: np.ndarray) -> np.ndarray:
    """Divide out the determinant phase (principal branch) of a 2x2 unitary."""
    det = np.linalg.det(u)
    if abs(det) < 1e-12:
        raise ModelError("matrix is singular; cannot normalize to SU(2)")
    return u / np.sqrt(det)


def rotation_parameter(u: np.ndarray) -> float:
    """Rotation-gate angle gamma recovered from a two-pi-pulse propagator.

    The pair composes to -[rotation by gamma], so after SU(2) normalization
    gamma = arccos(-Re Tr(U) / 2), valid across the whole range (0, pi).
    """
    u = np.asarray(u, dtype=complex)
    if u.shape != (2, 2):
        raise ModelError(f"rotation parameter needs a 2x2 propagator, got {u.shape}")
    tr = np.trace(su2_normalize(u))
    return float(math.acos(float(np.clip(-tr.real / 2.0, -1.0, 1.0))))


def differential_phase(u: np.ndarray) -> float:
    """Half the relative phase between the diagonal returns of a phase gate.

    (1/2) arg(U00 * conj(U11)): the global-phase-free content of a
    diagonal gate; the common spinor half-turn of a two-pulse loop cancels
    in the difference.
    """
    u = np.asarray(u, dtype=complex)
    return 0.5 * float(np.angle(u[0, 0] * np.conj(u[1, 1])))


def local_z_corrected_fidelity(u: np.ndarray, target: np.ndarray) -> float:
    """Two-qubit gate fidelity maximized over single-qubit z-phase corrections.

    Maximizes |Tr(T^dag L U)| / 4 over L = diag(1, e^{i b}, e^{i a},
    e^{i(a+b)}); the inner maximization over ``a`` is analytic, leaving a
    1-d search over ``b`` done on a dense grid with golden refinement.
    """
    m = np.asarray(target, dtype=complex).conj().T @ np.asarray(u, dtype=complex)
    d = np.diag(m)

    def overlap(beta: float) -> float:
        return abs(d[0] + d[1] * np.exp(1j * beta)) + abs(d[2] + d[3] * np.exp(1j * beta))

    grid = np.linspace(-math.pi, math.pi, 2048, endpoint=False)
    values = [overlap(b) for b in grid]
    k = int(np.argmax(values))
    lo, hi = grid[k] - 2 * math.pi / 2048, grid[k] + 2 * math.pi / 2048
    phi = (math.sqrt(5) - 1) / 2
    a, b = lo, hi
    c1 = b - phi * (b - a)
    c2 = a + phi * (b - a)
    f1, f2 = overlap(c1), overlap(c2)
    for _ in range(60):
        if f1 < f2:
            a, c1, f1 = c1, c2, f2
            c2 = a + phi * (b - a)
            f2 = overlap(c2)
        else:
            b, c2, f2 = c2, c1, f1
            c1 = b - phi * (b - a)
            f1 = overlap(c1)
    return max(f1, f2) / 4.0


def local_z_corrected_state_fidelity(psi: np.ndarray, target: np.ndarray) -> float:
    """|<target|L|psi>|^2 maximized over two-qubit z-phase corrections L."""
    d = np.conj(np.asarray(target, complex).reshape(-1)) * np.asarray(psi, complex).reshape(-1)

    def overlap(beta: float) -> float:
        return abs(d[0] + d[1] * np.exp(1j * beta)) + abs(d[2] + d[3] * np.exp(1j * beta))

    grid = np.linspace(-math.pi, math.pi, 4096, endpoint=False)
    best = max(overlap(b) for b in grid)
    return float(best**2)


@dataclass(frozen=True)
class GateReport:
    """Everything measured about one synthesized gate."""

    realized: np.ndarray
    target: np.ndarray | None
    fidelity: float | None
    gate_time: float
    loop_count: int = 1
    total_phase: float | None = None
    dyn_phase: float | None = None
    geom_phase: float | None = None
    solid_angle: float | None = None
    leakage: float | None = None
    gamma_loop: float | None = None
    population_transfer: float | None = None
    trajectory: Trajectory | None = None
    fidelity_raw: float | None = None
    extras: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.fidelity is not None and not -1e-12 <= self.fidelity <= 1.0 + 1e-12:
            raise ModelError(f"fidelity {self.fidelity} outside [0, 1]")


def _two_level_segment_hamiltonian(seg: PulseSegment) -> np.ndarray:
    return build_rotating_two_level(seg.rabi, seg.phase, seg.detuning)


def run_gate(
    seq: PulseSequence,
    target: np.ndarray | None = None,
    segment_hamiltonian=_two_level_segment_hamiltonian,
    dim: int = 2,
    samples_per_segment: int = DEFAULT_SAMPLES_PER_SEGMENT,
    method: str = "rk4",
    model: str = "two_level",
    primary: int = 0,
) -> GateReport:
    """Integrate the sequence from every basis state and assemble the report.

    ``primary`` selects the basis state whose trajectory is attached to the
    report (and provides total/dynamical phase and solid angle when its
    loop closes).  The gate-level geometric phase is the differential
    between the two logical loops (half their relative return phase, in
    which the common spinor half-turn of a two-pulse loop cancels); it is
    filled in only when both loops close, as in the resonant phase-gate
    family.
    """
    trajectories = basis_trajectories(
        seq, segment_hamiltonian, dim, samples_per_segment, method, model
    )
    realized = np.column_stack([traj.states[-1] for traj in trajectories])
    fidelity = gate_fidelity(realized, target) if target is not None else None
    tot = dyn = geom = omega = None
    extras: dict = {}
    if dim == 2:
        main_traj = trajectories[primary]
        other = trajectories[1 - primary]
        dyn = dynamical_phase(main_traj)
        extras["dyn_phase_other_basis"] = dynamical_phase(other)
        try:
            tot = total_phase(main_traj)
            extras["aa_phase_primary"] = wrap_angle(tot - dyn)
            omega = solid_angle(main_traj)
        except (CyclicityError, SamplingError):
            tot = omega = None
        if tot is not None:
            try:
                extras["aa_phase_other_basis"] = wrap_angle(
                    total_phase(other) - extras["dyn_phase_other_basis"]
                )
                geom = differential_phase(realized)
            except (CyclicityError, SamplingError):
                geom = None
    transfer = float(abs(realized[1, 0]) ** 2) if dim == 2 else None
    return GateReport(
        realized=realized,
        target=target,
        fidelity=fidelity,
        gate_time=seq.total_duration,
        loop_count=seq.repeats,
        total_phase=tot,
        dyn_phase=dyn,
        geom_phase=geom,
        solid_angle=omega,
        population_transfer=transfer,
        trajectory=trajectories[primary],
        extras=extras,
    )


# ---------------------------------------------------------------------------
# two-qubit conditional phase through the biexciton two-photon transition
# ---------------------------------------------------------------------------

def two_qubit_phase_gate(
    params: BiexcitonParams,
    gamma_tilde: float,
    samples_per_segment: int = DEFAULT_SAMPLES_PER_SEGMENT,
) -> GateReport:
    """Conditional phase gate on the (|GG>, |EE>) pair of two coupled dots.

    Drives the two-photon transition with the resonant phase-gate recipe:
    two effective pi-pulses whose laser phase sums are (-phi0, +phi0) with
    phi0 = gamma_tilde / 2, split equally between the lasers.  The report
    frame removes the free rotating-frame offset of the (GG, EE) pair, so
    the residual diagonal phases are the gate content: +gamma_tilde on
    |EE>, the opposite partner phase on |GG>, and the fidelity is graded
    against that target up to single-qubit z-phase corrections.
    """
    ratio = params.validity_ratio
    if ratio > 0.1:
        raise ValidityError(
            f"rabi/delta = {ratio:.3f} > 0.1: outside the two-photon perturbative regime"
        )
    resonant = two_photon_resonance(params.omega0, params.delta)
    for laser in (params.laser1, params.laser2):
        if laser.rabi > 0 and abs(laser.frequency - resonant) > 1e-9:
            raise ValidityError(
                f"laser at {laser.frequency} is off the two-photon resonance {resonant}"
            )
    omega_eff = 2.0 * params.laser1.rabi * params.laser2.rabi / params.delta
    if omega_eff == 0.0:
        # no drive: free evolution only, realized gate is the frame identity
        omega_eff = None
    phi0 = 0.5 * gamma_tilde

    def rotating_h(phase_sum_sign: float) -> np.ndarray:
        half = phase_sum_sign * phi0 / 2.0
        p = BiexcitonParams(
            params.omega0,
            params.delta,
            LaserDrive(params.laser1.rabi, half, resonant),
            LaserDrive(params.laser2.rabi, half, resonant),
        )
        return build_biexciton_rotating(p)

    if omega_eff is None:
        realized = np.eye(4, dtype=complex)
        target = conditional_phase_target(gamma_tilde)
        return GateReport(
            realized=realized, target=target,
            fidelity=local_z_corrected_fidelity(realized, target),
            gate_time=0.0, leakage=0.0,
        )

    t_seg = math.pi / (2.0 * omega_eff)
    # effective drive phase is -(phase1 + phase2): laser sums (-phi0, +phi0)
    # put the +gamma_tilde return on |EE>
    h_a, h_b = rotating_h(-1.0), rotating_h(+1.0)
    u = propagator_constant(h_b, t_seg) @ propagator_constant(h_a, t_seg)
    t_tot = 2.0 * t_seg
    frame = np.diag(np.exp(1j * np.array([params.delta, 0.0, 0.0, params.delta]) * t_tot))
    realized = frame @ u

    # leakage and trajectory from the driven pair, sampled over both segments
    seq = PulseSequence(
        (
            PulseSegment(rabi=omega_eff, phase=-phi0, detuning=0.0, duration=t_seg),
            PulseSegment(rabi=omega_eff, phase=+phi0, detuning=0.0, duration=t_seg),
        )
    )
    ham_of_phase = {-phi0: h_a, +phi0: h_b}

    def seg_h(seg: PulseSegment) -> np.ndarray:
        return ham_of_phase[seg.phase]

    leakage = 0.0
    trajectories = {}
    for label, start in (("GG", 0), ("EE", 3)):
        psi0 = np.zeros(4, dtype=complex)
        psi0[start] = 1.0
        traj = run_sequence(
            seq, seg_h, psi0,
            samples_per_segment=samples_per_segment,
            model="biexciton_rotating",
        )
        pops = traj.populations()
        leakage = max(leakage, float(pops[:, 1].max()), float(pops[:, 2].max()))
        trajectories[label] = traj

    target = conditional_phase_target(gamma_tilde)
    fid_local = local_z_corrected_fidelity(realized, target)
    ee_phase = float(np.angle(realized[3, 3]))
    block_diff = 0.5 * float(np.angle(realized[3, 3] * np.conj(realized[0, 0])))

    # effective-model oracle run through the same recipe and reporting
    h_eff_a = _effective_pair_hamiltonian(params, -phi0)
    h_eff_b = _effective_pair_hamiltonian(params, +phi0)
    u_eff = propagator_constant(h_eff_b, t_seg) @ propagator_constant(h_eff_a, t_seg)
    eff_diff = 0.5 * float(np.angle(u_eff[1, 1] * np.conj(u_eff[0, 0])))

    return GateReport(
        realized=realized,
        target=target,
        fidelity=fid_local,
        fidelity_raw=gate_fidelity(realized, target),
        gate_time=t_tot,
        geom_phase=block_diff,
        leakage=leakage,
        trajectory=trajectories["GG"],
        extras={
            "ee_phase": ee_phase,
            "block_differential_phase": block_diff,
            "effective_differential_phase": eff_diff,
            "effective_rabi": omega_eff,
        },
    )


def _effective_pair_hamiltonian(params: BiexcitonParams, phase_sum: float) -> np.ndarray:
    """Two-photon effective drive with the given laser phase sum."""
    p = BiexcitonParams(
        params.omega0,
        params.delta,
        LaserDrive(params.laser1.rabi, 0.5 * phase_sum, params.laser1.frequency),
        LaserDrive(params.laser2.rabi, 0.5 * phase_sum, params.laser2.frequency),
    )
    return build_two_photon_effective(p)


# ---------------------------------------------------------------------------
# polarization-encoded gates through the Raman transition
# ---------------------------------------------------------------------------

def _raman_loop_hamiltonians(params: RamanParams, base_phase: float) -> list[np.ndarray]:
    """Three-level Hamiltonians of the two pi-pulses of one loop.

    The effective drive phase seen by the logical qubit is
    -(phase_plus - phase_minus + pi); the pulse pair needs effective
    phases (chi, chi + pi), realized by jumping phase_plus by pi.
    """
    hams = []
    for extra in (0.0, math.pi):
        p = RamanParams(
            params.rabi_plus,
            params.rabi_minus,
            params.detuning,
            phase_plus=params.phase_plus + base_phase + extra,
            phase_minus=params.phase_minus,
            two_photon_detuning=params.two_photon_detuning,
        )
        hams.append(build_raman_three_level(p))
    return hams


def _raman_pi_duration(params: RamanParams) -> float:
    b = raman_effective_field(params)
    bmag = float(np.linalg.norm(b))
    if bmag == 0.0:
        raise ConfigurationError("effective field vanishes: no Raman drive")
    return math.pi / (2.0 * bmag)


def measure_raman_loop_angle(params: RamanParams) -> float:
    """Rotation angle of one two-pulse loop, from the full 3-level model."""
    t_seg = _raman_pi_duration(params)
    h1, h2 = _raman_loop_hamiltonians(params, 0.0)
    u = propagator_constant(h2, t_seg) @ propagator_constant(h1, t_seg)
    return rotation_parameter(u[:2, :2])


def calibrate_two_photon_detuning(
    params: RamanParams, gamma_loop: float, iterations: int = 60
) -> RamanParams:
    """Tune the beat-note offset until the measured per-loop angle matches.

    Bisection on the full-model loop angle around the analytic estimate
    eps = 2 g / tan(gamma/2) with g = rabi+ rabi- / Delta.  The measured
    angle carries small leakage wiggles on top of a decreasing trend, so a
    bracketing search is used rather than a gradient one.
    """
    g = params.rabi_plus * params.rabi_minus / abs(params.detuning)
    eps = 2.0 * g / math.tan(0.5 * gamma_loop)

    def residual(e: float) -> float:
        p = RamanParams(
            params.rabi_plus, params.rabi_minus, params.detuning,
            params.phase_plus, params.phase_minus, two_photon_detuning=e,
        )
        return measure_raman_loop_angle(p) - gamma_loop

    lo, hi = 0.7 * eps, 1.4 * eps
    f_lo, f_hi = residual(lo), residual(hi)
    if f_lo * f_hi > 0:
        raise ValidityError(
            f"cannot bracket the requested per-loop angle {gamma_loop:.4e} "
            f"around eps ~ {eps:.4e}"
        )
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        f_mid = residual(mid)
        if abs(f_mid) < 1e-10:
            lo = hi = mid
            break
        if f_lo * f_mid <= 0:
            hi, f_hi = mid, f_mid
        else:
            lo, f_lo = mid, f_mid
    return RamanParams(
        params.rabi_plus, params.rabi_minus, params.detuning,
        params.phase_plus, params.phase_minus,
        two_photon_detuning=0.5 * (lo + hi),
    )


def raman_gate(
    params: RamanParams,
    target: Literal["not", "phase"] = "not",
    phase_angle: float | None = None,
    samples_per_segment: int = 200,
) -> GateReport:
    """Logical gate on the polarized-exciton qubit (|E+>, |E->).

    ``target="not"``: measures the per-loop rotation angle from a single
    two-pulse loop of the full three-level model, iterates the loop
    ceil((pi/2) / gamma_loop) times, and grades the population transfer
    and the logical-block fidelity against the rotation target.

    ``target="phase"``: switches the + laser to resonance conceptually by
    driving the (|E+>, |G>) pair with the resonant two-pulse recipe.  The
    loop leaves the spinor half-turn as a relative phase between |E+>
    (which looped) and the untouched |E->, so the pulse phases are chosen
    as phi0 = (phase_angle - pi)/2 to realize exp(i phase_angle |E+><E+|)
    exactly.  The phase accumulated by |G> is measured and reported, not
    assumed zero.
    """
    ratio = abs(params.detuning) / max(params.rabi_plus, params.rabi_minus)
    if ratio < 5.0:
        raise ValidityError(
            f"detuning/rabi = {ratio:.2f} < 5: adiabatic elimination unreliable"
        )
    if target == "not":
        return _raman_not(params, samples_per_segment)
    if target == "phase":
        if phase_angle is None:
            raise ConfigurationError("phase target needs phase_angle")
        return _raman_phase(params, phase_angle, samples_per_segment)
    raise ConfigurationError(f"unknown raman gate target {target!r}")


def _raman_not(params: RamanParams, samples_per_segment: int) -> GateReport:
    gamma_loop = measure_raman_loop_angle(params)
    if gamma_loop < 1e-4:
        raise ValidityError(
            f"per-loop angle {gamma_loop:.2e} rad < 1e-4: iteration impractical; "
            "increase rabi^2/detuning or the two-photon detuning"
        )
    loop_count = math.ceil((0.5 * math.pi) / gamma_loop)
    t_seg = _raman_pi_duration(params)
    h1, h2 = _raman_loop_hamiltonians(params, 0.0)
    seq = PulseSequence(
        (
            PulseSegment(rabi=params.rabi_plus, phase=0.0, detuning=params.two_photon_detuning, duration=t_seg),
            PulseSegment(rabi=params.rabi_plus, phase=math.pi, detuning=params.two_photon_detuning, duration=t_seg),
        ),
        repeats=loop_count,
    )
    hams = [h1, h2]
    def seg_h(seg: PulseSegment) -> np.ndarray:
        return hams[0] if seg.phase == 0.0 else hams[1]

    u_loop = propagator_constant(h2, t_seg) @ propagator_constant(h1, t_seg)
    realized = np.linalg.matrix_power(u_loop, loop_count)
    psi0 = np.zeros(3, dtype=complex)
    psi0[0] = 1.0
    traj = run_sequence(seq, seg_h, psi0, samples_per_segment, model="raman_three_level")
    leakage = float(traj.populations()[:, 2].max())
    block = realized[:2, :2]
    accumulated = loop_count * gamma_loop
    tgt = target_gate1(accumulated)
    fid = gate_fidelity(phase_normalized_block(block), tgt)
    transfer = float(abs(realized[1, 0]) ** 2)
    return GateReport(
        realized=realized,
        target=tgt,
        fidelity=fid,
        gate_time=seq.total_duration,
        loop_count=loop_count,
        gamma_loop=gamma_loop,
        leakage=leakage,
        population_transfer=transfer,
        trajectory=traj,
        extras={"accumulated_angle": accumulated},
    )


def phase_normalized_block(block: np.ndarray) -> np.ndarray:
    """Logical 2x2 block made comparable to a unitary target.

    Leakage makes the block slightly subunitary; the determinant phase is
    divided out (magnitude kept, so lost population still lowers the
    fidelity).
    """
    det = np.linalg.det(block)
    if abs(det) < 1e-12:
        raise ModelError("logical block is singular")
    return block / np.exp(0.5j * np.angle(det))


def _raman_phase(params: RamanParams, phase_angle: float, samples_per_segment: int) -> GateReport:
    if params.two_photon_detuning != 0.0:
        raise ConfigurationError("phase gate uses the resonant recipe; two_photon_detuning must be 0")
    phi0 = 0.5 * (phase_angle - math.pi)
    rabi = params.rabi_plus
    if rabi <= 0:
        raise ConfigurationError("phase gate needs rabi_plus > 0")
    t_seg = math.pi / (2.0 * rabi)
    # resonant drive of the (|E+>, |G>) pair: detuning -> 0, minus laser off.
    # <E+|H|G> = rabi e^{i ph} maps to an effective-field phase of -ph, so
    # the pair (-phi0, +phi0) realizes the (+phi0, -phi0) two-pulse loop.
    hams = []
    for ph in (-phi0, phi0):
        h = np.zeros((3, 3), dtype=complex)
        h[0, 2] = rabi * np.exp(1j * ph)
        h[2, 0] = np.conj(h[0, 2])
        hams.append(h)
    u = propagator_constant(hams[1], t_seg) @ propagator_constant(hams[0], t_seg)
    realized = u
    logical = np.diag([realized[0, 0], realized[1, 1]])
    tgt = np.diag([np.exp(1j * phase_angle), 1.0]).astype(complex)
    fid = gate_fidelity(logical, tgt)
    seq = PulseSequence(
        (
            PulseSegment(rabi=rabi, phase=-phi0, detuning=0.0, duration=t_seg),
            PulseSegment(rabi=rabi, phase=phi0, detuning=0.0, duration=t_seg),
        )
    )
    hams_iter = {-phi0: hams[0], phi0: hams[1]}
    psi0 = np.zeros(3, dtype=complex)
    psi0[0] = 1.0
    traj = run_sequence(
        seq, lambda seg: hams_iter[seg.phase], psi0, samples_per_segment,
        model="raman_phase",
    )
    # the resonant loop passes through |G> by design; the error metric is
    # the residual population left there when the loop closes
    residual_leak = float(abs(realized[2, 0]) ** 2)
    return GateReport(
        realized=realized,
        target=tgt,
        fidelity=fid,
        gate_time=seq.total_duration,
        geom_phase=wrap_angle(float(np.angle(realized[0, 0]))),
        leakage=residual_leak,
        trajectory=traj,
        extras={
            "ground_state_phase": float(np.angle(realized[2, 2])),
            "max_transient_ground_population": float(traj.populations()[:, 2].max()),
        },
    )
