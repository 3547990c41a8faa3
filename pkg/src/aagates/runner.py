"""Config-driven experiment execution and artifact writers.

One run produces three files in the output directory:

* ``trajectory.csv``   time-sampled populations (plus Bloch vector for
                       two-level runs), energy expectation and the running
                       dynamical phase, printed with 17 significant digits
* ``report.json``      the gate report (or a reduced measurement report
                       for trajectory-only runs), angles in radians,
                       times in femtoseconds
* ``manifest.json``    config echo, tool version, wall-clock runtime and
                       sha256 digests of the two data files

The data files are byte-reproducible for a fixed config and version; the
manifest is not (it records the runtime).
"""

from __future__ import annotations

import hashlib
import json
import math
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .config import ExperimentConfig
from .errors import ConfigError, ValidityError
from .evolve import run_sequence
from .gates import (
    GateReport,
    raman_gate,
    run_gate,
    synthesize_gate1,
    target_gate1,
    target_gate2,
    two_qubit_phase_gate,
)
from .geometry import Trajectory, swept_angle_gamma
from .models import (
    BiexcitonParams,
    LaserDrive,
    RamanParams,
    TwoLevelParams,
    build_lab_two_level,
    build_raman_effective,
    build_raman_three_level,
    build_rotating_two_level,
    two_photon_resonance,
)
from .pulses import PulseSegment, PulseSequence, gate1_sequence, gate2_sequence
from .linalg import rk4_evolve


@dataclass
class RunResult:
    trajectory: Trajectory | None
    report: dict
    gate_report: GateReport | None = None


# ---------------------------------------------------------------------------
# model parameter extraction
# ---------------------------------------------------------------------------

def raman_params_from(cfg: ExperimentConfig) -> RamanParams:
    return RamanParams(
        rabi_plus=cfg.number("model", "rabi_plus"),
        rabi_minus=cfg.number("model", "rabi_minus"),
        detuning=cfg.number("model", "detuning"),
        phase_plus=cfg.number("model", "phase_plus", 0.0),
        phase_minus=cfg.number("model", "phase_minus", 0.0),
        two_photon_detuning=cfg.number("model", "two_photon_detuning", 0.0),
    )


def biexciton_params_from(cfg: ExperimentConfig) -> BiexcitonParams:
    omega0 = cfg.number("model", "omega0")
    delta = cfg.number("model", "delta")
    default_freq = two_photon_resonance(omega0, delta)
    return BiexcitonParams(
        omega0=omega0,
        delta=delta,
        laser1=LaserDrive(
            cfg.number("model", "rabi1", cfg.number("model", "rabi", 0.0)),
            cfg.number("model", "phase1", 0.0),
            cfg.number("model", "frequency1", default_freq),
        ),
        laser2=LaserDrive(
            cfg.number("model", "rabi2", cfg.number("model", "rabi", 0.0)),
            cfg.number("model", "phase2", 0.0),
            cfg.number("model", "frequency2", default_freq),
        ),
    )


# ---------------------------------------------------------------------------
# measurement helpers
# ---------------------------------------------------------------------------

def half_transfer_rate(times: np.ndarray, population: np.ndarray) -> float:
    """Effective Rabi frequency from the first crossing of population 0.5.

    For population = sin^2(g t) the crossing happens at g t = pi/4.
    """
    above = population >= 0.5
    if not above.any():
        raise ValidityError("population never reaches 0.5; cannot measure the rate")
    k = int(np.argmax(above))
    if k == 0:
        raise ValidityError("population starts above 0.5; cannot measure the rate")
    t0, t1 = times[k - 1], times[k]
    f0, f1 = population[k - 1], population[k]
    t_half = t0 + (0.5 - f0) * (t1 - t0) / (f1 - f0)
    return float(math.pi / (4.0 * t_half))


# ---------------------------------------------------------------------------
# per-kind execution
# ---------------------------------------------------------------------------

def _target_from(cfg: ExperimentConfig) -> np.ndarray | None:
    kind = cfg.target_kind
    if kind == "none":
        return None
    raw_angle = cfg.get("target", "angle", "auto")
    if raw_angle == "auto":
        angle = _auto_target_angle(cfg)
    else:
        angle = cfg.number("target", "angle")
    if kind == "gate1":
        return target_gate1(angle)
    if kind == "gate2":
        return target_gate2(angle)
    raise ConfigError(f"target kind {kind!r} cannot be built from a config angle")


def _auto_target_angle(cfg: ExperimentConfig) -> float:
    seq_kind = cfg.sequence_kind
    if seq_kind == "gate1":
        gamma = cfg.get("sequence", "gamma")
        if gamma is not None:
            return cfg.number("sequence", "gamma")
        return swept_angle_gamma(
            cfg.number("sequence", "rabi"), cfg.number("sequence", "detuning")
        )
    if seq_kind == "gate2":
        return 2.0 * cfg.number("sequence", "phi0")
    raise ConfigError(f"target angle 'auto' is not defined for sequence {seq_kind!r}")


def _two_level_sequence(cfg: ExperimentConfig) -> PulseSequence:
    kind = cfg.sequence_kind
    if kind == "gate1":
        rabi = cfg.number("sequence", "rabi")
        gamma = cfg.get("sequence", "gamma")
        if gamma is not None:
            return synthesize_gate1(cfg.number("sequence", "gamma"), rabi).sequence
        return gate1_sequence(rabi, cfg.number("sequence", "detuning"),
                              cfg.number("sequence", "base_phase", 0.0))
    if kind == "gate2":
        return gate2_sequence(cfg.number("sequence", "rabi"), cfg.number("sequence", "phi0"))
    if kind == "segments":
        segs = tuple(PulseSegment(**s) for s in cfg.explicit_segments())
        return PulseSequence(segs, repeats=cfg.integer("sequence", "repeats", 1))
    if kind == "hold":
        return PulseSequence(
            (
                PulseSegment(
                    rabi=cfg.number("sequence", "rabi", cfg.number("model", "rabi", 0.0)),
                    phase=cfg.number("sequence", "phase", 0.0),
                    detuning=cfg.number("sequence", "detuning", 0.0),
                    duration=cfg.number("sequence", "duration"),
                ),
            )
        )
    raise ConfigError(f"sequence kind {kind!r} is not valid for a two-level model")


def _gate_report_dict(rep: GateReport, csv_name: str | None) -> dict:
    def mat(m):
        if m is None:
            return None
        return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(m)]

    return {
        "realized": mat(rep.realized),
        "target": mat(rep.target),
        "fidelity": rep.fidelity,
        "fidelity_raw": rep.fidelity_raw,
        "gate_time_fs": rep.gate_time,
        "loop_count": rep.loop_count,
        "total_phase": rep.total_phase,
        "dyn_phase": rep.dyn_phase,
        "geom_phase": rep.geom_phase,
        "solid_angle": rep.solid_angle,
        "leakage": rep.leakage,
        "gamma_loop": rep.gamma_loop,
        "population_transfer": rep.population_transfer,
        "trajectory": csv_name,
        "extras": {k: v for k, v in sorted(rep.extras.items())},
    }


def execute(cfg: ExperimentConfig) -> RunResult:
    """Run one configured experiment; returns the trajectory and report."""
    model_kind = cfg.model_kind
    seq_kind = cfg.sequence_kind
    method = cfg.integrator_method

    if model_kind == "two_level":
        seq = _two_level_sequence(cfg)
        samples = cfg.samples_for(seq.segments[0].duration)
        if seq_kind == "hold":
            psi0 = _basis_state(2, cfg.initial_state_index)
            traj = run_sequence(
                seq,
                lambda s: build_rotating_two_level(s.rabi, s.phase, s.detuning),
                psi0, samples, method, model="two_level",
            )
            return RunResult(traj, _hold_report(cfg, traj, transfer_index=1, leak_index=None))
        rep = run_gate(seq, target=_target_from(cfg), samples_per_segment=samples,
                       method=method, primary=cfg.initial_state_index)
        return RunResult(rep.trajectory, _gate_report_dict(rep, "trajectory.csv"), rep)

    if model_kind == "lab_two_level":
        return _run_lab_two_level(cfg)

    if model_kind == "raman":
        params = raman_params_from(cfg)
        if seq_kind == "hold":
            return _run_hold_static(
                cfg, build_raman_three_level(params), dim=3,
                transfer_index=1, leak_index=2, model="raman_three_level",
                extras={"detuning_over_rabi": abs(params.detuning) / max(params.rabi_plus, params.rabi_minus)},
            )
        if seq_kind == "raman_not":
            rep = raman_gate(params, "not", samples_per_segment=cfg.integer("integrator", "samples_per_segment", 200))
            return RunResult(rep.trajectory, _gate_report_dict(rep, "trajectory.csv"), rep)
        if seq_kind == "raman_phase":
            rep = raman_gate(params, "phase", phase_angle=cfg.number("sequence", "phase_angle"))
            return RunResult(rep.trajectory, _gate_report_dict(rep, "trajectory.csv"), rep)
        raise ConfigError(f"sequence kind {seq_kind!r} is not valid for the raman model")

    if model_kind == "raman_effective":
        params = raman_params_from(cfg)
        if seq_kind != "hold":
            raise ConfigError("raman_effective supports only the 'hold' sequence")
        return _run_hold_static(
            cfg, build_raman_effective(params), dim=2,
            transfer_index=1, leak_index=None, model="raman_effective",
        )

    if model_kind == "biexciton":
        params = biexciton_params_from(cfg)
        if seq_kind == "two_photon_phase":
            rep = two_qubit_phase_gate(params, cfg.number("sequence", "gamma_tilde"))
            return RunResult(rep.trajectory, _gate_report_dict(rep, "trajectory.csv"), rep)
        if seq_kind == "hold":
            from .models import build_biexciton_rotating

            return _run_hold_static(
                cfg, build_biexciton_rotating(params), dim=4,
                transfer_index=3, leak_index=(1, 2), model="biexciton_rotating",
                extras={"rabi_over_delta": params.validity_ratio},
            )
        raise ConfigError(f"sequence kind {seq_kind!r} is not valid for the biexciton model")

    raise ConfigError(f"unhandled model kind {model_kind!r}")


def _basis_state(dim: int, index: int) -> np.ndarray:
    if not 0 <= index < dim:
        raise ConfigError(f"initial state index {index} out of range for dim {dim}")
    psi = np.zeros(dim, dtype=complex)
    psi[index] = 1.0
    return psi


def _run_hold_static(
    cfg: ExperimentConfig,
    hamiltonian: np.ndarray,
    dim: int,
    transfer_index: int,
    leak_index,
    model: str,
    extras: dict | None = None,
) -> RunResult:
    duration = cfg.number("sequence", "duration")
    samples = cfg.samples_for(duration)
    seq = PulseSequence((PulseSegment(rabi=0.0, phase=0.0, detuning=0.0, duration=duration),))
    psi0 = _basis_state(dim, cfg.initial_state_index)
    traj = run_sequence(seq, lambda _s: hamiltonian, psi0, samples,
                        cfg.integrator_method, model=model)
    return RunResult(traj, _hold_report(cfg, traj, transfer_index, leak_index, extras))


def _hold_report(cfg, traj, transfer_index, leak_index, extras=None) -> dict:
    pops = traj.populations()
    report = {
        "kind": "hold",
        "model": traj.model,
        "duration_fs": float(traj.times[-1]),
        "final_populations": [float(p) for p in pops[-1]],
        "trajectory": "trajectory.csv",
    }
    if leak_index is not None:
        idx = leak_index if isinstance(leak_index, tuple) else (leak_index,)
        report["max_leakage"] = max(float(pops[:, i].max()) for i in idx)
    try:
        report["measured_rabi"] = half_transfer_rate(traj.times, pops[:, transfer_index])
    except ValidityError:
        report["measured_rabi"] = None
    if extras:
        report["extras"] = {
            k: (float(v) if math.isfinite(float(v)) else None)
            for k, v in sorted(extras.items())
        }
    return report


def _run_lab_two_level(cfg: ExperimentConfig) -> RunResult:
    if cfg.sequence_kind != "hold":
        raise ConfigError("lab_two_level supports only the 'hold' sequence")
    params = TwoLevelParams(
        omega0=cfg.number("model", "omega0"),
        omega_laser=cfg.number("model", "omega_laser"),
        rabi=cfg.number("model", "rabi"),
        phase=cfg.number("model", "phase", 0.0),
    )
    duration = cfg.number("sequence", "duration")
    dt_raw = cfg.get("integrator", "dt")
    if dt_raw is None:
        # resolve the optical frequency, not just the Rabi envelope
        dt = min(0.05 / max(params.omega0, 1e-9), duration / 2000)
    else:
        from .config import parse_number

        dt = parse_number(dt_raw)
    h_of_t = build_lab_two_level(params)
    n_samples = cfg.samples_for(duration)
    ts = np.linspace(0.0, duration, n_samples + 1)
    states = [np.array([0j, 1.0 + 0j]) if cfg.initial_state_index == 1 else np.array([1.0 + 0j, 0j])]
    for a, b in zip(ts[:-1], ts[1:]):
        states.append(rk4_evolve(h_of_t, states[-1], a, b, dt).state)
    states = np.vstack(states)
    energies = np.array([float(np.real(np.vdot(s, h_of_t(t) @ s))) for t, s in zip(ts, states)])
    traj = Trajectory(times=ts, states=states, energies=energies, model="lab_two_level")
    return RunResult(traj, _hold_report(cfg, traj, transfer_index=1, leak_index=None))


# ---------------------------------------------------------------------------
# artifact writers
# ---------------------------------------------------------------------------

def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def write_trajectory_csv(traj: Trajectory, path: Path) -> None:
    d = traj.dim
    columns = ["t_fs"] + [f"pop_{k}" for k in range(d)]
    bloch = None
    if d == 2:
        columns += ["nx", "ny", "nz"]
        bloch = traj.bloch_vectors()
    columns += ["energy_exp", "dyn_phase_accum"]
    pops = traj.populations()
    lines = [",".join(columns)]
    for k in range(len(traj.times)):
        row = [_fmt(traj.times[k])]
        row += [_fmt(p) for p in pops[k]]
        if bloch is not None:
            row += [_fmt(x) for x in bloch[k]]
        row += [_fmt(traj.energies[k]), _fmt(traj.dyn_accum[k])]
        lines.append(",".join(row))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_json(payload: dict, path: Path) -> None:
    path.write_text(
        json.dumps(payload, indent=2, sort_keys=True, allow_nan=False) + "\n",
        encoding="utf-8",
    )


def sha256_of(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def run_to_directory(cfg: ExperimentConfig, out_dir: Path, quiet: bool = False) -> dict:
    """Execute a config and write trajectory, report and manifest files."""
    started = time.monotonic()
    out_dir.mkdir(parents=True, exist_ok=True)
    result = execute(cfg)
    outputs: dict[str, str] = {}
    if result.trajectory is not None:
        csv_path = out_dir / "trajectory.csv"
        write_trajectory_csv(result.trajectory, csv_path)
        outputs["trajectory.csv"] = sha256_of(csv_path)
    report_path = out_dir / "report.json"
    write_json(result.report, report_path)
    outputs["report.json"] = sha256_of(report_path)
    manifest = {
        "tool_version": __version__,
        "config_path": str(cfg.path) if cfg.path else None,
        "config_echo": cfg.sections,
        "runtime_seconds": time.monotonic() - started,
        "outputs": outputs,
    }
    write_json(manifest, out_dir / "manifest.json")
    if not quiet:
        print(f"wrote {out_dir}/trajectory.csv, report.json, manifest.json")
    return manifest


# ---------------------------------------------------------------------------
# validation (no execution)
# ---------------------------------------------------------------------------

def validate_config(cfg: ExperimentConfig, quiet: bool = False) -> list[str]:
    """Check schema and physics validity ratios; returns warning strings.

    Raises ConfigError for schema problems and ModelError/ValidityError
    (via the builders) for forbidden physical values.
    """
    warnings: list[str] = []
    model_kind = cfg.model_kind
    _ = cfg.sequence_kind, cfg.target_kind, cfg.integrator_method

    if model_kind in {"raman", "raman_effective"}:
        params = raman_params_from(cfg)
        ratio = abs(params.detuning) / max(params.rabi_plus, params.rabi_minus)
        if not quiet:
            print(f"detuning/rabi = {ratio:g}")
        if params.validity_ratio > 0.2:
            warnings.append(
                f"rabi/detuning = {params.validity_ratio:.3f} > 0.2: adiabatic "
                "elimination is unreliable"
            )
    elif model_kind == "biexciton":
        params = biexciton_params_from(cfg)
        if cfg.sequence_kind == "two_photon_phase" and params.delta == 0:
            raise ValidityError("delta = 0: singular shift, two-photon gate impossible")
        if params.delta == 0:
            warnings.append(
                "delta = 0: no two-photon resonance condition distinguishable "
                "from the single-photon lines"
            )
        else:
            ratio = params.validity_ratio
            if not quiet:
                print(f"rabi/delta = {ratio:g}")
            if ratio > 0.1:
                warnings.append(f"rabi/delta = {ratio:.3f} > 0.1: perturbative regime violated")
            resonant = two_photon_resonance(params.omega0, params.delta)
            for i, laser in ((1, params.laser1), (2, params.laser2)):
                if laser.frequency and abs(laser.frequency - resonant) > 1e-9:
                    warnings.append(
                        f"laser{i} frequency {laser.frequency:g} is off the "
                        f"two-photon resonance {resonant:g}"
                    )
    elif model_kind == "two_level":
        _ = _two_level_sequence(cfg)
    elif model_kind == "lab_two_level":
        params = TwoLevelParams(
            omega0=cfg.number("model", "omega0"),
            omega_laser=cfg.number("model", "omega_laser"),
            rabi=cfg.number("model", "rabi"),
            phase=cfg.number("model", "phase", 0.0),
        )
        if params.rabi > 0 and params.omega0 / params.rabi < 100:
            warnings.append(
                f"omega0/rabi = {params.omega0 / params.rabi:.1f} < 100: "
                "rotating-wave agreement degrades"
            )
    for w in warnings:
        if not quiet:
            print(f"warning: {w}")
    return warnings
