"""Piecewise-constant pulse sequences built from exact pi-pulses.

A "pi-pulse" here rotates the Bloch vector by exactly pi about the
effective-field axis: the duration is T = pi / (2 |B|) with
|B| = sqrt(rabi^2 + (detuning/2)^2), since U = exp(-i B.sigma T) turns
the Bloch vector by 2 |B| T.  This convention reproduces both reference
gate times (about 0.11 ps off-resonant, about 0.157 ps resonant) from
rabi = 0.02 rad/fs.

Segments switch instantaneously; there is no rise/fall shaping.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError
from .linalg import wrap_angle
from .models import bloch_field


@dataclass(frozen=True)
class PulseSegment:
    """One constant-parameter control interval.

    rabi, phase, detuning define the effective field; duration is in fs.
    """

    rabi: float
    phase: float
    detuning: float
    duration: float

    def __post_init__(self):
        if self.duration <= 0:
            raise ConfigurationError(f"segment duration must be > 0, got {self.duration}")
        if self.rabi < 0:
            raise ConfigurationError(f"rabi must be >= 0, got {self.rabi}")

    @property
    def field_magnitude(self) -> float:
        return float(np.linalg.norm(bloch_field(self.rabi, self.phase, self.detuning)))

    @property
    def rotation_angle(self) -> float:
        """Bloch-sphere rotation angle 2 |B| T swept during the segment."""
        return 2.0 * self.field_magnitude * self.duration


@dataclass(frozen=True)
class PulseSequence:
    """Ordered segments, optionally iterated ``repeats`` times."""

    segments: tuple[PulseSegment, ...]
    repeats: int = 1

    def __post_init__(self):
        if not self.segments:
            raise ConfigurationError("pulse sequence must contain at least one segment")
        if self.repeats < 1:
            raise ConfigurationError(f"repeats must be >= 1, got {self.repeats}")
        object.__setattr__(self, "segments", tuple(self.segments))

    @property
    def total_duration(self) -> float:
        return self.repeats * sum(s.duration for s in self.segments)

    def expanded(self) -> tuple[PulseSegment, ...]:
        """Segments with the repetition unrolled."""
        return self.segments * self.repeats


def make_pi_pulse(rabi: float, phase: float = 0.0, detuning: float = 0.0) -> PulseSegment:
    """Segment whose duration makes the Bloch rotation angle exactly pi."""
    b = float(np.linalg.norm(bloch_field(rabi, phase, detuning)))
    if b == 0.0:
        raise ConfigurationError("rabi and detuning are both zero: rotation axis undefined")
    if rabi == 0.0:
        warnings.warn(
            "pi-pulse with zero rabi rotates about z only (no population transfer)",
            stacklevel=2,
        )
    return PulseSegment(rabi=rabi, phase=wrap_angle(phase), detuning=detuning,
                        duration=math.pi / (2.0 * b))


def gate1_sequence(rabi: float, detuning: float, base_phase: float = 0.0) -> PulseSequence:
    """Two off-resonant pi-pulses with a pi phase jump between them.

    Realizes the rotation gate with angle gamma = 2 atan(2 rabi / detuning).
    """
    if detuning == 0.0:
        raise ConfigurationError(
            "gate 1 needs an off-resonant drive (detuning != 0); "
            "for the resonant phase gate use gate2_sequence"
        )
    return PulseSequence(
        (
            make_pi_pulse(rabi, base_phase, detuning),
            make_pi_pulse(rabi, base_phase + math.pi, detuning),
        )
    )


def gate2_sequence(rabi: float, phi0: float) -> PulseSequence:
    """Two resonant pi-pulses with opposite phases (phi0, -phi0).

    Realizes the selective phase gate: the logical states pick up opposite
    phases of magnitude 2*phi0 (modulo the overall spinor sign of the
    two half-turns).
    """
    if rabi <= 0.0:
        raise ConfigurationError(f"gate 2 needs rabi > 0, got {rabi}")
    return PulseSequence(
        (
            make_pi_pulse(rabi, phi0, 0.0),
            make_pi_pulse(rabi, -phi0, 0.0),
        )
    )


def repeat_sequence(seq: PulseSequence, n: int) -> PulseSequence:
    """Iterate the whole sequence ``n`` more times (multiplies ``repeats``)."""
    if n < 1:
        raise ConfigurationError(f"repeat count must be >= 1, got {n}")
    return PulseSequence(seq.segments, seq.repeats * n)
