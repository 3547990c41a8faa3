"""Non-adiabatic geometric gate simulation for exciton qubits.

Two-level, biexciton and Raman level schemes driven by piecewise-constant
pi-pulse sequences; geometric-phase bookkeeping on the Bloch sphere; gate
synthesis and verification; a config-driven experiment runner.
"""

__version__ = "0.1.0"

from .errors import (
    AagatesError,
    ConfigError,
    ConfigurationError,
    CyclicityError,
    ModelError,
    NumericalError,
    SamplingError,
    ValidityError,
)
from .linalg import (
    Operator,
    StateVector,
    gate_fidelity,
    propagator_constant,
    rk4_evolve,
    tensor,
)
from .models import (
    BiexcitonParams,
    LaserDrive,
    RamanParams,
    TwoLevelParams,
    build_biexciton_full,
    build_biexciton_rotating,
    build_lab_two_level,
    build_raman_effective,
    build_raman_three_level,
    build_rotating_two_level,
    build_two_photon_effective,
    frame_rotate,
    two_photon_resonance,
)
from .pulses import (
    PulseSegment,
    PulseSequence,
    gate1_sequence,
    gate2_sequence,
    make_pi_pulse,
    repeat_sequence,
)
from .geometry import (
    BlochSample,
    Trajectory,
    aa_phase,
    bloch_vector,
    dynamical_phase,
    solid_angle,
    swept_angle_gamma,
    total_phase,
)
from .gates import (
    GateReport,
    calibrate_two_photon_detuning,
    differential_phase,
    raman_gate,
    rotation_parameter,
    run_gate,
    synthesize_gate1,
    target_gate1,
    target_gate2,
    two_qubit_phase_gate,
)
