"""Statevector simulation of QuID-based remote entanglement and qubit teleportation."""
from .errors import (
    AmbiguousMatch,
    DuplicateHandle,
    ImpossibleOutcome,
    NoMatch,
    NonUnitaryGate,
    NotGroundState,
    NotNormalized,
    QuidsimError,
    UnknownHandle,
)
from .gates import bloch_coords, hadamard, identity, pauli_x, pauli_y, pauli_z, prepare_qubit
from .measure import Counts, MeasurementRecord, measure, measure_forced, sample_counts
from .noise import NoiseConfig, apply_depolarizing, apply_readout_flip
from .quid import QuID, QuidRegistry, QubitHandle, Register
from .rng import RandomSource
from .statevec import (
    StateVector,
    apply_controlled,
    apply_single,
    equal_up_to_global_phase,
    fidelity,
    new_basis_state,
    tensor,
)
from .circuit import CircuitProgram
from .teleport import (
    TeleportResult,
    build_experiment_program,
    build_teleport_program,
    correction_for,
    run_teleport_experiment,
    run_teleport_forced,
    run_teleport_statevector,
)

__version__ = "0.1.0"
