"""
Single-qubit teleportation over a Bell pair.

Register layout: q0 holds the state to send (psi), q1 is Alice's half of
the pair (A) and q2 is Bob's (B). Classical bit 0 stores m_psi, bit 1 stores
m_A and, in the sampling experiment, bit 2 stores Bob's final readout.

Bob corrects with X when m_A = 1 and Z when m_psi = 1, X first. For the
(1, 1) branch this returns +(alpha, beta) exactly; the opposite order gives
-(alpha, beta), which differs only by a global phase.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .circuit import CircuitProgram, Execution
from .measure import Counts, sample_counts
from .noise import NoiseConfig
from .quid import QuID
from .rng import RandomSource
from .statevec import StateVector

PSI, ALICE, BOB = 0, 1, 2
M_PSI, M_A, M_BOB = 0, 1, 2

# instruction count of the teleport program before Bob's corrections
_PRE_CORRECTION_STEPS = 7

QubitSpec = Union[QuID, tuple]


def _as_quid(psi: QubitSpec) -> QuID:
    return psi if isinstance(psi, QuID) else QuID(*psi)


def correction_for(m_psi: int, m_a: int) -> list[str]:
    """Gates Bob applies, in order, after Alice reports (m_psi, m_a)."""
    if m_psi not in (0, 1) or m_a not in (0, 1):
        raise ValueError(f"measurement bits must be 0 or 1, got ({m_psi}, {m_a})")
    return (["X"] if m_a else []) + (["Z"] if m_psi else [])


def _append_protocol(prog: CircuitProgram) -> CircuitProgram:
    # Bell pair between A and B
    prog.gate("H", ALICE).gate("X", BOB, control=ALICE)
    # Alice's basis change
    prog.gate("X", ALICE, control=PSI).gate("H", PSI)
    prog.measure(PSI, M_PSI).measure(ALICE, M_A)
    prog.gate("X", BOB, condition=M_A).gate("Z", BOB, condition=M_PSI)
    return prog


def build_teleport_program(psi: QubitSpec) -> CircuitProgram:
    """Three-qubit teleport circuit sending `psi` from q0 to q2."""
    q = _as_quid(psi)
    prog = CircuitProgram(3, 2)
    prog.prepare(PSI, q.alpha, q.beta)
    return _append_protocol(prog)


def build_experiment_program(prep_bit: int) -> CircuitProgram:
    """
    Sampling experiment: teleport H|prep_bit>, undo the H on Bob's side and
    read Bob's qubit into classical bit 2.
    """
    if prep_bit not in (0, 1):
        raise ValueError(f"prep_bit must be 0 or 1, got {prep_bit!r}")
    prog = CircuitProgram(3, 3)
    prog.prepare(PSI, 1 - prep_bit, prep_bit)
    prog.gate("H", PSI)
    _append_protocol(prog)
    prog.gate("H", BOB).measure(BOB, M_BOB)
    return prog


@dataclass(frozen=True)
class TeleportResult:
    prepared: tuple[complex, complex]
    m_psi: int
    m_a: int
    corrections_applied: tuple[str, ...]
    final_state: StateVector
    bob_amplitudes: tuple[complex, complex]
    pre_correction: tuple[complex, complex]
    probability: float

    @property
    def branch(self) -> tuple[int, int]:
        return self.m_psi, self.m_a


def bob_amplitudes(state: StateVector, m_psi: int, m_a: int) -> tuple[complex, complex]:
    """Bob's (alpha, beta) once Alice's qubits have collapsed to (m_psi, m_a)."""
    base = m_psi + 2 * m_a
    return complex(state[base]), complex(state[base + 4])


def _result(quid: QuID, run: Execution) -> TeleportResult:
    m_psi, m_a = run.outcomes[M_PSI], run.outcomes[M_A]
    pre = run.trace[_PRE_CORRECTION_STEPS - 1]
    return TeleportResult(
        prepared=(quid.alpha, quid.beta),
        m_psi=m_psi,
        m_a=m_a,
        corrections_applied=tuple(run.feedforward),
        final_state=run.state,
        bob_amplitudes=bob_amplitudes(run.state, m_psi, m_a),
        pre_correction=bob_amplitudes(pre, m_psi, m_a),
        probability=run.probability,
    )


def run_teleport_statevector(psi: QubitSpec, rng: RandomSource) -> TeleportResult:
    """Teleport `psi` with seeded random measurement collapse."""
    quid = _as_quid(psi)
    return _result(quid, build_teleport_program(quid).run(rng, trace=True))


def run_teleport_forced(psi: QubitSpec, m_psi: int, m_a: int) -> TeleportResult:
    """Teleport `psi` along the branch where Alice measures (m_psi, m_a)."""
    quid = _as_quid(psi)
    run = build_teleport_program(quid).run(forced={M_PSI: m_psi, M_A: m_a}, trace=True)
    return _result(quid, run)


def run_teleport_experiment(
    prep_bit: int, shots: int, noise: NoiseConfig | None, rng: RandomSource
) -> tuple[Counts, float]:
    """
    Sample the teleport experiment `shots` times.

    Returns the histogram (keys "<bob><m_A><m_psi>") and the fraction of shots
    whose reported Bob bit differs from `prep_bit`.
    """
    counts = sample_counts(build_experiment_program(prep_bit), shots, rng, noise)
    errors = counts.marginal(0)[str(1 - prep_bit)]
    return counts, errors / counts.shots
