"""
Minimal circuit program: preparation, gates, measurements and gates
conditioned on previously measured classical bits.

A program is executed one shot at a time by ``CircuitProgram.run``. Measured
outcomes drive feed-forward directly; readout noise only corrupts the bits
reported in ``Execution.clbits`` (the physical outcomes stay in
``Execution.outcomes``).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Union

from .errors import CircuitError, QubitIndexError
from .gates import GATES, preparation_unitary
from .measure import MeasurementRecord, measure, measure_forced
from .noise import NOISELESS, NoiseConfig, apply_depolarizing, apply_readout_flip
from .rng import RandomSource
from .statevec import StateVector, apply_controlled, apply_single, marginal_probability, new_basis_state

GROUND_ATOL = 1e-12

# substream keys under a shot's RandomSource
_MEASURE_STREAM = 0
_NOISE_STREAM = 1


@dataclass(frozen=True)
class Prepare:
    qubit: int
    alpha: complex
    beta: complex


@dataclass(frozen=True)
class Gate:
    name: str
    target: int
    control: int | None = None
    condition: int | None = None  # classical bit that must read 1


@dataclass(frozen=True)
class Measure:
    qubit: int
    clbit: int


Instruction = Union[Prepare, Gate, Measure]


@dataclass
class Execution:
    state: StateVector
    outcomes: tuple[int, ...]
    clbits: tuple[int, ...]
    records: list[MeasurementRecord]
    applied: list[str]
    feedforward: list[str]
    trace: list[StateVector] | None = None

    @property
    def probability(self) -> float:
        """Joint probability of the recorded measurement outcomes."""
        p = 1.0
        for rec in self.records:
            p *= rec.probability
        return p


@dataclass
class CircuitProgram:
    num_qubits: int
    num_clbits: int
    instructions: list[Instruction] = field(default_factory=list)

    def __post_init__(self):
        instrs, self.instructions = list(self.instructions), []
        self._written: set[int] = set()
        for ins in instrs:
            self._append(ins)

    def _qubit(self, q: int) -> None:
        if not 0 <= q < self.num_qubits:
            raise QubitIndexError(f"qubit {q} out of range for {self.num_qubits} qubits")

    def _append(self, ins: Instruction) -> "CircuitProgram":
        if isinstance(ins, Prepare):
            self._qubit(ins.qubit)
            preparation_unitary(ins.alpha, ins.beta)
        elif isinstance(ins, Gate):
            if ins.name not in GATES:
                raise CircuitError(f"unknown gate {ins.name!r}")
            self._qubit(ins.target)
            if ins.control is not None:
                self._qubit(ins.control)
                if ins.control == ins.target:
                    raise CircuitError("control and target must differ")
            if ins.condition is not None and ins.condition not in self._written:
                raise CircuitError(f"condition reads classical bit {ins.condition} before it is written")
        elif isinstance(ins, Measure):
            self._qubit(ins.qubit)
            if not 0 <= ins.clbit < self.num_clbits:
                raise CircuitError(f"classical bit {ins.clbit} out of range for {self.num_clbits} bits")
            self._written.add(ins.clbit)
        else:
            raise CircuitError(f"not an instruction: {ins!r}")
        self.instructions.append(ins)
        return self

    def prepare(self, qubit: int, alpha: complex, beta: complex) -> "CircuitProgram":
        return self._append(Prepare(qubit, alpha, beta))

    def gate(self, name: str, target: int, *, control: int | None = None, condition: int | None = None):
        return self._append(Gate(name, target, control, condition))

    def measure(self, qubit: int, clbit: int) -> "CircuitProgram":
        return self._append(Measure(qubit, clbit))

    def __len__(self) -> int:
        return len(self.instructions)

    def run(
        self,
        rng: RandomSource | None = None,
        *,
        noise: NoiseConfig | None = None,
        forced: Mapping[int, int] | None = None,
        steps: int | None = None,
        trace: bool = False,
    ) -> Execution:
        """
        Execute one shot.

        Args:
            rng: randomness for unforced measurements and noise. May be None
                when every measurement is forced and noise is off.
            noise: noise configuration; None means noiseless.
            forced: classical bit -> outcome for measurements that collapse
                deterministically instead of sampling.
            steps: execute only the first `steps` instructions.
            trace: keep the state after every executed instruction.
        """
        noise = noise or NOISELESS
        forced = dict(forced or {})
        need_rng = noise.readout > 0 or noise.depolarizing > 0 or any(
            isinstance(i, Measure) and i.clbit not in forced for i in self.instructions[:steps]
        )
        if need_rng and rng is None:
            raise ValueError("a RandomSource is required for sampled measurements or noise")
        meas_rng = rng.spawn(_MEASURE_STREAM) if rng is not None else None
        noise_rng = rng.spawn(_NOISE_STREAM) if rng is not None else None

        state = new_basis_state(self.num_qubits, 0)
        bits = [0] * self.num_clbits
        written: list[int] = []
        records: list[MeasurementRecord] = []
        applied: list[str] = []
        feedforward: list[str] = []
        states: list[StateVector] | None = [] if trace else None

        for ins in self.instructions[:steps]:
            if isinstance(ins, Prepare):
                if marginal_probability(state, ins.qubit) > GROUND_ATOL:
                    raise CircuitError(f"qubit {ins.qubit} must be in |0> before preparation")
                state = apply_single(state, ins.qubit, preparation_unitary(ins.alpha, ins.beta))
            elif isinstance(ins, Gate):
                if ins.condition is None or bits[ins.condition]:
                    u = GATES[ins.name]
                    if ins.control is None:
                        state = apply_single(state, ins.target, u)
                        touched = (ins.target,)
                    else:
                        state = apply_controlled(state, ins.control, ins.target, u)
                        touched = (ins.control, ins.target)
                    applied.append(ins.name if ins.control is None else f"C{ins.name}")
                    if ins.condition is not None:
                        feedforward.append(ins.name)
                    for q in touched:
                        state = apply_depolarizing(state, q, noise.depolarizing, noise_rng)
            else:
                if ins.clbit in forced:
                    prob, state = measure_forced(state, ins.qubit, forced[ins.clbit])
                    rec = MeasurementRecord(ins.qubit, forced[ins.clbit], prob)
                else:
                    rec, state = measure(state, ins.qubit, meas_rng)
                records.append(rec)
                bits[ins.clbit] = rec.outcome
                written.append(ins.clbit)
            if states is not None:
                states.append(state)

        reported = list(bits)
        for c in sorted(set(written)):
            reported[c] = apply_readout_flip(bits[c], noise.readout, noise_rng)
        return Execution(state, tuple(bits), tuple(reported), records, applied, feedforward, states)
