"""Projective measurement, forced-branch collapse and shot sampling."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Iterator, Mapping

import numpy as np

from .errors import ImpossibleOutcome
from .rng import RandomSource
from .statevec import StateVector, _check_qubit

if TYPE_CHECKING:
    from .circuit import CircuitProgram, Execution
    from .noise import NoiseConfig

IMPOSSIBLE_ATOL = 1e-12


@dataclass(frozen=True)
class MeasurementRecord:
    qubit: int
    outcome: int
    probability: float


def _collapse(state: StateVector, qubit: int, outcome: int) -> tuple[float, StateVector]:
    n = state.num_qubits
    amps = state.amplitudes.reshape(2 ** (n - 1 - qubit), 2, 2**qubit).copy()
    p1 = float(np.sum(np.abs(amps[:, 1, :]) ** 2))
    prob = p1 if outcome else 1.0 - p1
    if prob <= IMPOSSIBLE_ATOL:
        raise ImpossibleOutcome(f"outcome {outcome} on qubit {qubit} has probability {prob:.3e}")
    amps[:, 1 - outcome, :] = 0.0
    return prob, StateVector(amps.reshape(-1), normalize=True)


def measure(state: StateVector, qubit: int, rng: RandomSource) -> tuple[MeasurementRecord, StateVector]:
    """Sample a Born-rule outcome for `qubit` and return the collapsed state."""
    _check_qubit(state, qubit)
    n = state.num_qubits
    probs = state.probabilities().reshape(2 ** (n - 1 - qubit), 2, 2**qubit)
    p1 = float(probs[:, 1, :].sum())
    outcome = 1 if rng.random() < p1 else 0
    prob, collapsed = _collapse(state, qubit, outcome)
    return MeasurementRecord(qubit, outcome, prob), collapsed


def measure_forced(state: StateVector, qubit: int, outcome: int) -> tuple[float, StateVector]:
    """Collapse `qubit` onto `outcome`; returns the pre-collapse probability and the new state."""
    _check_qubit(state, qubit)
    if outcome not in (0, 1):
        raise ValueError(f"outcome must be 0 or 1, got {outcome!r}")
    return _collapse(state, qubit, outcome)


@dataclass(frozen=True)
class Counts:
    """
    Histogram of classical register readouts.

    Keys are fixed-width bitstrings printed with the highest classical bit on
    the left, so for the teleport experiment "b a p" reads Bob, m_A, m_psi.
    """

    counts: Mapping[str, int]
    width: int
    shots: int = field(default=-1)

    def __post_init__(self):
        counts = dict(sorted(self.counts.items()))
        for key, n in counts.items():
            if len(key) != self.width or set(key) - {"0", "1"}:
                raise ValueError(f"malformed bitstring key {key!r} for width {self.width}")
            if n < 0:
                raise ValueError(f"negative count for {key!r}")
        total = sum(counts.values())
        if self.shots == -1:
            object.__setattr__(self, "shots", total)
        elif total != self.shots:
            raise ValueError(f"counts sum to {total}, expected {self.shots}")
        object.__setattr__(self, "counts", counts)

    def __getitem__(self, key: str) -> int:
        return self.counts.get(key, 0)

    def frequencies(self) -> dict[str, float]:
        return {k: v / self.shots for k, v in self.counts.items()}

    def marginal(self, position: int) -> dict[str, int]:
        """Counts of the character at string `position` (0 = leftmost)."""
        out = Counter()
        for key, n in self.counts.items():
            out[key[position]] += n
        return {"0": out["0"], "1": out["1"]}


def bitstring(bits, width: int | None = None) -> str:
    """Render classical bits (index 0 first) with the highest index on the left."""
    bits = list(bits)
    if width is not None and len(bits) != width:
        raise ValueError(f"expected {width} bits, got {len(bits)}")
    return "".join(str(int(b)) for b in reversed(bits))


def iter_shots(
    program: "CircuitProgram",
    shots: int,
    rng: RandomSource,
    noise: "NoiseConfig | None" = None,
) -> Iterator["Execution"]:
    """Run `program` once per shot, each on its own substream ``rng.spawn(shot)``."""
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")
    for shot in range(shots):
        yield program.run(rng.spawn(shot), noise=noise)


def sample_counts(
    program: "CircuitProgram",
    shots: int,
    rng: RandomSource,
    noise: "NoiseConfig | None" = None,
) -> Counts:
    """Histogram of the reported classical register over `shots` independent runs."""
    hist = Counter(
        bitstring(run.clbits, program.num_clbits) for run in iter_shots(program, shots, rng, noise)
    )
    return Counts(hist, width=program.num_clbits, shots=shots)
