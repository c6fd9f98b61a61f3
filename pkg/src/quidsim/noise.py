"""
Trajectory noise: Pauli depolarizing errors after gates and readout bit flips.

Both processes draw randomness only when their probability is positive, so a
disabled or zero-probability configuration consumes nothing from the stream
and reproduces the noiseless run exactly.
"""
from __future__ import annotations

from dataclasses import dataclass

from .gates import pauli_x, pauli_y, pauli_z
from .rng import RandomSource
from .statevec import StateVector, apply_single

_PAULIS = (pauli_x(), pauli_y(), pauli_z())


def _check_probability(name: str, p: float) -> None:
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {p!r}")


@dataclass(frozen=True)
class NoiseConfig:
    readout_flip_p: float = 0.0
    depolarizing_p: float = 0.0
    enabled: bool = True

    def __post_init__(self):
        _check_probability("readout_flip_p", self.readout_flip_p)
        _check_probability("depolarizing_p", self.depolarizing_p)

    @property
    def readout(self) -> float:
        return self.readout_flip_p if self.enabled else 0.0

    @property
    def depolarizing(self) -> float:
        return self.depolarizing_p if self.enabled else 0.0


NOISELESS = NoiseConfig(enabled=False)


def apply_readout_flip(bit: int, p: float, rng: RandomSource) -> int:
    """Flip `bit` with probability `p`."""
    _check_probability("p", p)
    if p == 0.0:
        return bit
    return bit ^ 1 if rng.random() < p else bit


def apply_depolarizing(state: StateVector, qubit: int, p: float, rng: RandomSource) -> StateVector:
    """With probability `p` apply X, Y or Z (uniformly) to `qubit`."""
    _check_probability("p", p)
    if p == 0.0 or rng.random() >= p:
        return state
    return apply_single(state, qubit, _PAULIS[rng.integers(3)])
