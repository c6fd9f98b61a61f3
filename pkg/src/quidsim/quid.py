"""
Qubit identities (QuIDs), a registry of identified qubits, finite-resolution
tomography, and remote entanglement by identity lookup.

A QuID is the (alpha, beta) pair fixed when a qubit is registered. It labels
the qubit; it is not kept in sync with the qubit's evolving state. The
physical state of each qubit lives in a Register, and remote entanglement
fuses the local and peer registers into one joint statevector before
building the Bell pair on it.
"""
from __future__ import annotations

import itertools
import math
import threading
from dataclasses import dataclass

import numpy as np

from .errors import AmbiguousMatch, DuplicateHandle, NoMatch, NotGroundState, NotNormalized, UnknownHandle
from .gates import hadamard, normalize_pair, pauli_x
from .statevec import (
    MAX_QUBITS,
    StateVector,
    apply_controlled,
    apply_single,
    marginal_probability,
    new_basis_state,
    tensor,
)

GROUND_ATOL = 1e-12


@dataclass(frozen=True)
class QuID:
    """Identity pair of a qubit, stored with unit squared norm."""

    alpha: complex
    beta: complex

    def __post_init__(self):
        a, b = normalize_pair(self.alpha, self.beta)
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)

    @classmethod
    def from_unnormalized(cls, alpha: complex, beta: complex) -> "QuID":
        """Rescale any nonzero finite pair onto the unit sphere."""
        norm = math.sqrt(abs(alpha) ** 2 + abs(beta) ** 2)
        if not math.isfinite(norm) or norm == 0.0:
            raise NotNormalized("cannot normalize a zero or non-finite pair")
        return cls(complex(alpha) / norm, complex(beta) / norm)

    def components(self) -> np.ndarray:
        """(Re alpha, Im alpha, Re beta, Im beta)."""
        return np.array([self.alpha.real, self.alpha.imag, self.beta.real, self.beta.imag])

    def distance(self, other: "QuID") -> float:
        """Largest absolute difference over the four real components."""
        return float(np.max(np.abs(self.components() - other.components())))


def quantize(quid: QuID, resolution: float) -> np.ndarray:
    """Round each real component of `quid` to the nearest multiple of `resolution` (ties round up)."""
    if not resolution >= 0.0 or not math.isfinite(resolution):
        raise ValueError(f"resolution must be a finite value >= 0, got {resolution!r}")
    comps = quid.components()
    if resolution == 0.0:
        return comps
    return np.floor(comps / resolution + 0.5) * resolution


class Register:
    """A group of qubits sharing one joint statevector."""

    def __init__(self, num_qubits: int = 1):
        self.state = new_basis_state(num_qubits)
        self.qubits: list[QubitHandle] = []

    @classmethod
    def fresh(cls, num_qubits: int = 1, names=None) -> tuple["Register", list["QubitHandle"]]:
        """New register in |0...0> together with one handle per qubit."""
        reg = cls(num_qubits)
        names = list(names) if names is not None else [None] * num_qubits
        handles = [QubitHandle(reg, i, name) for i, name in enumerate(names)]
        reg.qubits = handles
        return reg, handles

    @property
    def num_qubits(self) -> int:
        return self.state.num_qubits


class QubitHandle:
    """Opaque reference to one qubit: its register and position there."""

    _ids = itertools.count()

    __slots__ = ("id", "name", "register", "position")

    def __init__(self, register: Register, position: int, name: str | None = None):
        self.id = next(QubitHandle._ids)
        self.name = name
        self.register = register
        self.position = position

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        return f"<QubitHandle #{self.id}{label} pos={self.position}>"


class QuidRegistry:
    """Lookup from qubit handles to their registered identities."""

    def __init__(self):
        self._entries: dict[int, tuple[QubitHandle, QuID]] = {}
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, handle: QubitHandle) -> bool:
        return handle.id in self._entries

    def register(self, handle: QubitHandle, quid: QuID) -> None:
        with self._lock:
            if handle.id in self._entries:
                raise DuplicateHandle(f"{handle!r} is already registered")
            self._entries[handle.id] = (handle, quid)

    def new_qubit(self, quid: QuID, name: str | None = None) -> QubitHandle:
        """Allocate a single-qubit register in |0> and register it under `quid`."""
        _, (handle,) = Register.fresh(1, [name])
        self.register(handle, quid)
        return handle

    def quid(self, handle: QubitHandle) -> QuID:
        try:
            return self._entries[handle.id][1]
        except KeyError:
            raise UnknownHandle(f"{handle!r} is not registered") from None

    def handles(self) -> list[QubitHandle]:
        return [h for h, _ in self._entries.values()]

    def tomography(self, handle: QubitHandle, resolution: float = 0.0) -> QuID:
        """
        Estimate the QuID of `handle` with finite resolving power.

        Each real component is rounded to the nearest multiple of `resolution`
        and the result is renormalized; resolution 0 returns the exact QuID.
        """
        quid = self.quid(handle)
        if resolution == 0.0:
            return quid
        c = quantize(quid, resolution)
        try:
            return QuID.from_unnormalized(complex(c[0], c[1]), complex(c[2], c[3]))
        except NotNormalized:
            raise ValueError(f"resolution {resolution} rounds every component to zero") from None

    def find(self, peer: QuID, tol: float, exclude: QubitHandle | None = None) -> QubitHandle:
        """The unique registered qubit whose QuID lies within `tol` of `peer`."""
        matches = [
            h for h, q in self._entries.values()
            if (exclude is None or h.id != exclude.id) and q.distance(peer) <= tol
        ]
        if not matches:
            raise NoMatch(f"no registered QuID within {tol:g} of {peer}")
        if len(matches) > 1:
            raise AmbiguousMatch(f"{len(matches)} registered QuIDs lie within {tol:g} of {peer}")
        return matches[0]

    def remote_entangle(
        self, local: QubitHandle, peer: QuID, tol: float = 1e-9, *, max_qubits: int = MAX_QUBITS
    ) -> StateVector:
        """
        Entangle `local` with the qubit identified by `peer` into (|00> + |11>)/sqrt(2).

        The two registers are fused (local register in the low-order positions),
        then H on the local qubit and CNOT local -> peer are applied. Returns the
        fused register's state; both handles point at the fused register afterwards.
        """
        with self._lock:
            if local.id not in self._entries:
                raise UnknownHandle(f"{local!r} is not registered")
            target = self.find(peer, tol, exclude=local)
            for h in (local, target):
                if marginal_probability(h.register.state, h.position) > GROUND_ATOL:
                    raise NotGroundState(f"{h!r} is not in |0>")

            reg = local.register
            other = target.register
            if other is not reg:
                offset = reg.num_qubits
                reg.state = tensor(reg.state, other.state, max_qubits=max_qubits)
                for h in other.qubits:
                    h.register = reg
                    h.position += offset
                reg.qubits.extend(other.qubits)
                other.qubits = []

            state = apply_single(reg.state, local.position, hadamard())
            state = apply_controlled(state, local.position, target.position, pauli_x())
            reg.state = state
            return state


def register_qubit(registry: QuidRegistry, handle: QubitHandle, quid: QuID) -> None:
    registry.register(handle, quid)


def tomography(registry: QuidRegistry, handle: QubitHandle, resolution: float = 0.0) -> QuID:
    return registry.tomography(handle, resolution)


def remote_entangle(registry: QuidRegistry, local: QubitHandle, peer: QuID, tol: float = 1e-9) -> StateVector:
    return registry.remote_entangle(local, peer, tol)
