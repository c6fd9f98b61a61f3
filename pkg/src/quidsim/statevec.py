"""
Dense complex statevector for small qubit registers.

Indexing is little-endian: bit k of a basis index holds qubit k, so qubit 0 is
the least significant bit. For the three-qubit teleport register (q0 = psi,
q1 = A, q2 = B) the ket |psi A B> sits at index psi + 2*A + 4*B.

All operations return new StateVector objects; the amplitude buffer of an
existing state is never written to.
"""
from __future__ import annotations

from typing import Union

import numpy as np

from .errors import CapacityError, NonUnitaryGate, NotNormalized, QubitIndexError

MAX_QUBITS = 20
NORM_ATOL = 1e-9
UNITARY_ATOL = 1e-10

ArrayLike = Union["StateVector", np.ndarray, list, tuple]


class StateVector:
    """Normalized vector of 2**num_qubits complex128 amplitudes."""

    __slots__ = ("_amps", "num_qubits")

    def __init__(self, amplitudes, *, normalize: bool = False, max_qubits: int = MAX_QUBITS):
        amps = np.array(amplitudes, dtype=np.complex128).reshape(-1)
        size = amps.size
        if size < 2 or size & (size - 1):
            raise ValueError(f"amplitude count must be a power of two >= 2, got {size}")
        n = size.bit_length() - 1
        if n > max_qubits:
            raise CapacityError(f"{n} qubits exceeds the limit of {max_qubits}")
        if not np.all(np.isfinite(amps)):
            raise ValueError("amplitudes must be finite")
        norm = np.sqrt(np.vdot(amps, amps).real)
        if normalize:
            if norm == 0.0:
                raise NotNormalized("cannot normalize the zero vector")
            amps /= norm
        elif abs(norm * norm - 1.0) > NORM_ATOL:
            raise NotNormalized(f"squared norm {norm * norm!r} differs from 1")
        amps.flags.writeable = False
        self._amps = amps
        self.num_qubits = n

    @property
    def amplitudes(self) -> np.ndarray:
        """Read-only view of the amplitudes."""
        return self._amps

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self._amps.copy() if copy else self._amps
        return self._amps.astype(dtype)

    def __len__(self) -> int:
        return self._amps.size

    def __getitem__(self, index):
        return self._amps[index]

    def __repr__(self) -> str:
        return f"StateVector(num_qubits={self.num_qubits}, amplitudes={self._amps!r})"

    def probabilities(self) -> np.ndarray:
        return np.abs(self._amps) ** 2

    def norm(self) -> float:
        return float(np.sqrt(np.vdot(self._amps, self._amps).real))


def _as_array(state: ArrayLike) -> np.ndarray:
    if isinstance(state, StateVector):
        return state.amplitudes
    return np.asarray(state, dtype=np.complex128).reshape(-1)


def _check_qubit(state: StateVector, qubit: int, what: str = "qubit") -> None:
    if not 0 <= qubit < state.num_qubits:
        raise QubitIndexError(f"{what} {qubit} out of range for {state.num_qubits} qubits")


def check_unitary(u: np.ndarray, atol: float = UNITARY_ATOL) -> np.ndarray:
    """Return `u` as a 2x2 complex array, raising NonUnitaryGate if it is not unitary."""
    u = np.asarray(u, dtype=np.complex128)
    if u.shape != (2, 2):
        raise NonUnitaryGate(f"expected a 2x2 matrix, got shape {u.shape}")
    err = np.max(np.abs(u.conj().T @ u - np.eye(2)))
    if not err <= atol:
        raise NonUnitaryGate(f"matrix is not unitary (max |U^dag U - I| = {err:.3e})")
    return u


def new_basis_state(num_qubits: int, basis_index: int = 0, *, max_qubits: int = MAX_QUBITS) -> StateVector:
    """Computational basis state |basis_index> on `num_qubits` qubits."""
    if num_qubits < 1:
        raise ValueError("num_qubits must be >= 1")
    if num_qubits > max_qubits:
        raise CapacityError(f"{num_qubits} qubits exceeds the limit of {max_qubits}")
    if not 0 <= basis_index < 2**num_qubits:
        raise QubitIndexError(f"basis index {basis_index} out of range for {num_qubits} qubits")
    amps = np.zeros(2**num_qubits, dtype=np.complex128)
    amps[basis_index] = 1.0
    return StateVector(amps, max_qubits=max_qubits)


def tensor(a: StateVector, b: StateVector, *, max_qubits: int = MAX_QUBITS) -> StateVector:
    """Joint state of two registers; `a` takes the low-order qubit positions."""
    total = a.num_qubits + b.num_qubits
    if total > max_qubits:
        raise CapacityError(f"{total} qubits exceeds the limit of {max_qubits}")
    # index = ia + 2**na * ib, so b varies slowest
    return StateVector(np.kron(b.amplitudes, a.amplitudes), max_qubits=max_qubits)


def apply_single(state: StateVector, target: int, u: np.ndarray) -> StateVector:
    """Apply a 2x2 unitary to one qubit."""
    _check_qubit(state, target, "target")
    u = check_unitary(u)
    n = state.num_qubits
    psi = state.amplitudes.reshape(2 ** (n - 1 - target), 2, 2**target)
    out = np.einsum("ab,ibj->iaj", u, psi)
    return StateVector(out.reshape(-1), max_qubits=max(n, MAX_QUBITS))


def apply_controlled(state: StateVector, control: int, target: int, u: np.ndarray) -> StateVector:
    """Apply `u` to `target` on the basis states where `control` is 1."""
    _check_qubit(state, control, "control")
    _check_qubit(state, target, "target")
    if control == target:
        raise QubitIndexError("control and target must differ")
    u = check_unitary(u)
    n = state.num_qubits
    psi = state.amplitudes.reshape((2,) * n).copy()
    # C-order reshape puts qubit k on axis n-1-k
    c_ax, t_ax = n - 1 - control, n - 1 - target
    sel = [slice(None)] * n
    sel[c_ax] = 1
    sel = tuple(sel)
    sub_t = t_ax - (t_ax > c_ax)
    moved = np.tensordot(u, psi[sel], axes=([1], [sub_t]))
    psi[sel] = np.moveaxis(moved, 0, sub_t)
    return StateVector(psi.reshape(-1), max_qubits=max(n, MAX_QUBITS))


def marginal_probability(state: StateVector, qubit: int) -> float:
    """Born probability that `qubit` reads 1."""
    _check_qubit(state, qubit)
    n = state.num_qubits
    probs = state.probabilities().reshape(2 ** (n - 1 - qubit), 2, 2**qubit)
    return float(probs[:, 1, :].sum())


def fidelity(a: ArrayLike, b: ArrayLike) -> float:
    """|<a|b>|^2 for two pure states of equal dimension."""
    va, vb = _as_array(a), _as_array(b)
    if va.shape != vb.shape:
        raise ValueError(f"dimension mismatch: {va.size} vs {vb.size}")
    f = abs(np.vdot(va, vb)) ** 2
    return float(min(max(f, 0.0), 1.0))


def equal_up_to_global_phase(a: ArrayLike, b: ArrayLike, tol: float = 1e-9) -> bool:
    """True if a == c*b for some |c| = 1, compared elementwise within `tol`."""
    va, vb = _as_array(a), _as_array(b)
    if va.shape != vb.shape:
        return False
    overlap = np.vdot(vb, va)
    phase = overlap / abs(overlap) if abs(overlap) > 0 else 1.0
    return bool(np.max(np.abs(va - phase * vb)) <= tol)
