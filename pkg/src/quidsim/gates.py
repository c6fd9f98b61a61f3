"""Fixed gate set, single-qubit state preparation and Bloch coordinates."""
from __future__ import annotations

import math

import numpy as np

from .errors import NotNormalized
from .statevec import StateVector

# Printed amplitudes carry 5 decimals, which leaves |alpha|^2 + |beta|^2 up to
# ~2e-5 away from 1; anything inside this band is renormalized.
PREP_TOLERANCE = 1e-4

_S = 1 / math.sqrt(2)


def _const(rows) -> np.ndarray:
    m = np.array(rows, dtype=np.complex128)
    m.flags.writeable = False
    return m


_I = _const([[1, 0], [0, 1]])
_X = _const([[0, 1], [1, 0]])
_Y = _const([[0, -1j], [1j, 0]])
_Z = _const([[1, 0], [0, -1]])
_H = _const([[_S, _S], [_S, -_S]])


def identity() -> np.ndarray:
    return _I


def pauli_x() -> np.ndarray:
    return _X


def pauli_y() -> np.ndarray:
    return _Y


def pauli_z() -> np.ndarray:
    return _Z


def hadamard() -> np.ndarray:
    return _H


GATES = {"I": _I, "X": _X, "Y": _Y, "Z": _Z, "H": _H}


def gate(name: str) -> np.ndarray:
    """Look up a built-in gate by name (I, X, Y, Z, H)."""
    try:
        return GATES[name.upper()]
    except KeyError:
        raise ValueError(f"unknown gate {name!r}; expected one of {sorted(GATES)}") from None


def normalize_pair(alpha: complex, beta: complex, tol: float = PREP_TOLERANCE) -> tuple[complex, complex]:
    """Validate (alpha, beta) as a qubit and rescale it to unit squared norm."""
    alpha, beta = complex(alpha), complex(beta)
    if not all(math.isfinite(v) for v in (alpha.real, alpha.imag, beta.real, beta.imag)):
        raise NotNormalized("amplitudes must be finite")
    norm2 = abs(alpha) ** 2 + abs(beta) ** 2
    if abs(norm2 - 1.0) > tol:
        raise NotNormalized(f"|alpha|^2 + |beta|^2 = {norm2:.6g}, expected 1 (tolerance {tol:g})")
    scale = 1.0 / math.sqrt(norm2)
    return alpha * scale, beta * scale


def prepare_qubit(alpha: complex, beta: complex) -> StateVector:
    """Single-qubit state alpha|0> + beta|1>."""
    a, b = normalize_pair(alpha, beta)
    return StateVector([a, b])


def preparation_unitary(alpha: complex, beta: complex) -> np.ndarray:
    """Unitary whose first column is (alpha, beta), i.e. maps |0> to the qubit."""
    a, b = normalize_pair(alpha, beta)
    return np.array([[a, -b.conjugate()], [b, a.conjugate()]], dtype=np.complex128)


def bloch_coords(alpha: complex, beta: complex) -> tuple[float, float, float]:
    """
    Cartesian Bloch vector of alpha|0> + beta|1>.

    Uses x = 2 Re(conj(alpha) beta), y = 2 Im(conj(alpha) beta),
    z = |alpha|^2 - |beta|^2, which puts |0> on the north pole and
    (|0> + i|1>)/sqrt(2) on +y.
    """
    a, b = normalize_pair(alpha, beta)
    cross = a.conjugate() * b
    return 2.0 * cross.real, 2.0 * cross.imag, abs(a) ** 2 - abs(b) ** 2
