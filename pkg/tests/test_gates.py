import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from quidsim.errors import NotNormalized
from quidsim.gates import (
    GATES,
    bloch_coords,
    gate,
    hadamard,
    identity,
    pauli_x,
    pauli_z,
    preparation_unitary,
    prepare_qubit,
)
from quidsim.statevec import apply_single, check_unitary

import oracles

GOLDEN_1 = (-0.57659 + 0.24170j, -0.59478 - 0.50532j)
# frozen from oracles.bloch_from_angles(*GOLDEN_1)
GOLDEN_1_BLOCH = (0.44162268804075416, 0.8702533450850376, -0.2182395857216584)


@st.composite
def qubits(draw):
    theta = draw(st.floats(0, math.pi))
    phi = draw(st.floats(0, 2 * math.pi))
    gamma = draw(st.floats(0, 2 * math.pi))
    return (
        math.cos(theta / 2) * complex(math.cos(gamma), math.sin(gamma)),
        math.sin(theta / 2) * complex(math.cos(gamma + phi), math.sin(gamma + phi)),
    )


def test_standard_matrices():
    s = 1 / math.sqrt(2)
    np.testing.assert_allclose(hadamard(), [[s, s], [s, -s]])
    np.testing.assert_array_equal(pauli_x(), [[0, 1], [1, 0]])
    np.testing.assert_array_equal(pauli_z(), [[1, 0], [0, -1]])
    np.testing.assert_array_equal(identity(), np.eye(2))


@pytest.mark.parametrize("name", sorted(GATES))
def test_builtins_unitary(name):
    u = GATES[name]
    assert np.max(np.abs(u.conj().T @ u - np.eye(2))) <= 1e-12
    check_unitary(u, atol=1e-12)


def test_gate_identities():
    np.testing.assert_allclose(hadamard() @ hadamard(), np.eye(2), atol=1e-15)
    np.testing.assert_array_equal(pauli_z() @ [0, 1], [0, -1])
    a, b = 0.6, 0.8j
    np.testing.assert_array_equal(pauli_x() @ [b, a], [a, b])


def test_gate_lookup():
    assert gate("h") is hadamard()
    with pytest.raises(ValueError):
        gate("T")


def test_prepare_qubit():
    np.testing.assert_array_equal(prepare_qubit(1, 0).amplitudes, [1, 0])
    s = prepare_qubit(*GOLDEN_1)
    assert abs(s.norm() - 1) < 1e-12
    np.testing.assert_allclose(s.amplitudes, GOLDEN_1, atol=1e-4)
    with pytest.raises(NotNormalized):
        prepare_qubit(0.8, 0.7)


@given(qubits())
def test_preparation_unitary_maps_zero(q):
    u = preparation_unitary(*q)
    check_unitary(u)
    np.testing.assert_allclose(u[:, 0], q, atol=1e-12)


def test_bloch_examples():
    assert bloch_coords(1, 0) == pytest.approx((0, 0, 1))
    s = 1 / math.sqrt(2)
    assert bloch_coords(s, 1j * s) == pytest.approx((0, 1, 0), abs=1e-12)
    assert bloch_coords(s, s) == pytest.approx((1, 0, 0), abs=1e-12)


def test_bloch_golden_state_against_angle_oracle():
    x, y, z = bloch_coords(*GOLDEN_1)
    assert (x, y, z) == pytest.approx(GOLDEN_1_BLOCH, abs=1e-12)
    assert (x, y, z) == pytest.approx(oracles.bloch_from_angles(*GOLDEN_1), abs=1e-12)
    assert abs(x * x + y * y + z * z - 1) <= 1e-9


@given(qubits())
def test_bloch_unit_sphere_and_oracle(q):
    v = bloch_coords(*prepare_qubit(*q).amplitudes)
    assert abs(sum(c * c for c in v) - 1) <= 1e-9
    assert v == pytest.approx(oracles.bloch_from_angles(*q), abs=1e-9)


def test_bloch_rejects_unnormalized():
    with pytest.raises(NotNormalized):
        bloch_coords(1, 1)


@given(qubits())
def test_double_hadamard_reversible(q):
    s = prepare_qubit(*q)
    back = apply_single(apply_single(s, 0, hadamard()), 0, hadamard())
    np.testing.assert_allclose(back.amplitudes, s.amplitudes, atol=1e-12)
