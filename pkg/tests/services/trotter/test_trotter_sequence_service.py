import numpy as np
import pytest
from scipy import linalg
from app.services.pauli.pauli_operator_service import materialize
from app.services.trotter.trotter_sequence_service import (
    FreeEvolution,
    IdealUnitary,
    PulseSequence,
    Rotation,
    ZPhase,
    sequence_inverse,
    sequence_unitary,
    verify_equivalence,
)
from app.utils.util_error_handle import DimensionError, MachineError, ValidationError


def test_pi_rotation_is_pauli(pauli_dense):
    u = sequence_unitary(PulseSequence(2, (Rotation((0,), "x", np.pi),)))
    assert np.allclose(u, -1j * pauli_dense("XI"))


def test_negative_axis_inverts(pauli_dense):
    forward = sequence_unitary(PulseSequence(1, (Rotation((0,), "y", 0.7),)))
    backward = sequence_unitary(PulseSequence(1, (Rotation((0,), "-y", 0.7),)))
    assert np.allclose(forward @ backward, np.eye(2))
    assert np.allclose(forward, linalg.expm(-0.35j * pauli_dense("Y")))


def test_zphase(pauli_dense):
    u = sequence_unitary(PulseSequence(2, (ZPhase(1, 0.4),)))
    assert np.allclose(u, linalg.expm(-0.2j * pauli_dense("IZ")))


def test_time_order():
    a = Rotation((0,), "x", np.pi / 2)
    b = Rotation((0,), "y", np.pi / 2)
    u = sequence_unitary(PulseSequence(1, (a, b)))
    ua = sequence_unitary(PulseSequence(1, (a,)))
    ub = sequence_unitary(PulseSequence(1, (b,)))
    assert np.allclose(u, ub @ ua)


def test_free_evolution_uses_machine(sample_machine):
    u = sequence_unitary(PulseSequence(4, (FreeEvolution(0.002),)), sample_machine)
    assert np.allclose(u, linalg.expm(-0.002j * materialize(sample_machine.hamiltonian())))
    with pytest.raises(MachineError):
        sequence_unitary(PulseSequence(4, (FreeEvolution(0.002),)))


def test_inverse_sequence(sample_machine):
    s = PulseSequence(4, (
        Rotation((0, 2), "x", 0.3),
        FreeEvolution(0.001),
        ZPhase(3, -1.1),
        Rotation((1,), "-y", 2.0),
    ))
    u = sequence_unitary(s, sample_machine)
    inverse = sequence_unitary(sequence_inverse(s, sample_machine), sample_machine)
    assert np.allclose(inverse @ u, np.eye(16))


def test_instruction_validation():
    with pytest.raises(ValidationError):
        FreeEvolution(-1.0)
    with pytest.raises(ValidationError):
        Rotation((0,), "z", 1.0)
    with pytest.raises(ValidationError):
        Rotation((0, 0), "x", 1.0)
    with pytest.raises(ValidationError):
        PulseSequence(2, (Rotation((2,), "x", 1.0),))
    with pytest.raises(DimensionError):
        PulseSequence(2, (IdealUnitary("bad", np.eye(2)),))


def test_free_time_and_concatenation():
    a = PulseSequence(4, (FreeEvolution(0.5), Rotation((0,), "x", 1.0)))
    b = PulseSequence(4, (FreeEvolution(0.25),))
    joined = a + b
    assert len(joined) == 3
    assert joined.free_time == pytest.approx(0.75)
    assert joined.is_machine_program
    assert a.repeated(3).free_time == pytest.approx(1.5)


def test_equivalence_ignores_global_phase(rng):
    q, _ = np.linalg.qr(rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8)))
    distance, phase = verify_equivalence(np.exp(0.9j) * q, q)
    assert distance < 1e-12
    assert phase == pytest.approx(np.exp(0.9j))


def test_equivalence_detects_difference(rng):
    q, _ = np.linalg.qr(rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4)))
    distance, _ = verify_equivalence(q, np.eye(4))
    assert distance > 1e-3


def test_equivalence_rejects_non_unitary():
    with pytest.raises(ValidationError):
        verify_equivalence(2.0 * np.eye(2), np.eye(2))
    with pytest.raises(DimensionError):
        verify_equivalence(np.eye(2), np.eye(4))
