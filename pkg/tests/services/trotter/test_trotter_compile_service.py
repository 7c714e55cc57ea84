import numpy as np
import pytest
from scipy import linalg
from app.services.pauli.pauli_string_service import PauliString
from app.services.pauli.pauli_operator_service import materialize
from app.services.trotter.trotter_machine_service import NmrMachine, random_machine
from app.services.trotter.trotter_sequence_service import FreeEvolution, PulseSequence, sequence_unitary, verify_equivalence
from app.services.trotter.trotter_step_service import four_body_unitary, trotter_unitary
from app.services.trotter.trotter_compile_service import (
    FourBodyVariant,
    VerificationReport,
    compile_four_body,
    compile_trotter_step,
    literal_parameters,
    missing_divisors,
    require_passed,
    verify_four_body,
    verify_trotter_step,
    zz_evolution,
)
from app.utils.util_error_handle import EXIT_VERIFICATION, MachineError, ValidationError, VerificationError

TAUS = (0.01, 0.05, 0.1, 0.3)


def _zz_label(a: int, b: int) -> str:
    letters = ["I"] * 4
    letters[a] = letters[b] = "Z"
    return "".join(letters)


@pytest.mark.parametrize("a,b", [(0, 1), (2, 3), (0, 2), (1, 3), (0, 3)])
@pytest.mark.parametrize("phi", [0.4, -1.1, np.pi / 4])
def test_zz_evolution_is_exact(sample_machine, a, b, phi):
    s = PulseSequence(4, zz_evolution(a, b, phi, sample_machine))
    target = linalg.expm(-1j * phi * materialize(PauliString.from_label(_zz_label(a, b))))
    distance, _ = verify_equivalence(sequence_unitary(s, sample_machine), target)
    assert distance <= 1e-9


def test_zz_evolution_segments(sample_machine):
    instructions = zz_evolution(0, 1, 0.5, sample_machine)
    segments = [i for i in instructions if isinstance(i, FreeEvolution)]
    assert len(segments) == 4
    expected = 0.5 / (2.0 * np.pi * 69.0)
    assert all(s.duration == pytest.approx(expected) for s in segments)
    assert zz_evolution(0, 1, 0.0, sample_machine) == ()


def test_refocused_four_body_on_random_machines():
    rng = np.random.default_rng(7)
    for index in range(25):
        m = random_machine(rng, name=f"random_{index}")
        J = float(rng.uniform(-2.0, 2.0))
        for tau in TAUS:
            s = compile_four_body(J, tau, m)
            assert s.is_machine_program
            distance, _ = verify_equivalence(sequence_unitary(s, m), four_body_unitary(J, tau))
            assert distance <= 1e-8


def test_zero_duration_is_identity(sample_machine):
    s = compile_four_body(1.0, 0.0, sample_machine)
    distance, _ = verify_equivalence(sequence_unitary(s, sample_machine), np.eye(16))
    assert distance <= 1e-8


def test_negative_duration_rejected(sample_machine):
    for variant in FourBodyVariant:
        with pytest.raises(ValidationError):
            compile_four_body(1.0, -0.1, sample_machine, variant)


def test_compiled_trotter_step(sample_machine):
    report = verify_trotter_step(0.7, 1.3, 0.05, sample_machine)
    assert report.passed
    assert report.distance <= 1e-8
    assert report.free_time > 0.0
    s = compile_trotter_step(0.7, 1.3, 0.05, sample_machine)
    distance, _ = verify_equivalence(sequence_unitary(s, sample_machine), trotter_unitary(0.7, 1.3, 0.05))
    assert distance <= 1e-8


def test_zero_divisor_is_named():
    m = NmrMachine.from_named([1000.0, -800.0, 600.0, -400.0], {"J12": 50.0, "J34": 40.0, "J14": 5.0})
    assert missing_divisors(m) == ["J13"]
    with pytest.raises(MachineError) as info:
        verify_four_body(1.0, 0.1, m)
    assert info.value.coupling == "J13"


def test_literal_variant_is_reported(sample_machine):
    params = literal_parameters(1.0, 0.05, sample_machine)
    assert params["tau1"] == pytest.approx(1.0 / (4.0 * 52.0))
    assert params["tau2"] == pytest.approx(1.0 / (4.0 * 69.0))
    assert params["tau3"] == pytest.approx(2.0 * 0.05 / (np.pi * 35.0))
    report = verify_four_body(1.0, 0.05, sample_machine, FourBodyVariant.LITERAL)
    assert report.variant == "literal"
    assert report.threshold == pytest.approx(1e-8)
    assert np.isfinite(report.distance)
    assert report.passed == (report.distance <= report.threshold)


def test_literal_negative_delay_becomes_report(sample_machine):
    # J < 0 時 τ3 為負：構造失敗被記入報告
    report = verify_four_body(-1.0, 0.05, sample_machine, FourBodyVariant.LITERAL)
    assert not report.passed
    assert report.distance == float("inf")
    assert report.note


def test_require_passed():
    ok = VerificationReport("four_body", "refocused", 1e-12, 1e-8, True)
    require_passed(ok)
    failed = VerificationReport("four_body", "literal", 0.4, 1e-8, False)
    with pytest.raises(VerificationError) as info:
        require_passed(failed)
    assert info.value.distance == pytest.approx(0.4)
    assert info.value.exit_code == EXIT_VERIFICATION
