import numpy as np
import pytest
from app.services.pauli.pauli_string_service import PauliString, StateVector
from app.services.observables.observables_density_service import pauli_expectation, to_density
from app.services.tomography.tomography_record_service import (
    MeasurementRecord,
    emit_record_text,
    identity_word,
    parse_record_text,
    pauli_words,
    synth_measure,
)
from app.utils.util_error_map import ServerErrorCode
from app.utils.util_error_handle import ValidationError


def test_pauli_words_order():
    words = pauli_words(2)
    assert len(words) == 16
    assert words[:5] == ["II", "IX", "IY", "IZ", "XI"]
    assert len(pauli_words(4)) == 256
    assert identity_word(3) == "III"


def test_noiseless_record_is_exact(rng):
    v = StateVector.random(3, rng)
    rec = synth_measure(v, 0.0, seed=1)
    assert len(rec) == 64
    assert rec.entries["III"] == 1.0
    for word in ("XYZ", "ZII", "IYY"):
        assert rec.entries[word] == pytest.approx(pauli_expectation(v, PauliString.from_label(word)), abs=1e-12)


def test_noise_is_seeded_and_scales_with_sigma(rng):
    rho = to_density(StateVector.random(2, rng))
    exact = synth_measure(rho, 0.0, seed=5)
    small = synth_measure(rho, 0.01, seed=5)
    large = synth_measure(rho, 0.02, seed=5)
    assert synth_measure(rho, 0.01, seed=5).entries == small.entries
    assert small.entries["II"] == large.entries["II"] == 1.0
    for word in pauli_words(2)[1:]:
        assert large.entries[word] - exact.entries[word] == pytest.approx(
            2.0 * (small.entries[word] - exact.entries[word]), abs=1e-12
        )
    assert synth_measure(rho, 0.01, seed=6).entries != small.entries


def test_negative_sigma_rejected(rng):
    with pytest.raises(ValidationError):
        synth_measure(StateVector.random(2, rng), -1.0)


def test_record_text_round_trip(rng):
    rec = synth_measure(StateVector.random(2, rng), 0.05, seed=11)
    text = emit_record_text(rec)
    lines = text.splitlines()
    assert lines[:3] == ["# n_sites 2", "# sigma 0.05", "# seed 11"]
    assert lines[3] == "II 1.0"
    parsed = parse_record_text(text)
    assert parsed == rec
    assert emit_record_text(parsed) == text


def test_partial_record_keeps_missing_words():
    rec = parse_record_text("# n_sites 1\nI 1.0\nX 0.5\n")
    assert rec.noise_sigma == 0.0
    assert rec.seed is None
    assert rec.missing_words() == ["Y", "Z"]


@pytest.mark.parametrize("text", [
    "I 1.0\nX 0.5\n",
    "# n_sites 1\nX 0.5\nX 0.4\n",
    "# n_sites 1\nX half\n",
    "# n_sites 1\nI 2.0\n",
    "# n_sites 1\nXY 0.1\n",
    "# n_sites 1\nQ 0.1\n",
    "# n_sites 1\nX 0.1 0.2\n",
])
def test_malformed_record_text(text):
    with pytest.raises(ValidationError):
        parse_record_text(text)


def test_record_rejects_bad_words():
    with pytest.raises(ValidationError):
        MeasurementRecord(2, {"XA": 0.1})


@pytest.mark.parametrize("text", [
    "# n_sites 1\n# sigma 0.0\nX 1.01\n",
    "# n_sites 1\n# sigma 0.1\nZ -1.6\n",
    "# n_sites 1\nY nan\n",
])
def test_record_values_outside_noise_band(text):
    with pytest.raises(ValidationError) as info:
        parse_record_text(text)
    assert info.value.code == ServerErrorCode.MEASUREMENT_VALUE_OUT_OF_RANGE_57


def test_record_values_on_noise_band_edge():
    rec = parse_record_text("# n_sites 1\n# sigma 0.1\nX 1.5\nZ -1.5\n")
    assert rec.entries["X"] == 1.5


def test_heavy_noise_stays_in_band():
    v = StateVector(2, np.array([1.0, 0.0, 0.0, 1.0]) / np.sqrt(2.0))
    rec = synth_measure(v, 0.4, seed=11)
    assert all(abs(value) <= 1.0 + 5.0 * 0.4 + 1e-12 for value in rec.entries.values())
    assert parse_record_text(emit_record_text(rec)).entries == rec.entries
