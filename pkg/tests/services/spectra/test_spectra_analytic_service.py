import numpy as np
import pytest
from app.services.lattice.lattice_operator_service import build_hamiltonian
from app.services.pauli.pauli_operator_service import expectation_sum
from app.services.spectra.spectra_analytic_service import analytic_amplitudes_2x2, analytic_ground_2x2
from app.services.spectra.spectra_dense_service import dense_spectrum
from app.utils.util_error_handle import DomainError


def test_matches_numeric_ground_state(plaquette, rng):
    for _ in range(20):
        J = float(rng.uniform(-20.0, 20.0))
        g = float(rng.uniform(0.05, 20.0))
        energy, v = analytic_ground_2x2(J, g)
        numeric = dense_spectrum(build_hamiltonian(plaquette, J, g))
        assert energy == pytest.approx(numeric.ground_energy, abs=1e-10)
        assert abs(numeric.state(0).overlap(v)) >= 1.0 - 1e-10


def test_analytic_state_is_eigenvector(plaquette):
    energy, v = analytic_ground_2x2(-3.0, 2.0)
    h = build_hamiltonian(plaquette, -3.0, 2.0)
    assert expectation_sum(h, v) == pytest.approx(energy, abs=1e-10)
    assert np.linalg.norm(h.apply(v).amplitudes - energy * v.amplitudes) < 1e-10


def test_amplitudes_limits():
    # J=0：只剩 |0000>x
    amplitudes = analytic_amplitudes_2x2(0.0, 1.0)
    assert amplitudes.normalized == pytest.approx((1.0, 0.0, 0.0))
    # |J| >> g：兩個 J^2 量級的分量佔主導
    large = analytic_amplitudes_2x2(1000.0, 1.0).normalized
    assert large[0] == pytest.approx(0.5, abs=1e-2)
    assert large[2] == pytest.approx(0.5, abs=1e-2)


@pytest.mark.parametrize("g", [0.0, -1.0])
def test_requires_positive_field(g):
    with pytest.raises(DomainError):
        analytic_ground_2x2(1.0, g)
