import numpy as np
import pytest
from app.services.lattice.lattice_geometry_service import Lattice
from app.services.lattice.lattice_operator_service import build_hamiltonian
from app.services.spectra.spectra_dense_service import (
    degeneracy_groups,
    dense_spectrum,
    ground_group_projector,
    hamiltonian_matrix,
)
from app.services.spectra.spectra_ground_service import ground_state
from app.utils.util_error_handle import CapacityError, ValidationError

J_GRID = np.linspace(-20.0, 20.0, 81)


@pytest.mark.parametrize("g", [1.0, 5.0, 20.0])
def test_ground_energy_closed_form(plaquette, g):
    for J in J_GRID:
        result = dense_spectrum(build_hamiltonian(plaquette, float(J), g))
        assert abs(result.ground_energy - (-4.0 * np.hypot(g, J))) < 1e-10


def test_fourfold_degeneracy_without_field(plaquette):
    result = dense_spectrum(build_hamiltonian(plaquette, 1.0, 0.0))
    assert len(result.ground_group) == 4
    assert result.ground_energy == pytest.approx(-4.0)


def test_unique_ground_state_with_field(plaquette):
    result = dense_spectrum(build_hamiltonian(plaquette, 1.0, 0.3))
    assert len(result.ground_group) == 1


def test_eigenpairs_have_small_residuals(plaquette):
    h = build_hamiltonian(plaquette, -2.0, 0.7)
    result = dense_spectrum(h)
    assert np.all(result.residuals(h) < 1e-10)
    assert np.all(np.diff(result.energies) >= 0.0)


def test_partial_spectrum(plaquette):
    h = build_hamiltonian(plaquette, 1.0, 1.0)
    full = dense_spectrum(h)
    partial = dense_spectrum(h, count=3)
    assert len(partial.energies) == 3
    assert np.allclose(partial.energies, full.energies[:3])


def test_count_validation(plaquette):
    h = build_hamiltonian(plaquette, 1.0, 1.0)
    with pytest.raises(ValidationError):
        dense_spectrum(h, count=0)
    with pytest.raises(ValidationError):
        dense_spectrum(h, count=17)


def test_dense_limit():
    with pytest.raises(CapacityError):
        dense_spectrum(build_hamiltonian(Lattice(2, 7), 1.0, 1.0))


def test_degeneracy_groups_scale_with_energy():
    energies = np.array([-100.0, -100.0 + 5e-5, -99.0, -98.0, -98.0])
    assert degeneracy_groups(energies) == [[0, 1], [2], [3, 4]]
    assert degeneracy_groups(energies, tol=1e-9) == [[0], [1], [2], [3, 4]]


def test_ground_group_projector(plaquette):
    result = dense_spectrum(build_hamiltonian(plaquette, 1.0, 0.0))
    projector = ground_group_projector(result)
    assert np.allclose(projector @ projector, projector)
    assert np.trace(projector).real == pytest.approx(4.0)


def test_real_symmetric_matrix(plaquette):
    matrix = hamiltonian_matrix(build_hamiltonian(plaquette, 1.0, 1.0))
    assert np.isrealobj(matrix)


def test_ground_state_dispatch(plaquette):
    h = build_hamiltonian(plaquette, 3.0, 4.0)
    energy, v = ground_state(h)
    assert energy == pytest.approx(-20.0, abs=1e-10)
    assert v.norm() == pytest.approx(1.0)
