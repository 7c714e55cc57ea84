import numpy as np
import pytest
from app.services.pauli.pauli_string_service import PauliString, StateVector
from app.services.pauli.pauli_operator_service import (
    MatrixFreeOperator,
    OperatorSum,
    check_dense_limit,
    expectation_sum,
    kron_sites,
    materialize,
    x_basis_rotation,
)
from app.utils.util_error_handle import CapacityError, DimensionError


def _sum(terms):
    return OperatorSum.from_terms(len(terms[0][1]), [(c, PauliString.from_label(w)) for c, w in terms])


def test_simplify_merges_duplicates():
    h = _sum([(1.0, "XI"), (2.0, "XI"), (1.0, "-XI"), (0.5, "ZZ")]).simplify()
    assert len(h) == 2
    assert h.coefficient_of(PauliString.from_label("XI")) == pytest.approx(2.0)
    assert h.coefficient_of(PauliString.from_label("ZZ")) == pytest.approx(0.5)


def test_simplify_drops_cancelled_terms():
    h = _sum([(1.0, "YY"), (-1.0, "YY"), (3.0, "IZ")]).simplify()
    assert len(h) == 1


def test_add_requires_same_sites():
    with pytest.raises(DimensionError):
        _sum([(1.0, "X")]) + _sum([(1.0, "XX")])


def test_matrix_free_matches_materialized(rng):
    h = _sum([(0.3, "XYZ"), (-1.2, "ZZI"), (0.7, "IXX"), (2.0, "YII")])
    v = StateVector.random(3, rng)
    assert np.allclose(MatrixFreeOperator(h)(v.amplitudes), materialize(h) @ v.amplitudes)
    assert np.allclose(h.apply(v).amplitudes, materialize(h) @ v.amplitudes)


def test_materialized_sum_is_hermitian():
    h = _sum([(0.3, "XY"), (-1.0, "YZ"), (0.5, "ZX")])
    matrix = materialize(h)
    assert np.allclose(matrix, matrix.conj().T)


def test_expectation_sum(rng):
    h = _sum([(1.0, "ZI"), (0.5, "XX")])
    v = StateVector.random(2, rng)
    dense = np.vdot(v.amplitudes, materialize(h) @ v.amplitudes).real
    assert expectation_sum(h, v) == pytest.approx(dense)


def test_dense_limit():
    check_dense_limit(12)
    with pytest.raises(CapacityError):
        check_dense_limit(13)


def test_x_basis_rotation_of_zero_state():
    plus = x_basis_rotation(StateVector.basis(4, 0))
    assert np.allclose(plus.amplitudes, np.full(16, 0.25))
    # Hadamard 自逆
    assert np.allclose(x_basis_rotation(plus).amplitudes, StateVector.basis(4, 0).amplitudes)


def test_kron_sites_little_endian(pauli_dense):
    x = pauli_dense("X")
    assert np.allclose(kron_sites({0: x}, 2), pauli_dense("XI"))
    assert np.allclose(kron_sites({1: x}, 2), pauli_dense("IX"))
