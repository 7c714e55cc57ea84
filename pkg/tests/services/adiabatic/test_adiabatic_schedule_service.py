import numpy as np
import pytest
from app.services.lattice.lattice_geometry_service import Lattice
from app.services.lattice.lattice_operator_service import build_hamiltonian
from app.services.pauli.pauli_string_service import PauliString
from app.services.pauli.pauli_operator_service import materialize
from app.services.adiabatic.adiabatic_schedule_service import (
    HamiltonianFamily,
    discretize,
    gap_ratio,
    make_schedule,
)
from app.utils.util_error_handle import CapacityError, DomainError, ValidationError

T_OPERATING = 6.5684


@pytest.fixture(scope="module")
def operating_schedule():
    return make_schedule(1.0, -20.0, 20.0, T_OPERATING)


def test_family_matches_hamiltonian(plaquette):
    family = HamiltonianFamily.build(plaquette, 1.5)
    assert np.allclose(family.matrix(-2.0), materialize(build_hamiltonian(plaquette, -2.0, 1.5)))


def test_family_respects_dense_limit():
    with pytest.raises(CapacityError):
        HamiltonianFamily.build(Lattice(2, 7), 1.0)


def test_gap_ratio_positive(plaquette):
    ratio = gap_ratio(plaquette, 0.0, 1.0)
    assert np.isfinite(ratio.ratio)
    assert ratio.ratio > 0.0
    assert ratio.gap > 0.0
    assert ratio.coupling > 0.0


def test_mirror_symmetry(plaquette):
    # S = X1 X2 把 H(J) 映到 H(-J)
    mirror = materialize(PauliString.from_label("XXII"))
    family = HamiltonianFamily.build(plaquette, 1.0)
    for J in (0.5, 3.0, 17.0):
        assert np.allclose(mirror @ family.matrix(J) @ mirror, family.matrix(-J))
        assert gap_ratio(plaquette, J, 1.0).ratio == pytest.approx(gap_ratio(plaquette, -J, 1.0).ratio, rel=1e-9)


def test_schedule_spans_sweep(operating_schedule):
    s = operating_schedule
    assert s.times[0] == 0.0
    assert s.times[-1] == pytest.approx(T_OPERATING, rel=1e-9)
    assert np.all(np.diff(s.times) > 0.0)
    assert s.J_at(0.0) == pytest.approx(-20.0)
    assert s.J_at(T_OPERATING) == pytest.approx(20.0)
    assert s.adiabaticity_c > 0.0


def test_schedule_slows_down_near_transition(operating_schedule):
    s = operating_schedule
    rates = np.diff(s.J_grid) / np.diff(s.times)
    middle = np.argmin(np.abs(s.J_grid[:-1]))
    assert rates[middle] < rates[0]
    assert rates[middle] < rates[-1]


def test_schedule_rows(operating_schedule):
    rows = operating_schedule.to_rows()
    assert len(rows) == len(operating_schedule.J_grid)
    assert rows[0][1] == pytest.approx(-20.0)


def test_adiabaticity_scales_inversely_with_duration(operating_schedule):
    doubled = make_schedule(1.0, -20.0, 20.0, 2.0 * T_OPERATING)
    assert doubled.adiabaticity_c == pytest.approx(0.5 * operating_schedule.adiabaticity_c, rel=1e-12)
    assert np.allclose(doubled.times, 2.0 * operating_schedule.times, rtol=1e-12)
    # dt = |dJ| / (c r)
    s = operating_schedule
    steps = np.diff(s.times) * s.adiabaticity_c
    assert np.allclose(steps, 0.5 * np.diff(s.J_grid) * (1.0 / s.ratios[1:] + 1.0 / s.ratios[:-1]), rtol=1e-9)


def test_gap_power_sets_ratio(plaquette):
    linear = gap_ratio(plaquette, 3.0, 1.0, gap_power=1.0)
    quadratic = gap_ratio(plaquette, 3.0, 1.0, gap_power=2.0)
    assert linear.ratio == pytest.approx(linear.gap / linear.coupling)
    assert quadratic.ratio == pytest.approx(linear.gap ** 2 / linear.coupling)


def test_quadratic_gap_power_concentrates_time_at_transition(operating_schedule):
    quadratic = make_schedule(1.0, -20.0, 20.0, T_OPERATING, gap_power=2.0)

    def edge_to_middle(s):
        rates = np.diff(s.J_grid) / np.diff(s.times)
        return rates[0] / rates[np.argmin(np.abs(s.J_grid[:-1]))]

    assert edge_to_middle(quadratic) > edge_to_middle(operating_schedule)


@pytest.mark.parametrize("power", [0.0, -1.0])
def test_gap_power_must_be_positive(power):
    with pytest.raises(ValidationError):
        make_schedule(1.0, -1.0, 1.0, 1.0, gap_power=power)


def test_reverse_sweep_mirrors_forward(operating_schedule):
    backward = make_schedule(1.0, 20.0, -20.0, T_OPERATING)
    assert backward.adiabaticity_c == pytest.approx(operating_schedule.adiabaticity_c, rel=1e-9)
    assert backward.J_at(1.0) == pytest.approx(-operating_schedule.J_at(1.0), abs=1e-9)


@pytest.mark.parametrize("g,J_start,J_end,T,error", [
    (0.0, -1.0, 1.0, 1.0, DomainError),
    (-1.0, -1.0, 1.0, 1.0, DomainError),
    (1.0, 2.0, 2.0, 1.0, ValidationError),
    (1.0, -1.0, 1.0, 0.0, ValidationError),
])
def test_sweep_validation(g, J_start, J_end, T, error):
    with pytest.raises(error):
        make_schedule(g, J_start, J_end, T)


def test_discretize_midpoints(operating_schedule):
    sweep = discretize(operating_schedule, 31)
    assert len(sweep) == 31
    assert sweep.tau == pytest.approx(T_OPERATING / 31)
    assert sweep.times[0] == pytest.approx(0.5 * sweep.tau)
    assert sweep.times[-1] == pytest.approx(T_OPERATING - 0.5 * sweep.tau)
    assert np.all(np.diff(sweep.J_list) > 0.0)
    # 中點採樣關於 J=0 對稱
    assert np.allclose(sweep.J_list, -sweep.J_list[::-1], atol=1e-9)


def test_discretize_needs_two_steps(operating_schedule):
    with pytest.raises(ValidationError):
        discretize(operating_schedule, 1)
