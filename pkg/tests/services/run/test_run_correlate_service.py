import pytest
from app.schemas.run_request import CorrelateRequestModel
from app.services.run.run_correlate_service import run_correlate
from app.utils.util_file import read_csv


def test_small_lattice_correlations(tmp_path):
    summary = run_correlate(CorrelateRequestModel(out=str(tmp_path), Ly=3, ratios=[0.0, 1.0]))
    assert summary.lattice == "2x3"
    assert [r.ratio for r in summary.rows] == [0.0, 1.0]
    # J = 0：乘積態，所有 x 關聯為 1
    assert summary.rows[0].max_offsite_raw == pytest.approx(1.0, abs=1e-9)
    assert summary.rows[0].max_offsite_connected == pytest.approx(0.0, abs=1e-9)
    assert summary.rows[1].J == pytest.approx(1.0)

    rows = read_csv(tmp_path / "correlate.csv")
    assert rows[0] == ["ratio", "J", "g", "k", "distance", "raw", "connected", "method"]
    assert len(rows) == 1 + 2 * 6
    assert {r[7] for r in rows[1:]} == {"dense"}


@pytest.mark.slow
def test_strong_coupling_row_on_2x6(tmp_path):
    summary = run_correlate(CorrelateRequestModel(out=str(tmp_path), ratios=[0.0, 100.0]))
    assert summary.rows[0].max_offsite_raw == pytest.approx(1.0, abs=1e-6)
    assert summary.rows[1].method == "lanczos"
    assert summary.rows[1].max_offsite_raw <= 0.05


def test_correlate_output_is_reproducible(tmp_path):
    request = dict(Ly=3, ratios=[0.0, 0.5, 2.0])
    run_correlate(CorrelateRequestModel(out=str(tmp_path / "a"), **request))
    run_correlate(CorrelateRequestModel(out=str(tmp_path / "b"), **request))
    assert (tmp_path / "a" / "correlate.csv").read_bytes() == (tmp_path / "b" / "correlate.csv").read_bytes()
