import numpy as np
from app.core.core_config import settings
from app.utils.util_file import (
    csv_header_comment,
    format_number,
    read_csv,
    resolve_output_dir,
    write_csv,
    write_plots_last,
)


def test_format_number():
    assert format_number(1.0) == "1"
    assert format_number(-0.0) == "0"
    assert format_number(0.1) == "0.1"
    assert format_number(np.float64(1.0 / 3.0)) == "0.333333333333"
    assert format_number(np.int64(7)) == "7"
    assert format_number(True) == "true"
    assert format_number(np.bool_(False)) == "false"
    assert format_number("dense") == "dense"


def test_csv_round_trip(tmp_path):
    path = write_csv(tmp_path / "nested" / "table.csv", "demo", ["a", "b"], [(1, 0.5), (2, -1.25)])
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines[0] == csv_header_comment("demo")
    assert lines[0].startswith("# wen-plaquette-sim demo schema v")
    assert read_csv(path) == [["a", "b"], ["1", "0.5"], ["2", "-1.25"]]


def test_plots_run_after_data(tmp_path):
    def broken():
        raise RuntimeError("no backend")

    written = write_plots_last([broken, lambda: tmp_path / "ok.svg", lambda: None])
    assert written == [tmp_path / "ok.svg"]


def test_output_dir(tmp_path, monkeypatch):
    assert resolve_output_dir(str(tmp_path / "x")).is_dir()
    monkeypatch.setattr(settings, "OUTPUT_DIR", str(tmp_path / "default"))
    assert resolve_output_dir(None) == tmp_path / "default"
    assert (tmp_path / "default").is_dir()
