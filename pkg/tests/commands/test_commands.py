import json
from pathlib import Path
import pytest
from main import main
from app.utils.util_error_handle import EXIT_SUCCESS, EXIT_VALIDATION, EXIT_VERIFICATION

PROJECT_ROOT = Path(__file__).parent.parent.parent

SMALL_SCAN = ["--g", "1", "--j-min", "-1", "--j-max", "1", "--j-points", "5"]


def _write_config(path: Path, content) -> str:
    path.write_text(json.dumps(content), encoding="utf-8")
    return str(path)


def _envelope(text: str) -> dict:
    return json.loads(text[text.index("{"):])


def test_scan_command(tmp_path, capsys):
    assert main(["scan", "--out", str(tmp_path)] + SMALL_SCAN) == EXIT_SUCCESS
    envelope = _envelope(capsys.readouterr().out)
    assert envelope["internal_code"] == 200
    assert envelope["run_id"]
    assert envelope["data"]["lattice"] == "2x2"
    assert envelope["data"]["curves"][0]["g"] == 1.0
    assert (tmp_path / "scan_g1.csv").exists()


def test_scan_output_is_reproducible(tmp_path):
    assert main(["scan", "--out", str(tmp_path / "a")] + SMALL_SCAN) == EXIT_SUCCESS
    assert main(["scan", "--out", str(tmp_path / "b")] + SMALL_SCAN) == EXIT_SUCCESS
    for csv_file in sorted((tmp_path / "a").glob("*.csv")):
        assert csv_file.read_bytes() == (tmp_path / "b" / csv_file.name).read_bytes()


def test_flags_override_config(tmp_path, capsys):
    config = _write_config(tmp_path / "sweep.json", {"g": 1.0, "j_start": -1.0, "j_end": 1.0, "T": 1.0, "M": 50})
    code = main(["sweep", "--config", config, "--out", str(tmp_path / "out"), "--M", "10"])
    assert code == EXIT_SUCCESS
    data = _envelope(capsys.readouterr().out)["data"]
    assert data["M"] == 10
    assert 0.0 < data["min_fidelity"] <= 1.0
    assert data["optimized"] is True


def test_sweep_schedule_flags(tmp_path, capsys):
    config = _write_config(tmp_path / "sweep.json", {"g": 1.0, "j_start": -1.0, "j_end": 1.0, "T": 1.0, "M": 8})
    code = main(["sweep", "--config", config, "--out", str(tmp_path / "out"), "--gap-power", "2", "--no-optimize"])
    assert code == EXIT_SUCCESS
    data = _envelope(capsys.readouterr().out)["data"]
    assert data["gap_power"] == 2.0
    assert data["optimized"] is False


def test_compile_command(tmp_path, monkeypatch, capsys):
    monkeypatch.chdir(PROJECT_ROOT)
    config = str(PROJECT_ROOT / "resource" / "config" / "compile.json")
    assert main(["compile", "--config", config, "--out", str(tmp_path)]) == EXIT_SUCCESS
    assert _envelope(capsys.readouterr().out)["data"]["passed"] is True


def test_unreachable_threshold_exits_with_verification_code(tmp_path, capsys):
    config = _write_config(tmp_path / "compile.json", {"threshold": 1e-300})
    assert main(["compile", "--config", config, "--out", str(tmp_path / "out")]) == EXIT_VERIFICATION
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "distance" in captured.err


def test_missing_coupling_is_named(tmp_path, capsys):
    machine = {"name": "broken", "omegas": [1000.0, -800.0, 600.0, -400.0], "couplings": {"J12": 50.0, "J34": 40.0, "J14": 5.0}}
    path = _write_config(tmp_path / "machine.json", machine)
    assert main(["compile", "--machine", path, "--out", str(tmp_path / "out")]) == EXIT_VALIDATION
    assert "J13" in capsys.readouterr().err


@pytest.mark.parametrize("argv,config", [
    (["sweep", "--stepper", "trotter"], {"Lx": 2, "Ly": 3}),
    (["scan"], {"j_points": 1}),
    (["scan", "--j-min", "2", "--j-max", "1"], None),
    (["scan", "--g", "-1"], None),
    (["tomo", "--sigma", "-1"], None),
    (["compile", "--g", "1"], {"tau": -0.1}),
    (["correlate", "--g", "0"], None),
    (["sweep"], {"m_scan": [1, 5]}),
    (["sweep", "--gap-power", "0"], None),
])
def test_validation_errors(tmp_path, capsys, argv, config):
    args = argv + ["--out", str(tmp_path / "out")]
    if config is not None:
        args += ["--config", _write_config(tmp_path / "config.json", config)]
    assert main(args) == EXIT_VALIDATION
    captured = capsys.readouterr()
    assert captured.out == ""
    assert '"internal_code"' in captured.err


def test_unreadable_config(tmp_path, capsys):
    assert main(["scan", "--config", str(tmp_path / "missing.json")]) == EXIT_VALIDATION
    (tmp_path / "list.json").write_text("[1, 2]", encoding="utf-8")
    assert main(["scan", "--config", str(tmp_path / "list.json")]) == EXIT_VALIDATION
    (tmp_path / "broken.json").write_text("{", encoding="utf-8")
    assert main(["scan", "--config", str(tmp_path / "broken.json")]) == EXIT_VALIDATION


def test_parser_requires_command():
    with pytest.raises(SystemExit) as info:
        main([])
    assert info.value.code == 2
