import json
from pathlib import Path
from uuid import uuid4
import numpy as np
from app.core.core_config import settings
from app.utils.util_log import JSONEncoder, log_run


def test_encoder_handles_numeric_types():
    text = json.dumps({"a": np.arange(3), "b": np.float64(0.5), "c": 1 + 2j, "p": Path("x")}, cls=JSONEncoder)
    assert json.loads(text) == {"a": [0, 1, 2], "b": 0.5, "c": {"re": 1.0, "im": 2.0}, "p": "x"}


def test_run_log_is_written(tmp_path, monkeypatch):
    monkeypatch.setattr(settings, "ENABLE_LOG", True)
    monkeypatch.setattr(settings, "LOG_DIR", str(tmp_path))
    log_run("scan", {"g_list": list(range(100))}, {"internal_code": 200}, uuid4())
    log_run("scan", None, {"internal_code": 502})

    normal = list((tmp_path / settings.APP_ENV / "run_normal").glob("log_*.txt"))
    error = list((tmp_path / settings.APP_ENV / "run_error").glob("log_*.txt"))
    assert len(normal) == 1
    assert len(error) == 1
    record = json.loads(normal[0].read_text(encoding="utf-8").strip())
    assert record["command"] == "scan"
    # 長列表只保留頭尾
    assert len(record["config"]["g_list"]) == 33
