import json
from datetime import datetime, timezone, timedelta
from pathlib import Path
from typing import Any, Dict, Optional
from uuid import UUID
import numpy as np
from app.core.core_config import settings


# 日誌中列表超過該長度只保留頭尾
_MAX_LIST_LENGTH: int = 32

class JSONEncoder(json.JSONEncoder):
    def default(self, obj: Any) -> Any:
        if isinstance(obj, UUID):
            return str(obj)
        if isinstance(obj, datetime):
            return obj.isoformat()
        if isinstance(obj, Path):
            return str(obj)
        if isinstance(obj, np.ndarray):
            return obj.tolist()
        if isinstance(obj, np.generic):
            return obj.item()
        if isinstance(obj, complex):
            return {"re": obj.real, "im": obj.imag}
        return super().default(obj)

# 記錄一次命令執行
def log_run(
    command: str,
    request_data: Optional[Dict[str, Any]],
    response_data: Dict[str, Any],
    run_id: Optional[UUID] = None
) -> None:
    if not settings.ENABLE_LOG:
        return

    try:
        run_info: Dict[str, Any] = {}
        tz_utc_8 = timezone(timedelta(hours=8))
        run_info["timestamp"] = datetime.now(tz_utc_8).strftime("%Y-%m-%d %H:%M:%S")
        run_info["command"] = command
        run_info["run_id"] = str(run_id) if run_id else None
        run_info["app_version"] = settings.APP_VERSION
        if request_data:
            run_info["config"] = request_data
        run_info["response"] = response_data

        _trim_long_lists(run_info)

        is_success = response_data.get("internal_code") == 200
        _write_log(run_info, "run_normal" if is_success else "run_error")
    except Exception:
        pass

# 截斷過長的列表，避免日誌被網格資料撐爆
def _trim_long_lists(data: Dict[str, Any]) -> None:
    for key in data.keys():
        value = data[key]
        if isinstance(value, dict):
            _trim_long_lists(value)
        elif isinstance(value, list):
            if len(value) > _MAX_LIST_LENGTH:
                half = _MAX_LIST_LENGTH // 2
                data[key] = value[:half] + [f"... {len(value) - 2 * half} more ..."] + value[-half:]
            for item in data[key]:
                if isinstance(item, dict):
                    _trim_long_lists(item)

# 寫入日誌
def _write_log(log_data: Dict[str, Any], log_subdir: str) -> None:
    try:
        project_root = Path(__file__).parent.parent.parent
        log_dir: Path = project_root / settings.LOG_DIR / settings.APP_ENV / log_subdir
        log_dir.mkdir(parents=True, exist_ok=True)

        today = datetime.now().strftime("%Y-%m-%d")
        log_file: Path = log_dir / f"log_{today}.txt"

        log_content: str = json.dumps(log_data, ensure_ascii=False, indent=2, cls=JSONEncoder)

        with open(log_file, "a", encoding="utf-8") as file:
            file.write(log_content + "\n\n")

    except Exception:
        pass
