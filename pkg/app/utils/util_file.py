import csv
import logging
from pathlib import Path
from typing import Any, Callable, Iterable, List, Optional, Sequence
import numpy as np
from app.core.core_config import settings

logger = logging.getLogger(__name__)


def format_number(value: Any) -> str:
    """CSV 數值格式：有效位數由配置決定，'.' 小數點，不受 locale 影響"""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        number = float(value)
        if number == 0.0:
            number = 0.0  # 去掉 -0
        return format(number, f".{settings.CSV_SIGNIFICANT_DIGITS}g")
    return str(value)


def csv_header_comment(kind: str) -> str:
    return f"# {settings.APP_NAME.replace('_', '-')} {kind} schema v{settings.CSV_SCHEMA_VERSION}"


def write_csv(
    path: Path,
    kind: str,
    columns: Sequence[str],
    rows: Iterable[Sequence[Any]]
) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as file:
        file.write(csv_header_comment(kind) + "\n")
        writer = csv.writer(file, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([format_number(value) for value in row])
    logger.debug(f"wrote {path}")
    return path


def read_csv(path: Path) -> List[List[str]]:
    """讀取本項目寫出的 CSV（跳過版本注釋行）"""
    with open(path, "r", encoding="utf-8", newline="") as file:
        lines = [line for line in file if not line.startswith("#")]
    return [row for row in csv.reader(lines)]


def write_text(path: Path, content: str) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as file:
        file.write(content)
    return path


def write_plots_last(plotters: Sequence[Callable[[], Optional[Path]]]) -> List[Path]:
    """所有 CSV 寫完後再畫圖；畫圖失敗只記日誌，不影響已寫出的數據"""
    written: List[Path] = []
    for plotter in plotters:
        try:
            path = plotter()
            if path is not None:
                written.append(path)
        except Exception as e:
            logger.error(f"Plot emission failed: {e}", exc_info=True)
    return written


def resolve_output_dir(out: Optional[str]) -> Path:
    output_dir = Path(out or settings.OUTPUT_DIR)
    output_dir.mkdir(parents=True, exist_ok=True)
    return output_dir
