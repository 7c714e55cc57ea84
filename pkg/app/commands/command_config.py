import argparse
import json
import logging
from pathlib import Path
from typing import Any, Dict, Type, TypeVar
from pydantic import BaseModel
from app.utils.util_error_map import ServerErrorCode
from app.utils.util_error_handle import ValidationError

logger = logging.getLogger(__name__)

RequestModelType = TypeVar('RequestModelType', bound=BaseModel)


def add_common_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", type=str, default=None, help="JSON run configuration")
    parser.add_argument("--out", type=str, default=None, help="output directory")
    parser.add_argument("--workers", type=int, default=None, help="work pool size")


def load_config_file(path: str) -> Dict[str, Any]:
    try:
        with open(Path(path), "r", encoding="utf-8") as file:
            data = json.load(file)
    except (OSError, json.JSONDecodeError) as e:
        raise ValidationError(ServerErrorCode.CONFIG_FILE_INVALID_50, f"{path}: {e}")
    if not isinstance(data, dict):
        raise ValidationError(ServerErrorCode.CONFIG_FILE_INVALID_50, f"{path}: top level must be an object")
    return data


# JSON 配置 + 命令行覆寫，命令行優先
def load_request(
    model_type: Type[RequestModelType],
    args: argparse.Namespace,
    flag_fields: Dict[str, str]
) -> RequestModelType:
    data: Dict[str, Any] = load_config_file(args.config) if getattr(args, "config", None) else {}

    overrides = {"out": "out", "workers": "workers"}
    overrides.update(flag_fields)
    for attribute, field_name in overrides.items():
        value = getattr(args, attribute, None)
        if value is not None:
            data[field_name] = value

    logger.debug(f"{model_type.__name__} fields: {sorted(data)}")
    return model_type.model_validate(data)
