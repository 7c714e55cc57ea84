#!/usr/bin/env python3
"""
從 resource/feature_code_map.json 生成 app/utils/util_error_map.py

使用方法:
    python3 script/generate_error_map.py
    python3 script/generate_error_map.py --check   # 只校驗，不寫文件
"""

import argparse
import json
import sys
from pathlib import Path


def message_to_name(message: str) -> str:
    """將消息轉換為常量名稱（UPPER_SNAKE_CASE）"""
    name = ''.join(c if c.isalnum() or c == ' ' else ' ' for c in message)
    name = ' '.join(name.split())
    return name.upper().replace(' ', '_').rstrip('_')


def escape_message(message: str) -> str:
    return message.replace('"', '\\"')


def get_project_root() -> Path:
    return Path(__file__).parent.absolute().parent


def extract_errors_from_feature_map(feature_data: dict) -> list:
    """按 feature 展開所有錯誤"""
    errors = []
    for feature in feature_data.get("features", []):
        feature_code = feature.get("feature_code", "")
        for error in feature.get("errors", []):
            errors.append({
                "code": int(error["error_code"]),
                "message": error["error_message"],
                "feature_code": feature_code,
                "feature_name": feature.get("feature_name", ""),
            })
    return errors


def check_errors(error_list: list) -> list[str]:
    """錯誤碼必須唯一，且以所屬 feature 編碼為前綴"""
    problems = []
    seen: dict[int, str] = {}
    for item in error_list:
        code = item["code"]
        if code in seen:
            problems.append(f"duplicate code {code} ({seen[code]} / {item['feature_name']})")
        seen[code] = item["feature_name"]
        if not str(code).startswith(item["feature_code"]):
            problems.append(f"code {code} outside feature {item['feature_name']} ({item['feature_code']})")
    return problems


def generate_error_maps(error_list: list) -> tuple[str, str]:
    error_list = sorted(error_list, key=lambda x: x['code'])

    code_to_message = ["ERROR_CODE_TO_MESSAGE = {"]
    for item in error_list:
        code_to_message.append(f"    {item['code']}: \"{escape_message(item['message'])}\",")
    code_to_message.append("}")
    code_to_message.append("")

    name_to_code = ["ERROR_NAME_TO_CODE = {"]
    for item in error_list:
        name = message_to_name(item['message'])
        # 名稱後綴 feature 編碼，避免不同 feature 重名
        if item['feature_code']:
            name = f"{name}_{item['feature_code']}"
        name_to_code.append(f"    \"{name}\": {item['code']},")
    name_to_code.append("}")

    return '\n'.join(code_to_message), '\n'.join(name_to_code)


def generate_error_map_py(error_list: list) -> str:
    error_code_to_message, error_name_to_code = generate_error_maps(error_list)

    return f'''"""
wen-plaquette-sim 錯誤碼和錯誤消息定義

此文件由 script/generate_error_map.py 自動生成
如需修改錯誤碼或消息，請編輯 resource/feature_code_map.json 後運行生成腳本

生成命令:
    python3 script/generate_error_map.py
"""

{error_code_to_message}

{error_name_to_code}


class _ServerErrorCode:
    def __getattr__(self, name: str) -> int:
        if name in ERROR_NAME_TO_CODE:
            return ERROR_NAME_TO_CODE[name]
        raise AttributeError(f"{{self.__class__.__name__}} has no attribute '{{name}}'")


class _ServerErrorMessage:
    def __getattr__(self, name: str) -> str:
        if name in ERROR_NAME_TO_CODE:
            return ERROR_CODE_TO_MESSAGE[ERROR_NAME_TO_CODE[name]]
        raise AttributeError(f"{{self.__class__.__name__}} has no attribute '{{name}}'")


ServerErrorCode = _ServerErrorCode()
ServerErrorMessage = _ServerErrorMessage()


def get_error_code_from_message(message: str):
    for code, msg in ERROR_CODE_TO_MESSAGE.items():
        if msg == message:
            return code
    return None
'''


def main():
    parser = argparse.ArgumentParser(description="generate app/utils/util_error_map.py")
    parser.add_argument("--check", action="store_true", help="validate the feature map only")
    args = parser.parse_args()

    project_root = get_project_root()
    json_path = project_root / "resource" / "feature_code_map.json"
    output_path = project_root / "app" / "utils" / "util_error_map.py"

    if not json_path.exists():
        print(f"錯誤: 找不到 JSON 文件: {json_path}", file=sys.stderr)
        sys.exit(1)

    try:
        with open(json_path, 'r', encoding='utf-8') as f:
            feature_data = json.load(f)
    except json.JSONDecodeError as e:
        print(f"錯誤: JSON 文件格式錯誤: {e}", file=sys.stderr)
        sys.exit(1)

    error_list = extract_errors_from_feature_map(feature_data)
    problems = check_errors(error_list)
    if problems:
        for problem in problems:
            print(f"錯誤: {problem}", file=sys.stderr)
        sys.exit(1)

    if args.check:
        print(f"✓ {len(error_list)} 個錯誤碼校驗通過")
        return

    output_path.parent.mkdir(parents=True, exist_ok=True)
    try:
        with open(output_path, 'w', encoding='utf-8') as f:
            f.write(generate_error_map_py(error_list))
    except OSError as e:
        print(f"錯誤: 寫入文件失敗: {e}", file=sys.stderr)
        sys.exit(1)

    print(f"✓ 成功生成: {output_path}")
    print(f"  從 JSON 文件: {json_path}")


if __name__ == "__main__":
    main()
