import json
import sys
from typing import Optional, Any, Dict, TextIO
from uuid import UUID
from pydantic import BaseModel
from app.utils.util_error_map import ERROR_CODE_TO_MESSAGE, ServerErrorCode
from app.utils.util_log import log_run, JSONEncoder

SUCCESS_CODE: int = 200

class BaseResponse(BaseModel):
    internal_code: int
    internal_message: str
    external_code: int
    external_message: str
    run_id: Optional[UUID] = None
    data: Optional[Any] = None

    def toJSON(self) -> str:
        content = self.model_dump(exclude_none=True, mode='json')
        return json.dumps(content, ensure_ascii=False, indent=2, cls=JSONEncoder)

    def emit(self, stream: TextIO) -> None:
        stream.write(self.toJSON() + "\n")
        stream.flush()


# 成功響應
def success_response(
    data: Optional[Any] = None,
    command: str = "",
    run_id: Optional[UUID] = None,
    request_data: Optional[Dict[str, Any]] = None,
    stream: Optional[TextIO] = None
) -> BaseResponse:
    if isinstance(data, BaseModel):
        data = data.model_dump(mode='json')
    response = BaseResponse(
        internal_code=SUCCESS_CODE,
        internal_message="Success",
        external_code=SUCCESS_CODE,
        external_message="Success",
        run_id=run_id,
        data=data
    )
    log_run(command, request_data, response.model_dump(mode='json'), run_id)
    response.emit(stream or sys.stdout)
    return response

# 錯誤響應
def error_response(
    internal_code: int = ServerErrorCode.INTERNAL_ERROR_50,
    internal_msg: Optional[str] = None,
    command: str = "",
    extra: Optional[Dict[str, Any]] = None,
    run_id: Optional[UUID] = None,
    stream: Optional[TextIO] = None
) -> BaseResponse:
    default_code = ServerErrorCode.INTERNAL_ERROR_50
    default_message = ERROR_CODE_TO_MESSAGE[default_code]
    external_message = ERROR_CODE_TO_MESSAGE.get(internal_code, default_message)
    internal_message = internal_msg or external_message
    response = BaseResponse(
        internal_code=internal_code,
        internal_message=internal_message,
        external_code=internal_code,
        external_message=external_message,
        run_id=run_id,
        data=extra
    )
    log_run(command, None, response.model_dump(mode='json'), run_id)
    response.emit(stream or sys.stderr)
    return response
