# src/api/api_response.py

"""
Конверт ответов HTTP-сервиса: {"ok", "data", "error"}.

error.code совпадает с code из иерархии AdminLabError, поэтому клиент
разбирает ошибки CLI (--json) и HTTP одним кодом.
"""

from typing import Any, Optional

from pydantic import BaseModel

from ..errors import AdminLabError, EvaluationError, NumericError, TrainingDivergenceError

# численные сбои - не вина клиента
SERVER_SIDE_ERRORS = (NumericError, EvaluationError, TrainingDivergenceError)


class APIError(BaseModel):
    code: str
    message: str
    details: Optional[dict[str, Any]] = None

    @classmethod
    def from_error(cls, exc: AdminLabError) -> "APIError":
        return cls(code=exc.code, message=exc.message, details=exc.details)


class APIResponse(BaseModel):
    ok: bool
    data: Optional[Any] = None
    error: Optional[APIError] = None


def error_response(code: str, message: str, details: Optional[dict[str, Any]] = None) -> dict[str, Any]:
    """Готовое тело JSONResponse с ok=False."""
    return APIResponse(ok=False, error=APIError(code=code, message=message, details=details)).model_dump()


def error_status(exc: AdminLabError) -> int:
    return 500 if isinstance(exc, SERVER_SIDE_ERRORS) else 400


def admin_error_response(exc: AdminLabError) -> tuple[int, dict[str, Any]]:
    """(HTTP-статус, тело) для доменной ошибки."""
    return error_status(exc), APIResponse(ok=False, error=APIError.from_error(exc)).model_dump()
