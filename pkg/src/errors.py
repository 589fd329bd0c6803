# src/errors.py

"""
Иерархия ошибок admin-lab.

Каждая ошибка несёт машинный code и details - ровно те поля, что уходят
в APIError-конверт HTTP-сервиса и в JSON-ответ CLI (--json).
"""

from __future__ import annotations

from typing import Any, Optional


class AdminLabError(Exception):
    code: str = "admin_lab_error"

    def __init__(self, message: str, details: Optional[dict[str, Any]] = None) -> None:
        super().__init__(message)
        self.message = message
        self.details: dict[str, Any] = details or {}

    def to_dict(self) -> dict[str, Any]:
        return {"code": self.code, "message": self.message, "details": self.details}


class DimensionError(AdminLabError):
    code = "dimension_error"


class DegenerateInputError(AdminLabError):
    code = "degenerate_input"


class EvaluationError(AdminLabError):
    code = "evaluation_error"


class ConfigError(AdminLabError):
    code = "config_error"


class NumericError(AdminLabError):
    code = "numeric_error"


class DataFormatError(AdminLabError):
    code = "data_format_error"


class TrainingDivergenceError(AdminLabError):
    """
    Нечисловое значение loss/градиента во время обучения.

    partial_log - RunLog, накопленный до аварии (шаги до сбоя + диагностика).
    """

    code = "training_divergence"

    def __init__(
        self,
        message: str,
        details: Optional[dict[str, Any]] = None,
        partial_log: Any = None,
    ) -> None:
        super().__init__(message, details)
        self.partial_log = partial_log
