# src/utils/validators.py
import csv
import io
import logging
from typing import Any, Union

import numpy as np

from ..errors import DataFormatError, DimensionError

# Настройка логгера для модуля
logger = logging.getLogger(__name__)


def validate_matrix(value: Any, min_rows: int = 1, min_cols: int = 1) -> tuple:
    """
    Валидация числовой матрицы (список строк или ndarray).

    Возвращает (True, ndarray float64) или (False, сообщение об ошибке).
    """
    try:
        arr = np.asarray(value, dtype=np.float64)
    except (TypeError, ValueError):
        return False, "Matrix must be a rectangular array of numbers"

    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.ndim != 2:
        return False, f"Matrix must be two-dimensional, got {arr.ndim} dimensions"
    if arr.shape[0] < min_rows:
        return False, f"Matrix needs at least {min_rows} rows, got {arr.shape[0]}"
    if arr.shape[1] < min_cols:
        return False, f"Matrix needs at least {min_cols} columns, got {arr.shape[1]}"
    if not np.all(np.isfinite(arr)):
        return False, "Matrix contains non-finite values"
    return True, arr


def require_matrix(value: Any, min_rows: int = 1, min_cols: int = 1, name: str = "matrix") -> np.ndarray:
    ok, result = validate_matrix(value, min_rows=min_rows, min_cols=min_cols)
    if not ok:
        logger.warning("Validation failed for %s: %s", name, result)
        raise DimensionError(f"{name}: {result}", {"name": name})
    return result


def parse_numeric_csv(text: Union[str, io.TextIOBase]) -> np.ndarray:
    """
    Разбор числового CSV. Первая строка - заголовок, если она не числовая.

    Ошибка формата называет номер строки (с 1).
    """
    handle = io.StringIO(text) if isinstance(text, str) else text
    rows: list[list[float]] = []
    width = None

    for line_no, raw in enumerate(csv.reader(handle), start=1):
        if not raw or all(not cell.strip() for cell in raw):
            continue
        try:
            values = [float(cell) for cell in raw]
        except ValueError:
            if line_no == 1 and not rows:
                continue  # заголовок
            raise DataFormatError(
                f"line {line_no}: non-numeric value",
                {"line": line_no, "content": ",".join(raw)},
            )
        if width is None:
            width = len(values)
        elif len(values) != width:
            raise DataFormatError(
                f"line {line_no}: expected {width} columns, got {len(values)}",
                {"line": line_no},
            )
        rows.append(values)

    if not rows:
        raise DataFormatError("input contains no numeric rows", {"line": 0})
    return np.asarray(rows, dtype=np.float64)
