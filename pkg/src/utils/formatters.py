# src/utils/formatters.py
import math
from typing import Any, Iterable, Mapping, Optional


def format_float(value: Any) -> str:
    """Кратчайшее round-trip представление 64-битного числа (repr)."""
    if isinstance(value, (int,)) and not isinstance(value, bool):
        return str(value)
    return repr(float(value))


def format_row(values: Iterable[Any]) -> list[str]:
    return [format_float(v) if not isinstance(v, str) else v for v in values]


def _fmt(value: Optional[float], digits: int = 4) -> str:
    if value is None:
        return "n/a"
    if isinstance(value, float) and not math.isfinite(value):
        return str(value)
    return f"{value:.{digits}f}"


def format_corr_summary(summary: Mapping[str, Any]) -> str:
    """Однострочная сводка CorrSummary для stdout."""
    line = (
        f"mean|rho|={_fmt(summary.get('mean_abs_offdiag_pearson'))} "
        f"mean_sq_dcorr={_fmt(summary.get('mean_sq_dcorr'))} "
        f"per_dim_dcorr=[{', '.join(_fmt(v) for v in summary.get('per_dim_dcorr', []))}]"
    )
    if summary.get("degenerate"):
        line += f" degenerate_columns={summary.get('degenerate_columns')}"
    return line


def format_metrics_line(experiment: str, metrics: Mapping[str, Any]) -> str:
    """
    Однострочная сводка результата эксперимента: только скалярные метрики,
    в порядке ключей.
    """
    parts = [experiment]
    for key, value in metrics.items():
        if isinstance(value, bool) or value is None:
            continue
        if isinstance(value, (int, float)):
            parts.append(f"{key}={_fmt(float(value))}")
    return " ".join(parts)
