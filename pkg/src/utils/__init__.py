"""
Пакет утилит admin-lab
"""

from .formatters import format_corr_summary, format_float, format_metrics_line, format_row
from .validators import parse_numeric_csv, require_matrix, validate_matrix

__all__ = [
    'format_corr_summary',
    'format_float',
    'format_metrics_line',
    'format_row',
    'parse_numeric_csv',
    'require_matrix',
    'validate_matrix',
]
