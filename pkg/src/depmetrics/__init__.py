"""
Меры статистической зависимости
"""

from .metrics import (
    corr_summary,
    covariance_matrix,
    dcorr,
    mean_abs_offdiag_pearson,
    pearson,
    pearson_matrix,
)
from .models import CorrSummary

__all__ = [
    'CorrSummary',
    'corr_summary',
    'covariance_matrix',
    'dcorr',
    'mean_abs_offdiag_pearson',
    'pearson',
    'pearson_matrix',
]
