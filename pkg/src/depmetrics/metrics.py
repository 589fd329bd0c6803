# src/depmetrics/metrics.py

"""
Меры зависимости: Пирсон, ковариация, эмпирическая distance correlation.

dCor считается V-статистикой (нормировка 1/n², исходное определение):
попарные евклидовы расстояния → двойное центрирование → dCov² = ⟨A, B⟩/n².
Память и время O(n²); поддерживаемый диапазон n ≤ 8192.
"""

from __future__ import annotations

import logging

import numpy as np
from scipy.spatial.distance import pdist, squareform

from ..errors import DegenerateInputError, DimensionError
from .models import CorrSummary

logger = logging.getLogger(__name__)

MAX_DCORR_SAMPLES = 8192


def _as_columns(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    if x.ndim == 1:
        return x[:, None]
    if x.ndim != 2:
        raise DimensionError("expected a vector or a matrix", {"ndim": x.ndim})
    return x


def pearson(x: np.ndarray, y: np.ndarray) -> float:
    x = np.asarray(x, dtype=np.float64).ravel()
    y = np.asarray(y, dtype=np.float64).ravel()
    if x.shape != y.shape:
        raise DimensionError("pearson inputs differ in length", {"x": x.size, "y": y.size})
    if x.size < 2:
        raise DimensionError("pearson needs at least two samples", {"n": x.size})

    xc = x - x.mean()
    yc = y - y.mean()
    sxx = float(np.dot(xc, xc))
    syy = float(np.dot(yc, yc))
    if sxx == 0.0 or syy == 0.0:
        raise DegenerateInputError(
            "pearson is undefined for zero-variance input",
            {"var_x_zero": sxx == 0.0, "var_y_zero": syy == 0.0},
        )
    rho = float(np.dot(xc, yc)) / np.sqrt(sxx * syy)
    return float(np.clip(rho, -1.0, 1.0))


def _double_centered_distances(x: np.ndarray) -> np.ndarray:
    a = squareform(pdist(x, metric="euclidean"))
    # матрица симметрична: средние по строкам и по столбцам совпадают
    row_mean = a.mean(axis=1)
    grand_mean = row_mean.mean()
    a -= row_mean[:, None]
    a -= row_mean[None, :]
    a += grand_mean
    return a


def dcorr(x: np.ndarray, y: np.ndarray) -> float:
    x = _as_columns(x)
    y = _as_columns(y)
    n = x.shape[0]
    if y.shape[0] != n:
        raise DimensionError("dcorr inputs differ in sample count", {"x": n, "y": y.shape[0]})
    if n < 4:
        raise DimensionError("dcorr needs at least four samples", {"n": n})
    if n > MAX_DCORR_SAMPLES:
        logger.warning("dcorr called with n=%d above the supported %d", n, MAX_DCORR_SAMPLES)

    a = _double_centered_distances(x)
    b = _double_centered_distances(y)
    n2 = float(n * n)

    dcov2_xy = np.vdot(a, b) / n2
    dvar2_x = np.vdot(a, a) / n2
    dvar2_y = np.vdot(b, b) / n2
    if dvar2_x <= 0.0 or dvar2_y <= 0.0:
        return 0.0

    # отрицательный dCov² из-за округления зажимаем в 0
    r2 = max(float(dcov2_xy), 0.0) / np.sqrt(dvar2_x * dvar2_y)
    return float(min(np.sqrt(r2), 1.0))


def covariance_matrix(z: np.ndarray) -> np.ndarray:
    """Несмещённая выборочная ковариация (делитель n−1), симметризованная."""
    z = _as_columns(z)
    n = z.shape[0]
    if n < 2:
        raise DimensionError("covariance needs at least two samples", {"n": n})
    zc = z - z.mean(axis=0)
    cov = zc.T @ zc / (n - 1)
    return 0.5 * (cov + cov.T)


def pearson_matrix(z: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """
    Матрица Пирсона [d × d] и список вырожденных (константных) столбцов.

    Пары с вырожденным столбцом получают 0, диагональ - 1 у невырожденных.
    """
    z = _as_columns(z)
    if z.shape[0] < 2:
        raise DimensionError("pearson matrix needs at least two samples", {"n": z.shape[0]})

    zc = z - z.mean(axis=0)
    ss = np.einsum("ij,ij->j", zc, zc)
    degenerate = [int(i) for i in np.flatnonzero(ss == 0.0)]

    scale = np.where(ss > 0.0, 1.0 / np.sqrt(np.where(ss > 0.0, ss, 1.0)), 0.0)
    zn = zc * scale
    rho = np.clip(zn.T @ zn, -1.0, 1.0)
    return rho, degenerate


def mean_abs_offdiag_pearson(z: np.ndarray) -> tuple[float, bool]:
    rho, degenerate = pearson_matrix(z)
    d = rho.shape[0]
    if d < 2:
        return 0.0, bool(degenerate)
    upper = np.triu_indices(d, k=1)
    return float(np.mean(np.abs(rho[upper]))), bool(degenerate)


def corr_summary(z: np.ndarray) -> CorrSummary:
    z = _as_columns(z)
    n, d = z.shape
    if n < 4 or d < 2:
        raise DimensionError("corr_summary needs n ≥ 4 and d ≥ 2", {"n": n, "d": d})

    rho, degenerate = pearson_matrix(z)
    upper = np.triu_indices(d, k=1)
    mean_abs = float(np.mean(np.abs(rho[upper])))
    if degenerate:
        logger.warning("corr_summary: constant columns %s contribute zero correlation", degenerate)

    per_dim: list[float] = []
    for i in range(d):
        others = [j for j in range(d) if j != i]
        per_dim.append(dcorr(z[:, i], z[:, others]))

    mean_sq = float(np.mean(np.square(per_dim)))
    return CorrSummary(
        mean_abs_offdiag_pearson=min(mean_abs, 1.0),
        mean_sq_dcorr=min(mean_sq, 1.0),
        per_dim_dcorr=per_dim,
        degenerate=bool(degenerate),
        degenerate_columns=degenerate,
        n_samples=n,
    )
