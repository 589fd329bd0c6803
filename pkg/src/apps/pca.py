# src/apps/pca.py

"""
PCA через собственное разложение выборочной ковариации.

Размерности маленькие (l ≤ 8), поэтому используется циклический метод
Якоби: вращения Гивенса до обнуления внедиагональных элементов.
"""

from __future__ import annotations

import logging

import numpy as np

from ..depmetrics import covariance_matrix
from ..errors import ConfigError, DimensionError, NumericError

logger = logging.getLogger(__name__)

JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 64


def _off_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.max(np.abs(off))) if a.shape[0] > 1 else 0.0


def jacobi_eigh(
    a: np.ndarray, tol: float = JACOBI_TOL, max_sweeps: int = JACOBI_MAX_SWEEPS
) -> tuple[np.ndarray, np.ndarray]:
    """
    Собственные значения (по убыванию) и векторы симметричной матрицы.

    Столбцы векторов ортонормированы; знак выбран так, что наибольшая
    по модулю компонента каждого столбца положительна.
    """
    a = np.array(a, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError("jacobi_eigh needs a square matrix", {"shape": list(a.shape)})
    a = 0.5 * (a + a.T)
    size = a.shape[0]
    vecs = np.eye(size)
    scale = max(1.0, float(np.max(np.abs(np.diag(a))))) if size else 1.0

    for sweep in range(max_sweeps):
        if _off_norm(a) <= tol * scale:
            break
        for p in range(size - 1):
            for q in range(p + 1, size):
                if a[p, q] == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * a[p, q])
                t = (1.0 if theta >= 0.0 else -1.0) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                rot = np.eye(size)
                rot[p, p] = c
                rot[q, q] = c
                rot[p, q] = s
                rot[q, p] = -s
                a = rot.T @ a @ rot
                vecs = vecs @ rot
    else:
        if _off_norm(a) > tol * scale:
            raise NumericError(
                "jacobi eigensolver did not converge",
                {"sweeps": max_sweeps, "off_diagonal": _off_norm(a)},
            )

    vals = np.diag(a).copy()
    order = np.argsort(-vals, kind="stable")
    vals, vecs = vals[order], vecs[:, order]
    pivots = np.argmax(np.abs(vecs), axis=0)
    signs = np.sign(vecs[pivots, np.arange(size)])
    signs[signs == 0.0] = 1.0
    return vals, vecs * signs


def pca_svd(x: np.ndarray, d: int) -> tuple[np.ndarray, float]:
    """(W [l × d], сумма d наибольших собственных значений ковариации)."""
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 2 or x.shape[0] < 2:
        raise DimensionError("pca needs a data matrix with at least two rows", {"shape": list(x.shape)})
    l = x.shape[1]
    if not 1 <= d <= l:
        raise ConfigError("pca needs 1 ≤ d ≤ l", {"d": d, "l": l})
    if l > 8:
        logger.warning("pca_svd on l=%d columns: the Jacobi solver targets l ≤ 8", l)

    vals, vecs = jacobi_eigh(covariance_matrix(x))
    explained = float(np.sum(vals[:d]))
    logger.debug("pca_svd: eigenvalues=%s explained=%.6f", vals.tolist(), explained)
    return vecs[:, :d], explained
