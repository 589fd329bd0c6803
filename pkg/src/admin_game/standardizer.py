# src/admin_game/standardizer.py

"""
Пакетная стандартизация по столбцам с полным обратным проходом
(как у batch-norm: градиент идёт и через μ, и через дисперсию).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..errors import DimensionError

DEFAULT_EPS = 1e-5


@dataclass
class Standardizer:
    eps: float = DEFAULT_EPS
    mean: Optional[np.ndarray] = None
    std: Optional[np.ndarray] = None
    _normalized: Optional[np.ndarray] = field(default=None, repr=False)

    def forward(self, z: np.ndarray) -> np.ndarray:
        z = np.asarray(z, dtype=np.float64)
        if z.ndim != 2 or z.shape[0] < 2:
            raise DimensionError("standardize needs a matrix with n ≥ 2 rows", {"shape": list(z.shape)})
        mu = z.mean(axis=0)
        centered = z - mu
        var = np.mean(centered * centered, axis=0)  # смещённая дисперсия (1/n)
        s = np.sqrt(var + self.eps)
        out = centered / s
        self.mean, self.std, self._normalized = mu, s, out
        return out

    def backward(self, upstream: np.ndarray) -> np.ndarray:
        if self._normalized is None or self.std is None:
            raise DimensionError("standardize backward called before forward")
        g = np.asarray(upstream, dtype=np.float64)
        if g.shape != self._normalized.shape:
            raise DimensionError(
                "upstream does not match the standardized batch",
                {"expected": list(self._normalized.shape), "got": list(g.shape)},
            )
        x_hat = self._normalized
        return (g - g.mean(axis=0) - x_hat * np.mean(g * x_hat, axis=0)) / self.std


def standardize(z: np.ndarray, eps: float = DEFAULT_EPS) -> np.ndarray:
    return Standardizer(eps=eps).forward(z)


def standardize_backward(standardizer: Standardizer, upstream: np.ndarray) -> np.ndarray:
    return standardizer.backward(upstream)
