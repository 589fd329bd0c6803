# src/synthgen/generators.py

"""
Детерминированные генераторы синтетических распределений.

Каждый генератор - чистая функция (параметры, seed): повторный вызов
даёт побитово тот же результат.
"""

from __future__ import annotations

import logging
import math

import numpy as np

from ..errors import ConfigError
from .rng import make_rng

logger = logging.getLogger(__name__)

SQRT3 = math.sqrt(3.0)


def _require(cond: bool, message: str, **details) -> None:
    if not cond:
        raise ConfigError(message, details)


def gen_quadratic_pair(n: int, a: float = 1.0, seed: int = 0) -> np.ndarray:
    """x₁ ~ U(−a, a), x₂ = x₁²: некоррелированы, но зависимы."""
    _require(n >= 4, "quadratic pair needs n ≥ 4", n=n)
    _require(a > 0, "quadratic pair needs a > 0", a=a)
    rng = make_rng(seed, "quadratic_pair")
    x1 = rng.uniform(-a, a, size=n)
    return np.column_stack([x1, x1 * x1])


def sample_pica_observations(n: int, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    # v₁, v₂ ~ U(−√3, √3), единичная дисперсия
    v = rng.uniform(-SQRT3, SQRT3, size=(n, 2))
    v1, v2 = v[:, 0], v[:, 1]
    obs = np.column_stack(
        [
            5.0 * v1,
            3.0 * np.cos(2.0 * math.pi * v1 / SQRT3),
            v2,
        ]
    )
    return v, obs


def gen_pica_observations(n: int, seed: int = 0) -> tuple[np.ndarray, np.ndarray]:
    """
    Латенты v [n × 2] и наблюдения x = [5v₁, 3cos(2πv₁/√3), v₂] [n × 3].

    Дисперсии наблюдений (25, 4.5, 1), попарно некоррелированы.
    """
    _require(n >= 4, "pica observations need n ≥ 4", n=n)
    return sample_pica_observations(n, make_rng(seed, "pica_observations"))


def sample_pairwise_not_mutual(n: int, rng: np.random.Generator) -> np.ndarray:
    x12 = rng.uniform(0.0, 1.0, size=(n, 2))
    s = x12[:, 0] + x12[:, 1]
    return np.column_stack([x12, s - np.floor(s)])


def gen_pairwise_not_mutual(n: int, seed: int = 0) -> np.ndarray:
    """x₁, x₂ ~ U(0,1), x₃ = frac(x₁ + x₂): попарно независимы, совместно зависимы."""
    _require(n >= 4, "pairwise-not-mutual triple needs n ≥ 4", n=n)
    return sample_pairwise_not_mutual(n, make_rng(seed, "pairwise_not_mutual"))


def gen_independent_uniform(n: int, d: int = 2, seed: int = 0) -> np.ndarray:
    _require(n >= 4 and d >= 1, "independent uniforms need n ≥ 4, d ≥ 1", n=n, d=d)
    return make_rng(seed, "independent_uniform").uniform(-1.0, 1.0, size=(n, d))


def mixing_matrix(m: int, seed: int) -> np.ndarray:
    """Фиксированная случайная смешивающая матрица для коррелированного гауссиана."""
    rng = make_rng(seed, "gaussian_mixing")
    return rng.normal(0.0, 1.0, size=(m, m)) / math.sqrt(m)


def gen_correlated_gaussian(n: int, m: int = 8, seed: int = 0) -> np.ndarray:
    _require(n >= 4 and m >= 2, "correlated gaussian needs n ≥ 4, m ≥ 2", n=n, m=m)
    g = make_rng(seed, "gaussian_samples").normal(size=(n, m))
    return g @ mixing_matrix(m, seed)
