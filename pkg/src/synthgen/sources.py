# src/synthgen/sources.py

"""
Источники минибатчей для обучающих циклов.

Источник не хранит состояния выборки: sample(n, rng) целиком определяется
переданным генератором, поэтому потоки предикторов и энкодера независимы.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Protocol

import numpy as np

from ..errors import ConfigError
from .generators import mixing_matrix, sample_pairwise_not_mutual, sample_pica_observations
from .models import Batch


class DataSource(Protocol):
    def sample(self, n: int, rng: np.random.Generator) -> Batch:
        ...


@dataclass
class PicaSource:
    """Свежие наблюдения [5v₁, 3cos(2πv₁/√3), v₂]; латенты в extras['latents']."""

    def sample(self, n: int, rng: np.random.Generator) -> Batch:
        v, obs = sample_pica_observations(n, rng)
        return Batch(x=obs, extras={"latents": v})


@dataclass
class GaussianSource:
    m: int = 8
    seed: int = 0
    _mix: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if self.m < 2:
            raise ConfigError("gaussian source needs m ≥ 2", {"m": self.m})
        self._mix = mixing_matrix(self.m, self.seed)

    def sample(self, n: int, rng: np.random.Generator) -> Batch:
        return Batch(x=rng.normal(size=(n, self.m)) @ self._mix)


@dataclass
class PairwiseNotMutualSource:
    def sample(self, n: int, rng: np.random.Generator) -> Batch:
        return Batch(x=sample_pairwise_not_mutual(n, rng))


@dataclass
class DatasetSource:
    """Минибатчи из фиксированной выборки; без возвращения, если строк хватает."""

    features: np.ndarray
    labels: Optional[np.ndarray] = None

    def __post_init__(self) -> None:
        if self.features.ndim != 2 or self.features.shape[0] == 0:
            raise ConfigError("dataset source needs a non-empty 2-d feature matrix")
        if self.labels is not None and self.labels.shape[0] != self.features.shape[0]:
            raise ConfigError("labels must have one entry per feature row")

    def sample(self, n: int, rng: np.random.Generator) -> Batch:
        total = self.features.shape[0]
        idx = rng.choice(total, size=n, replace=n > total)
        labels = None if self.labels is None else self.labels[idx]
        return Batch(x=self.features[idx], labels=labels, extras={"index": idx})
