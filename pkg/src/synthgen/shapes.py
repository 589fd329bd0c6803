# src/synthgen/shapes.py

"""
Табличная реализация «цветных фигур».

Атрибуты shape ∈ {square, triangle} и color ∈ {red, green, blue}
плюс непрерывные мешающие факторы (положение/размер) проходят через
фиксированную случайную двухслойную сеть в ℝ^m и зашумляются N(0, σ²).
Форма подаётся вчетверо слабее цвета и тонет в мешающих факторах:
классификатор без регуляризации берёт цвет и теряет форму.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from ..errors import ConfigError
from .models import COLORS, HELDOUT_COMBINATION, SHAPES, TRAIN_CLASSES, LabeledDataset
from .rng import make_rng

logger = logging.getLogger(__name__)


@dataclass
class ShapesWorld:
    embed_dim: int = 16
    hidden: int = 32
    noise_sigma: float = 0.1
    shape_scale: float = 0.25
    n_nuisance: int = 3
    seed: int = 0

    def __post_init__(self) -> None:
        if self.embed_dim < 8:
            raise ConfigError("shapes embedding needs m ≥ 8", {"embed_dim": self.embed_dim})
        if self.noise_sigma < 0:
            raise ConfigError("noise sigma must be non-negative", {"noise_sigma": self.noise_sigma})

        rng = make_rng(self.seed, "shapes_embedding")
        n_in = len(SHAPES) + len(COLORS) + self.n_nuisance
        self._w1 = rng.normal(0.0, 1.0, size=(n_in, self.hidden))
        self._b1 = rng.normal(0.0, 0.5, size=self.hidden)
        self._w2 = rng.normal(0.0, 1.0 / np.sqrt(self.hidden), size=(self.hidden, self.embed_dim))

    def embed(self, shape_ids: np.ndarray, color_ids: np.ndarray, nuisance: np.ndarray) -> np.ndarray:
        n = shape_ids.shape[0]
        code = np.zeros((n, len(SHAPES) + len(COLORS)))
        code[np.arange(n), shape_ids] = self.shape_scale
        code[np.arange(n), len(SHAPES) + color_ids] = 1.0
        inp = np.concatenate([code, nuisance], axis=1)
        return np.tanh(inp @ self._w1 + self._b1) @ self._w2

    def render(self, shape_ids: np.ndarray, color_ids: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        """Новые мешающие факторы и шум на каждый вызов: так строятся «виды» для SSL."""
        shape_ids = np.asarray(shape_ids, dtype=np.int64)
        color_ids = np.asarray(color_ids, dtype=np.int64)
        n = shape_ids.shape[0]
        nuisance = rng.uniform(-1.0, 1.0, size=(n, self.n_nuisance))
        clean = self.embed(shape_ids, color_ids, nuisance)
        return clean + rng.normal(0.0, self.noise_sigma, size=clean.shape)

    def render_with_nuisance(
        self,
        shape_ids: np.ndarray,
        color_ids: np.ndarray,
        nuisance: np.ndarray,
        rng: np.random.Generator,
    ) -> np.ndarray:
        """Тот же латент (включая мешающие факторы), независимый шум."""
        clean = self.embed(np.asarray(shape_ids), np.asarray(color_ids), nuisance)
        return clean + rng.normal(0.0, self.noise_sigma, size=clean.shape)


def _combination_rows(shape_id: int, color_id: int, count: int) -> tuple[np.ndarray, np.ndarray]:
    return np.full(count, shape_id, dtype=np.int64), np.full(count, color_id, dtype=np.int64)


def gen_shapes_dataset(
    n_per_class: int = 200,
    noise_sigma: float = 0.1,
    embed_dim: int = 16,
    seed: int = 0,
    hidden: int = 32,
) -> LabeledDataset:
    """
    train: (red,square)=0, (green,triangle)=1, (blue,triangle)=2 по n_per_class;
    heldout: только (red,triangle);
    survey: все шесть комбинаций по n_per_class (оценка атрибутов kNN).
    """
    if n_per_class < 1:
        raise ConfigError("n_per_class must be positive", {"n_per_class": n_per_class})

    world = ShapesWorld(embed_dim=embed_dim, hidden=hidden, noise_sigma=noise_sigma, seed=seed)
    rng = make_rng(seed, "shapes_samples")

    blocks: list[tuple[np.ndarray, np.ndarray, str]] = []
    for (shape_id, color_id) in TRAIN_CLASSES:
        s, c = _combination_rows(shape_id, color_id, n_per_class)
        blocks.append((s, c, "train"))

    s, c = _combination_rows(*HELDOUT_COMBINATION, n_per_class)
    blocks.append((s, c, "heldout"))

    for shape_id in range(len(SHAPES)):
        for color_id in range(len(COLORS)):
            s, c = _combination_rows(shape_id, color_id, n_per_class)
            blocks.append((s, c, "survey"))

    shapes = np.concatenate([b[0] for b in blocks])
    colors = np.concatenate([b[1] for b in blocks])
    splits = np.concatenate([np.full(b[0].shape[0], b[2], dtype=object) for b in blocks]).astype(str)
    labels = np.array(
        [TRAIN_CLASSES.get((int(si), int(ci)), -1) for si, ci in zip(shapes, colors)],
        dtype=np.int64,
    )
    features = world.render(shapes, colors, rng)

    logger.debug(
        "gen_shapes_dataset: %d rows (m=%d, sigma=%.3f, seed=%d)",
        features.shape[0], embed_dim, noise_sigma, seed,
    )
    return LabeledDataset(
        features=features,
        shape=shapes,
        color=colors,
        label=labels,
        split=splits,
    )
