# src/synthgen/models.py
from dataclasses import dataclass, field
from typing import Any, Dict, Literal, Optional

import numpy as np

from ..errors import ConfigError, DimensionError

Split = Literal["train", "heldout", "survey"]

SHAPES = ("square", "triangle")
COLORS = ("red", "green", "blue")

# (shape_id, color_id) -> класс обучающей выборки
TRAIN_CLASSES: Dict[tuple[int, int], int] = {
    (0, 0): 0,  # red square
    (1, 1): 1,  # green triangle
    (1, 2): 2,  # blue triangle
}
HELDOUT_COMBINATION = (1, 0)  # red triangle


@dataclass
class Batch:
    """Минибатч: x плюс необязательные метки/латенты."""
    x: np.ndarray
    labels: Optional[np.ndarray] = None
    extras: Dict[str, Any] = field(default_factory=dict)

    def __len__(self) -> int:
        return self.x.shape[0]


@dataclass
class LabeledDataset:
    """
    Табличный датасет «цветных фигур».

    Все строки в одном объекте; split различает train / heldout / survey.
    label = класс обучающей выборки (0..2) или −1 для комбинаций вне train.
    """
    features: np.ndarray  # [n × m]
    shape: np.ndarray  # shape_id ∈ {0, 1}
    color: np.ndarray  # color_id ∈ {0, 1, 2}
    label: np.ndarray
    split: np.ndarray  # строки 'train' | 'heldout' | 'survey'
    n_classes: int = 3

    def __post_init__(self) -> None:
        n = self.features.shape[0]
        for name in ("shape", "color", "label", "split"):
            if getattr(self, name).shape != (n,):
                raise DimensionError(f"column {name} does not have one entry per row", {"rows": n})

    def __len__(self) -> int:
        return self.features.shape[0]

    @property
    def embed_dim(self) -> int:
        return self.features.shape[1]

    def subset(self, split: Split) -> "LabeledDataset":
        mask = self.split == split
        return LabeledDataset(
            features=self.features[mask],
            shape=self.shape[mask],
            color=self.color[mask],
            label=self.label[mask],
            split=self.split[mask],
            n_classes=self.n_classes,
        )

    def attribute(self, name: str) -> np.ndarray:
        if name == "shape":
            return self.shape
        if name == "color":
            return self.color
        if name == "label":
            return self.label
        raise ConfigError(f"unknown attribute: {name}", {"attribute": name})
