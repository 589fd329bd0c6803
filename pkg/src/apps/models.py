# src/apps/models.py

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
from pydantic import BaseModel, Field

from ..depmetrics import CorrSummary
from ..diffcore.layers import glorot_limit
from ..errors import DimensionError
from .config import PicaMethod


# ─────────────────────────────────────
# Отчёты (уходят в result.json)
# ─────────────────────────────────────

class PicaReport(BaseModel):
    method: PicaMethod
    abs_w: Optional[list[list[float]]] = None  # |W| [l × d], столбцы нормированы
    selected_axes: Optional[list[int]] = None
    explained_variance: float = Field(..., ge=0.0)
    reconstruction_mse: Optional[float] = None
    dcorr_z: float = Field(..., ge=0.0, le=1.0)
    covariance_z: list[list[float]]
    eval_samples: int
    steps: int = 0


class ConvergeReport(BaseModel):
    final_predictor_loss: float
    final_mean_abs_pearson: float
    start_mean_sq_dcorr: float
    end_mean_sq_dcorr: float
    summary: CorrSummary


class AttributeAccuracy(BaseModel):
    shape: float = Field(..., ge=0.0, le=1.0)
    color: float = Field(..., ge=0.0, le=1.0)


class GeneralizationReport(BaseModel):
    """
    Точности kNN по атрибутам на замороженных признаках и доля heldout
    (красные треугольники), отнесённых к классу «красный квадрат».
    """

    attributes: AttributeAccuracy
    heldout_as_red_square: float = Field(..., ge=0.0, le=1.0)


class ClassifyReport(BaseModel):
    use_admin: bool
    train_accuracy: float = Field(..., ge=0.0, le=1.0)
    generalization: GeneralizationReport
    mean_sq_dcorr: float
    mean_abs_pearson: float
    final_mean_norm: float


class SweepRow(BaseModel):
    alpha: float
    secondary_accuracy: float
    mean_attribute_accuracy: float
    mean_sq_dcorr: float


class AblationRow(BaseModel):
    formulation: str
    predictor_steps: int
    shape_accuracy: float
    color_accuracy: float
    mean_sq_dcorr: float
    final_mean_norm: float


class SslReport(BaseModel):
    attributes: AttributeAccuracy
    mean_sq_dcorr: float
    mean_abs_pearson: float
    final_invariance: float


class ImputeReport(BaseModel):
    pairwise_dcorr: list[float]
    joint_dcorr: float
    imputation_mse: float


# ─────────────────────────────────────
# Модели с параметрами
# ─────────────────────────────────────

@dataclass
class LinearAe:
    """Связанные веса: z = xW, x̂ = zWᵀ; W [l × d]. Смещений нет."""

    weight: np.ndarray

    @classmethod
    def init(cls, in_features: int, out_features: int, rng: np.random.Generator) -> "LinearAe":
        limit = glorot_limit(in_features, out_features)
        return cls(weight=rng.uniform(-limit, limit, size=(in_features, out_features)))

    def forward(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=np.float64)
        if x.ndim != 2 or x.shape[1] != self.weight.shape[0]:
            raise DimensionError(
                "input width does not match the projection",
                {"expected_cols": self.weight.shape[0], "shape": list(x.shape)},
            )
        return x @ self.weight

    def decode(self, z: np.ndarray) -> np.ndarray:
        return z @ self.weight.T

    def backward(self, x: np.ndarray, upstream: np.ndarray) -> tuple[list[np.ndarray], np.ndarray]:
        return [np.asarray(x).T @ upstream], upstream @ self.weight.T

    def parameters(self) -> list[np.ndarray]:
        return [self.weight]

    def set_parameters(self, params) -> None:
        (weight,) = params
        if weight.shape != self.weight.shape:
            raise DimensionError("projection shape mismatch")
        self.weight = np.array(weight, dtype=np.float64)


@dataclass
class ClassifierHead:
    weight: np.ndarray  # [n_c × d]
    bias: np.ndarray  # [n_c]

    def __post_init__(self) -> None:
        if self.weight.ndim != 2 or self.bias.shape != (self.weight.shape[0],):
            raise DimensionError("classifier head shapes are inconsistent")

    @classmethod
    def init(cls, d: int, n_classes: int, rng: np.random.Generator) -> "ClassifierHead":
        limit = glorot_limit(d, n_classes)
        return cls(weight=rng.uniform(-limit, limit, size=(n_classes, d)), bias=np.zeros(n_classes))

    def logits(self, z: np.ndarray) -> np.ndarray:
        if z.shape[1] != self.weight.shape[1]:
            raise DimensionError("representation width does not match the head")
        return z @ self.weight.T + self.bias

    def predict(self, z: np.ndarray) -> np.ndarray:
        return np.argmax(self.logits(z), axis=1)
