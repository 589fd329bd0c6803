# src/apps/tasks.py

"""Хуки задач для admin_train: реконструкция, штраф ковариации, классификация."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from ..admin_game.trainer import TaskOutput
from ..diffcore import Mlp, OptimizerState, cross_entropy, mean_squared_norm, optimizer_step
from ..synthgen.models import Batch
from .models import ClassifierHead, LinearAe

logger = logging.getLogger(__name__)


@dataclass
class TiedReconstructionHook:
    """c · mean‖x − zWᵀ‖²; декодер делит W с энкодером, прямой градиент по W - в encoder_grads."""

    ae: LinearAe
    weight: float = 1.0

    def __call__(self, z: np.ndarray, batch: Batch) -> TaskOutput:
        residual = self.ae.decode(z) - batch.x
        mse, g_xhat = mean_squared_norm(residual)
        g_xhat = self.weight * g_xhat
        return TaskOutput(
            loss=self.weight * mse,
            grad_z=g_xhat @ self.ae.weight,
            encoder_grads=[g_xhat.T @ z],
            extras={"reconstruction_mse": mse},
        )

    def step(self, lr: float) -> None:
        return None


@dataclass
class DecoderReconstructionHook:
    """c · mean‖x − g(z)‖² с отдельным нелинейным декодером g (свой Adam)."""

    decoder: Mlp
    weight: float = 1.0
    _opt: Optional[OptimizerState] = field(default=None, repr=False)
    _grads: Optional[list[np.ndarray]] = field(default=None, repr=False)

    def __post_init__(self) -> None:
        self._opt = OptimizerState.create("adam", self.decoder.parameters())

    def __call__(self, z: np.ndarray, batch: Batch) -> TaskOutput:
        residual = self.decoder.forward(z) - batch.x
        mse, g_xhat = mean_squared_norm(residual)
        grads, g_z = self.decoder.backward(z, self.weight * g_xhat)
        self._grads = grads
        return TaskOutput(loss=self.weight * mse, grad_z=g_z, extras={"reconstruction_mse": mse})

    def step(self, lr: float) -> None:
        if self._grads is None:
            return
        self.decoder.set_parameters(optimizer_step(self._opt, self.decoder.parameters(), self._grads, lr))
        self._grads = None


def offdiag_covariance_penalty(z: np.ndarray) -> tuple[float, np.ndarray]:
    """Σ_{i≠j} C_ij² по несмещённой ковариации и градиент по z."""
    n = z.shape[0]
    zc = z - z.mean(axis=0)
    cov = zc.T @ zc / (n - 1)
    off = cov - np.diag(np.diag(cov))
    # столбцы zc центрированы, поэтому путь через среднее даёт ноль
    return float(np.sum(off * off)), 4.0 * zc @ off / (n - 1)


@dataclass
class CovariancePenaltyHook:
    weight: float = 1.0

    def __call__(self, z: np.ndarray, batch: Batch) -> TaskOutput:
        value, grad = offdiag_covariance_penalty(z)
        return TaskOutput(loss=self.weight * value, grad_z=self.weight * grad, extras={"covariance_penalty": value})

    def step(self, lr: float) -> None:
        return None


@dataclass
class CrossEntropyHook:
    head: ClassifierHead
    _opt: Optional[OptimizerState] = field(default=None, repr=False)
    _grads: Optional[list[np.ndarray]] = field(default=None, repr=False)

    def __post_init__(self) -> None:
        self._opt = OptimizerState.create("adam", [self.head.weight, self.head.bias])

    def __call__(self, z: np.ndarray, batch: Batch) -> TaskOutput:
        loss, g_logits = cross_entropy(self.head.logits(z), batch.labels)
        self._grads = [g_logits.T @ z, g_logits.sum(axis=0)]
        return TaskOutput(loss=loss, grad_z=g_logits @ self.head.weight)

    def step(self, lr: float) -> None:
        if self._grads is None:
            return
        self.head.weight, self.head.bias = optimizer_step(
            self._opt, [self.head.weight, self.head.bias], self._grads, lr
        )
        self._grads = None


@dataclass
class CompositeHook:
    hooks: Sequence

    def __call__(self, z: np.ndarray, batch: Batch) -> TaskOutput:
        total = TaskOutput(loss=0.0, grad_z=np.zeros_like(z))
        for hook in self.hooks:
            out = hook(z, batch)
            total.loss += out.loss
            if out.grad_z is not None:
                total.grad_z = total.grad_z + out.grad_z
            if out.encoder_grads is not None:
                total.encoder_grads = (
                    list(out.encoder_grads)
                    if total.encoder_grads is None
                    else [a + b for a, b in zip(total.encoder_grads, out.encoder_grads)]
                )
            total.extras.update(out.extras)
        return total

    def step(self, lr: float) -> None:
        for hook in self.hooks:
            hook.step(lr)
