# src/diffcore/optim.py

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Literal, Sequence

import numpy as np

from ..errors import ConfigError, DimensionError, TrainingDivergenceError

logger = logging.getLogger(__name__)

OptimizerKind = Literal["sgd_momentum", "adam"]
ScheduleKind = Literal["constant", "cosine_with_warmup"]


@dataclass
class OptimizerState:
    """
    Состояние оптимизатора: слоты повторяют формы параметров.

    sgd_momentum: v ← μ·v + g; p ← p − lr·v
    adam: моменты m, v с bias correction (β₁=0.9, β₂=0.999, ε=1e−8 по умолчанию)
    weight_decay применяется развязанно: p ← p − lr·wd·p до градиентного шага.
    """

    kind: OptimizerKind = "adam"
    momentum: float = 0.9
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8
    weight_decay: float = 0.0
    step_count: int = 0
    slots_m: list[np.ndarray] = field(default_factory=list)
    slots_v: list[np.ndarray] = field(default_factory=list)

    @classmethod
    def create(
        cls,
        kind: OptimizerKind,
        params: Sequence[np.ndarray],
        *,
        momentum: float = 0.9,
        weight_decay: float = 0.0,
        beta1: float = 0.9,
        beta2: float = 0.999,
        eps: float = 1e-8,
    ) -> "OptimizerState":
        if kind not in ("sgd_momentum", "adam"):
            raise ConfigError(f"unknown optimizer kind: {kind}", {"kind": kind})
        state = cls(
            kind=kind,
            momentum=momentum,
            beta1=beta1,
            beta2=beta2,
            eps=eps,
            weight_decay=weight_decay,
        )
        state.slots_m = [np.zeros_like(p, dtype=np.float64) for p in params]
        if kind == "adam":
            state.slots_v = [np.zeros_like(p, dtype=np.float64) for p in params]
        return state


def optimizer_step(
    state: OptimizerState,
    params: Sequence[np.ndarray],
    grads: Sequence[np.ndarray],
    lr: float,
) -> list[np.ndarray]:
    """Один шаг оптимизатора; возвращает новые параметры, слоты обновляются в state."""
    if len(params) != len(grads) or len(params) != len(state.slots_m):
        raise DimensionError(
            "params, grads and optimizer slots must align",
            {"params": len(params), "grads": len(grads), "slots": len(state.slots_m)},
        )
    for idx, (p, g) in enumerate(zip(params, grads)):
        if p.shape != g.shape:
            raise DimensionError(
                "gradient shape does not mirror parameter shape",
                {"index": idx, "param": list(p.shape), "grad": list(g.shape)},
            )
        if not np.all(np.isfinite(g)):
            raise TrainingDivergenceError(
                "non-finite gradient passed to optimizer",
                {"index": idx, "step": state.step_count},
            )

    state.step_count += 1
    t = state.step_count
    new_params: list[np.ndarray] = []

    for idx, (p, g) in enumerate(zip(params, grads)):
        p_new = np.array(p, dtype=np.float64)
        if state.weight_decay:
            p_new = p_new - lr * state.weight_decay * p_new

        if state.kind == "sgd_momentum":
            m = state.momentum * state.slots_m[idx] + g
            state.slots_m[idx] = m
            p_new = p_new - lr * m
        else:
            m = state.beta1 * state.slots_m[idx] + (1.0 - state.beta1) * g
            v = state.beta2 * state.slots_v[idx] + (1.0 - state.beta2) * g * g
            state.slots_m[idx] = m
            state.slots_v[idx] = v
            m_hat = m / (1.0 - state.beta1 ** t)
            v_hat = v / (1.0 - state.beta2 ** t)
            p_new = p_new - lr * m_hat / (np.sqrt(v_hat) + state.eps)

        new_params.append(p_new)

    return new_params


@dataclass(frozen=True)
class LrSchedule:
    kind: ScheduleKind = "constant"
    total_steps: int = 1
    warmup_steps: int = 0
    base_rate: float = 1e-3

    def __post_init__(self) -> None:
        if self.warmup_steps < 0 or self.warmup_steps > self.total_steps:
            raise ConfigError(
                "warmup steps must lie in [0, total steps]",
                {"warmup_steps": self.warmup_steps, "total_steps": self.total_steps},
            )
        if self.base_rate < 0:
            raise ConfigError("base learning rate must be non-negative", {"base_rate": self.base_rate})


def lr_at(schedule: LrSchedule, step: int) -> float:
    """
    Линейный прогрев 0→base за warmup шагов, затем base·½(1+cos(π·progress)).

    Шаг за пределами total зажимается к финальному значению.
    """
    step = min(max(step, 0), schedule.total_steps)

    if schedule.warmup_steps > 0 and step < schedule.warmup_steps:
        return schedule.base_rate * step / schedule.warmup_steps

    if schedule.kind == "constant":
        return schedule.base_rate

    remaining = schedule.total_steps - schedule.warmup_steps
    if remaining <= 0:
        return schedule.base_rate
    progress = (step - schedule.warmup_steps) / remaining
    return schedule.base_rate * 0.5 * (1.0 + math.cos(math.pi * progress))
