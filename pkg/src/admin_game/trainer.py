# src/admin_game/trainer.py

"""
Чередующийся минимакс-цикл.

На каждый шаг энкодера:
  1. k шагов предикторов, каждый на свежем минибатче, энкодер заморожен;
  2. шаг энкодера на свежем минибатче, предикторы заморожены, градиент
     λ·L_adv + L_task идёт через входы банка и через статистики батча.

Батчи предикторов и энкодера берутся из разных потоков RNG, так что
при λ = 0 траектория энкодера совпадает с обучением только на задачу.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Optional, Protocol, Sequence

import numpy as np

from ..depmetrics import corr_summary, mean_abs_offdiag_pearson
from ..diffcore import LrSchedule, OptimizerState, lr_at, optimizer_step
from ..errors import ConfigError, DimensionError, TrainingDivergenceError
from ..synthgen.models import Batch
from ..synthgen.rng import make_rng
from ..synthgen.sources import DataSource
from .config import AdminConfig
from .losses import encoder_adversarial_loss_grad, predictor_loss_grad
from .predictor_bank import PredictorBank
from .runlog import RunLog, StepRecord
from .standardizer import Standardizer

logger = logging.getLogger(__name__)


# ─────────────────────────────────────
# Протоколы
# ─────────────────────────────────────

class Encoder(Protocol):
    def forward(self, x: np.ndarray) -> np.ndarray:
        ...

    def backward(self, x: np.ndarray, upstream: np.ndarray) -> tuple[list[np.ndarray], np.ndarray]:
        ...

    def parameters(self) -> list[np.ndarray]:
        ...

    def set_parameters(self, params: Sequence[np.ndarray]) -> None:
        ...


@dataclass
class TaskOutput:
    """
    loss - значение задачи на батче;
    grad_z - градиент по z (идёт в энкодер через backward);
    encoder_grads - прямые градиенты по параметрам энкодера (связанные веса).
    """
    loss: float = 0.0
    grad_z: Optional[np.ndarray] = None
    encoder_grads: Optional[list[np.ndarray]] = None
    extras: dict[str, Any] = field(default_factory=dict)


class TaskHook(Protocol):
    def __call__(self, z: np.ndarray, batch: Batch) -> TaskOutput:
        ...

    def step(self, lr: float) -> None:
        """Шаг по собственным параметрам хука (голова классификатора, декодер)."""
        ...


# ─────────────────────────────────────
# Шаги игры
# ─────────────────────────────────────

def predictor_inputs(z_raw: np.ndarray, cfg: AdminConfig) -> tuple[np.ndarray, Optional[Standardizer]]:
    if cfg.formulation == "standardized":
        st = Standardizer(eps=cfg.standardize_eps)
        return st.forward(z_raw), st
    return np.asarray(z_raw, dtype=np.float64), None


def adversarial_encoder_grad(
    bank: PredictorBank, z_raw: np.ndarray, cfg: AdminConfig
) -> tuple[float, np.ndarray]:
    """
    Состязательная потеря энкодера и её градиент по сырому z:
    стандартизация → банк → потеря → обратно через входы банка и стандартизатор.
    """
    z_eff, st = predictor_inputs(z_raw, cfg)
    z_hat = bank.forward(z_eff)
    loss, g_eff, g_hat = encoder_adversarial_loss_grad(z_eff, z_hat, cfg)
    _, g_through_bank = bank.backward(z_eff, g_hat)
    g_eff = g_eff + g_through_bank
    if st is not None:
        return loss, st.backward(g_eff)
    return loss, g_eff


def predictor_update(
    bank: PredictorBank,
    z_raw: np.ndarray,
    cfg: AdminConfig,
    optimizer: OptimizerState,
    lr: float,
) -> float:
    """Один шаг предикторов; энкодер (и z) не меняются."""
    z_eff, _ = predictor_inputs(z_raw, cfg)
    z_hat = bank.forward(z_eff)
    loss, g_hat = predictor_loss_grad(z_eff, z_hat, cfg.distance)
    if not math.isfinite(loss):
        raise TrainingDivergenceError("predictor loss is not finite", {"phase": "predictor", "loss": repr(loss)})
    grads, _ = bank.backward(z_eff, g_hat)
    bank.set_parameters(optimizer_step(optimizer, bank.parameters(), grads, lr))
    return loss


def adversarial_loss_value(bank: PredictorBank, z_raw: np.ndarray, cfg: AdminConfig) -> float:
    z_eff, _ = predictor_inputs(z_raw, cfg)
    loss, _, _ = encoder_adversarial_loss_grad(z_eff, bank.forward(z_eff), cfg)
    return loss


# ---- helpers ----

def _mean_norm(z: np.ndarray) -> float:
    return float(np.mean(np.linalg.norm(z, axis=1)))


def _diverged(step: int, phase: str, quantity: str, log: RunLog, value: Any = None) -> TrainingDivergenceError:
    details = {"step": step, "phase": phase, "quantity": quantity}
    if value is not None:
        details["value"] = repr(value)
    log.diagnostic = details
    logger.error("Training diverged at step %d (%s: %s)", step, phase, quantity)
    return TrainingDivergenceError(f"non-finite {quantity} at step {step}", details, partial_log=log)


def _check_widths(encoder: Encoder, bank: Optional[PredictorBank], source: DataSource, cfg: AdminConfig) -> int:
    sample = source.sample(4, make_rng(cfg.seed, "width_check"))
    d = int(encoder.forward(sample.x).shape[1])
    if d < 2:
        raise ConfigError("embedding dimension must be at least 2", {"d": d})
    if bank is not None and bank.d != d:
        raise DimensionError("predictor bank size differs from encoder output width", {"bank": bank.d, "d": d})
    if d != cfg.embed_dim:
        raise ConfigError("embed_dim does not match encoder output width", {"embed_dim": cfg.embed_dim, "d": d})
    return d


# ─────────────────────────────────────
# Цикл обучения
# ─────────────────────────────────────

def admin_train(
    encoder: Encoder,
    bank: Optional[PredictorBank],
    data_source: DataSource,
    task_hook: Optional[TaskHook],
    cfg: AdminConfig,
) -> RunLog:
    """
    bank=None - обучение только на задачу (без предикторов и L_adv).

    Все случайные выборки идут из потоков seed'а cfg, поэтому одинаковый
    cfg даёт побитово одинаковый RunLog.
    """
    d = _check_widths(encoder, bank, data_source, cfg)

    pred_rng = make_rng(cfg.seed, "predictor_batches")
    enc_rng = make_rng(cfg.seed, "encoder_batches")
    eval_rng = make_rng(cfg.seed, "evaluation")

    enc_opt = OptimizerState.create(
        cfg.optimizer, encoder.parameters(), momentum=cfg.momentum, weight_decay=cfg.weight_decay
    )
    pred_opt = (
        OptimizerState.create(cfg.optimizer, bank.parameters(), momentum=cfg.momentum)
        if bank is not None
        else None
    )
    enc_schedule = LrSchedule(cfg.schedule, cfg.steps, cfg.warmup_steps, cfg.encoder_lr)
    pred_schedule = LrSchedule(
        cfg.predictor_schedule or cfg.schedule, cfg.steps, cfg.warmup_steps, cfg.predictor_lr
    )

    log = RunLog(config=cfg.model_dump())
    monitor = data_source.sample(cfg.dcorr_samples, eval_rng)
    log.append_dcorr(0, corr_summary(encoder.forward(monitor.x)).mean_sq_dcorr)

    logger.info(
        "admin_train start: formulation=%s lambda=%s k=%d d=%d steps=%d bank=%s",
        cfg.formulation, cfg.task_weight, cfg.predictor_steps, d, cfg.steps, bank is not None,
    )

    step = 0
    try:
        for step in range(1, cfg.steps + 1):
            lr_enc = lr_at(enc_schedule, step - 1)
            lr_pred = lr_at(pred_schedule, step - 1)

            pred_loss = 0.0
            if bank is not None:
                for _ in range(cfg.predictor_steps):
                    batch = data_source.sample(cfg.batch_size, pred_rng)
                    pred_loss = predictor_update(bank, encoder.forward(batch.x), cfg, pred_opt, lr_pred)

            batch = data_source.sample(cfg.batch_size, enc_rng)
            z = encoder.forward(batch.x)
            grad_z = np.zeros_like(z)

            adv_loss = 0.0
            if bank is not None:
                if cfg.task_weight > 0.0:
                    adv_loss, g_adv = adversarial_encoder_grad(bank, z, cfg)
                    grad_z = grad_z + cfg.task_weight * g_adv
                else:
                    adv_loss = adversarial_loss_value(bank, z, cfg)

            task = task_hook(z, batch) if task_hook is not None else TaskOutput()
            if task.grad_z is not None:
                grad_z = grad_z + task.grad_z

            for name, value in (("predictor loss", pred_loss), ("adversarial loss", adv_loss), ("task loss", task.loss)):
                if not math.isfinite(value):
                    raise _diverged(step, "encoder", name, log, value)
            if not np.all(np.isfinite(grad_z)):
                raise _diverged(step, "encoder", "representation gradient", log)

            enc_grads, _ = encoder.backward(batch.x, grad_z)
            if task.encoder_grads is not None:
                enc_grads = [g + extra for g, extra in zip(enc_grads, task.encoder_grads)]
            encoder.set_parameters(optimizer_step(enc_opt, encoder.parameters(), enc_grads, lr_enc))
            if task_hook is not None:
                task_hook.step(lr_enc)

            mean_abs, _ = mean_abs_offdiag_pearson(z)
            mean_norm = _mean_norm(z)
            if not math.isfinite(mean_norm):
                raise _diverged(step, "encoder", "representation norm", log, mean_norm)

            log.append(
                StepRecord(
                    step=step,
                    predictor_loss=pred_loss,
                    adversarial_loss=adv_loss,
                    task_loss=float(task.loss),
                    mean_abs_pearson=mean_abs,
                    mean_norm=mean_norm,
                    encoder_lr=lr_enc,
                )
            )

            if cfg.dcorr_every and step % cfg.dcorr_every == 0:
                log.append_dcorr(step, corr_summary(encoder.forward(monitor.x)).mean_sq_dcorr)

            if step % cfg.log_every == 0:
                logger.info(
                    "step %d: predictor=%.4f adversarial=%.4f task=%.4f mean|rho|=%.4f norm=%.3f",
                    step, pred_loss, adv_loss, task.loss, mean_abs, mean_norm,
                )
            else:
                logger.debug("step %d: predictor=%.6f adversarial=%.6f", step, pred_loss, adv_loss)
    except TrainingDivergenceError as exc:
        if exc.partial_log is None:
            exc.partial_log = log
            log.diagnostic = {"step": step, **exc.details}
            logger.error("Training diverged at step %d: %s", step, exc.message)
        raise

    evaluation = data_source.sample(cfg.eval_samples, eval_rng)
    z_eval = encoder.forward(evaluation.x)
    if not np.all(np.isfinite(z_eval)):
        raise _diverged(cfg.steps, "evaluation", "representation", log)
    log.summary = corr_summary(z_eval)
    if not cfg.dcorr_every or cfg.steps % cfg.dcorr_every != 0:
        log.append_dcorr(cfg.steps, corr_summary(encoder.forward(monitor.x)).mean_sq_dcorr)

    logger.info(
        "admin_train done: mean|rho|=%.4f mean_sq_dcorr=%.4f",
        log.summary.mean_abs_offdiag_pearson, log.summary.mean_sq_dcorr,
    )
    return log
