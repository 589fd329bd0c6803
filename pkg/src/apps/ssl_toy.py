# src/apps/ssl_toy.py

"""
Игрушечное самообучение: инвариантность двух видов плюс состязательный член.

Вид - тот же латент (форма, цвет, мешающие факторы), отрендеренный с
независимым шумом. Инвариантность считается на стандартизованных z,
состязательный член берётся для каждого вида с весом λ/2.
"""

from __future__ import annotations

import logging
import math
from typing import Optional

import numpy as np

from ..admin_game import PredictorBank, RunLog, StepRecord, Standardizer
from ..admin_game.trainer import adversarial_encoder_grad, predictor_update
from ..depmetrics import corr_summary, mean_abs_offdiag_pearson
from ..diffcore import LrSchedule, Mlp, OptimizerState, lr_at, optimizer_step
from ..errors import TrainingDivergenceError
from ..synthgen import LabeledDataset, ShapesWorld
from ..synthgen.rng import make_rng
from .classify import attribute_accuracy, shapes_dataset
from .config import SslConfig
from .models import SslReport

logger = logging.getLogger(__name__)


def invariance_mse(
    z1: np.ndarray, z2: np.ndarray, eps: float = 1e-5
) -> tuple[float, np.ndarray, np.ndarray]:
    """mean‖s(z) − s(z′)‖²/d по стандартизованным видам и градиенты по z, z′."""
    st1, st2 = Standardizer(eps=eps), Standardizer(eps=eps)
    diff = st1.forward(z1) - st2.forward(z2)
    loss = float(np.mean(diff * diff))
    g = 2.0 * diff / diff.size
    return loss, st1.backward(g), st2.backward(-g)


class ViewSampler:
    """Пары видов для случайных латентов из пула (форма, цвет) датасета."""

    def __init__(self, dataset: LabeledDataset, world: ShapesWorld) -> None:
        self.shapes = dataset.shape
        self.colors = dataset.color
        self.world = world

    def sample(self, n: int, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
        idx = rng.integers(0, self.shapes.shape[0], size=n)
        s, c = self.shapes[idx], self.colors[idx]
        nuisance = rng.uniform(-1.0, 1.0, size=(n, self.world.n_nuisance))
        x1 = self.world.render_with_nuisance(s, c, nuisance, rng)
        x2 = self.world.render_with_nuisance(s, c, nuisance, rng)
        return x1, x2


def _fail(log: RunLog, step: int, quantity: str) -> TrainingDivergenceError:
    details = {"step": step, "phase": "encoder", "quantity": quantity}
    log.diagnostic = details
    logger.error("SSL training diverged at step %d (%s)", step, quantity)
    return TrainingDivergenceError(f"non-finite {quantity} at step {step}", details, partial_log=log)


def train_ssl_toy(
    cfg: SslConfig, dataset: Optional[LabeledDataset] = None
) -> tuple[Mlp, RunLog, SslReport]:
    admin_cfg = cfg.admin_config()
    dataset = dataset if dataset is not None else shapes_dataset(cfg)
    world = ShapesWorld(embed_dim=cfg.input_dim, noise_sigma=cfg.view_noise, seed=cfg.data_seed)
    views = ViewSampler(dataset, world)

    encoder = Mlp.init(
        [cfg.input_dim, cfg.encoder_hidden, cfg.embed_dim], make_rng(cfg.seed, "encoder_init"), activation="gelu"
    )
    use_bank = cfg.task_weight > 0.0
    bank = (
        PredictorBank.init(cfg.embed_dim, make_rng(cfg.seed, "predictor_init"), hidden=admin_cfg.predictor_hidden)
        if use_bank
        else None
    )

    pred_rng = make_rng(cfg.seed, "predictor_batches")
    enc_rng = make_rng(cfg.seed, "encoder_batches")
    enc_opt = OptimizerState.create(admin_cfg.optimizer, encoder.parameters())
    pred_opt = OptimizerState.create(admin_cfg.optimizer, bank.parameters()) if bank is not None else None
    enc_schedule = LrSchedule(admin_cfg.schedule, cfg.steps, 0, cfg.encoder_lr)
    pred_schedule = LrSchedule(admin_cfg.schedule, cfg.steps, 0, cfg.predictor_lr)

    survey = dataset.subset("survey").features[: cfg.eval_samples]
    log = RunLog(config={**admin_cfg.model_dump(), "ssl": cfg.model_dump()})
    log.append_dcorr(0, corr_summary(encoder.forward(survey)).mean_sq_dcorr)
    logger.info("train_ssl_toy start: lambda=%s steps=%d d=%d", cfg.task_weight, cfg.steps, cfg.embed_dim)

    half = 0.5 * cfg.task_weight
    step = 0
    try:
        for step in range(1, cfg.steps + 1):
            lr_enc = lr_at(enc_schedule, step - 1)
            pred_loss = 0.0
            if bank is not None:
                for _ in range(cfg.predictor_steps):
                    x1, x2 = views.sample(cfg.batch_size, pred_rng)
                    # предикторы видят оба вида одним батчем
                    z_both = np.vstack([encoder.forward(x1), encoder.forward(x2)])
                    pred_loss = predictor_update(bank, z_both, admin_cfg, pred_opt, lr_at(pred_schedule, step - 1))

            x1, x2 = views.sample(cfg.batch_size, enc_rng)
            z1, z2 = encoder.forward(x1), encoder.forward(x2)
            inv_loss, g1, g2 = invariance_mse(z1, z2, admin_cfg.standardize_eps)

            adv_loss = 0.0
            if bank is not None:
                adv1, a1 = adversarial_encoder_grad(bank, z1, admin_cfg)
                adv2, a2 = adversarial_encoder_grad(bank, z2, admin_cfg)
                adv_loss = half * (adv1 + adv2)
                g1 = g1 + half * a1
                g2 = g2 + half * a2

            for name, value in (("invariance loss", inv_loss), ("adversarial loss", adv_loss), ("predictor loss", pred_loss)):
                if not math.isfinite(value):
                    raise _fail(log, step, name)

            grads1, _ = encoder.backward(x1, g1)
            grads2, _ = encoder.backward(x2, g2)
            encoder.set_parameters(
                optimizer_step(enc_opt, encoder.parameters(), [a + b for a, b in zip(grads1, grads2)], lr_enc)
            )

            mean_abs, _ = mean_abs_offdiag_pearson(z1)
            log.append(
                StepRecord(
                    step=step,
                    predictor_loss=pred_loss,
                    adversarial_loss=adv_loss,
                    task_loss=inv_loss,
                    mean_abs_pearson=mean_abs,
                    mean_norm=float(np.mean(np.linalg.norm(z1, axis=1))),
                    encoder_lr=lr_enc,
                )
            )
            if step % cfg.log_every == 0:
                logger.info("ssl step %d: invariance=%.5f adversarial=%.4f mean|rho|=%.4f", step, inv_loss, adv_loss, mean_abs)
    except TrainingDivergenceError as exc:
        # шаг предикторов и оптимизатор падают без журнала
        if exc.partial_log is None:
            exc.partial_log = log
            log.diagnostic = {"step": step, **exc.details}
            logger.error("SSL training diverged at step %d: %s", step, exc.message)
        raise

    log.summary = corr_summary(encoder.forward(survey))
    log.append_dcorr(cfg.steps, log.summary.mean_sq_dcorr)
    report = SslReport(
        attributes=attribute_accuracy(encoder, dataset, k=cfg.knn_k),
        mean_sq_dcorr=log.summary.mean_sq_dcorr,
        mean_abs_pearson=log.summary.mean_abs_offdiag_pearson,
        final_invariance=log.tail_mean("task_loss", window=50),
    )
    logger.info(
        "train_ssl_toy done: shape=%.3f color=%.3f dcorr=%.4f",
        report.attributes.shape, report.attributes.color, report.mean_sq_dcorr,
    )
    return encoder, log, report
