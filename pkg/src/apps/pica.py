# src/apps/pica.py

"""
Снижение размерности 3 → 2 на наблюдениях x = [5v₁, 3cos(2πv₁/√3), v₂].

Методы:
  - pca_svd - собственное разложение ковариации;
  - pca_covreg - автокодировщик + штраф внедиагональной ковариации;
  - pca_linear_pred - автокодировщик + игра с линейными предикторами;
  - pica_nonlinear - автокодировщик + игра с двухслойными предикторами;
  - nlpica - нелинейные энкодер/декодер + игра с двухслойными предикторами.

PCA выбирает (x₁, x₂) - две самые дисперсные оси, хотя x₂ детерминированно
зависит от x₁; нелинейные предикторы видят эту зависимость и вытесняют
x₂ в пользу независимого x₃.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from ..admin_game import PredictorBank, RunLog, admin_train
from ..depmetrics import covariance_matrix, dcorr
from ..diffcore import Mlp
from ..errors import ConfigError
from ..synthgen.generators import sample_pica_observations
from ..synthgen.rng import make_rng
from ..synthgen.sources import PicaSource
from .config import PicaConfig
from .models import LinearAe, PicaReport
from .pca import pca_svd
from .tasks import CompositeHook, CovariancePenaltyHook, DecoderReconstructionHook, TiedReconstructionHook

logger = logging.getLogger(__name__)

SCATTER_HEADER = ["z1", "z2", "v1", "v2"]

# ожидаемые оси отбора
PCA_AXES = (0, 1)
PICA_AXES = (0, 2)


@dataclass
class PicaRun:
    report: PicaReport
    runlog: Optional[RunLog] = None
    scatter: list[list[float]] = field(default_factory=list)


# ---- helpers ----

def normalized_columns(w: np.ndarray) -> np.ndarray:
    norms = np.linalg.norm(w, axis=0)
    return w / np.where(norms > 0.0, norms, 1.0)


def target_pattern(axes: Sequence[int], l: int = 3) -> np.ndarray:
    target = np.zeros((l, len(axes)))
    for col, axis in enumerate(axes):
        target[axis, col] = 1.0
    return target


def pattern_error(abs_w: np.ndarray, target: np.ndarray) -> float:
    """
    Максимальное отклонение |W| от шаблона после жадного сопоставления
    столбцов по |cos|. Знаки и порядок компонент не важны.
    """
    abs_w = normalized_columns(np.abs(np.asarray(abs_w, dtype=np.float64)))
    target = normalized_columns(np.asarray(target, dtype=np.float64))
    if abs_w.shape != target.shape:
        raise ConfigError("pattern shapes differ", {"w": list(abs_w.shape), "target": list(target.shape)})

    cos = np.abs(abs_w.T @ target)
    free_w = set(range(abs_w.shape[1]))
    free_t = set(range(target.shape[1]))
    worst = 0.0
    while free_w:
        i, j = max(((i, j) for i in free_w for j in free_t), key=lambda ij: cos[ij])
        worst = max(worst, float(np.max(np.abs(abs_w[:, i] - target[:, j]))))
        free_w.remove(i)
        free_t.remove(j)
    return worst


def _evaluation_set(cfg: PicaConfig) -> tuple[np.ndarray, np.ndarray]:
    """(наблюдения x [n × 3], латенты v [n × 2])."""
    v, x = sample_pica_observations(cfg.eval_samples, make_rng(cfg.seed, "pica_evaluation"))
    return x, v


def _scatter(z: np.ndarray, v: np.ndarray, rows: int) -> list[list[float]]:
    k = min(rows, z.shape[0])
    return np.column_stack([z[:k, :2], v[:k, :2]]).tolist()


def _linear_report(
    method: str, w: np.ndarray, x: np.ndarray, cfg: PicaConfig, steps: int, with_reconstruction: bool
) -> tuple[PicaReport, np.ndarray]:
    w_norm = normalized_columns(w)
    z = x @ w_norm
    cov = covariance_matrix(z)
    recon = None
    if with_reconstruction:
        residual = (x @ w) @ w.T - x
        recon = float(np.mean(np.sum(residual * residual, axis=1)))
    k = min(cfg.dcorr_samples, z.shape[0])
    report = PicaReport(
        method=method,
        abs_w=np.abs(w_norm).tolist(),
        selected_axes=[int(i) for i in np.argmax(np.abs(w_norm), axis=0)],
        explained_variance=float(np.trace(cov)),
        reconstruction_mse=recon,
        dcorr_z=dcorr(z[:k, 0], z[:k, 1]),
        covariance_z=cov.tolist(),
        eval_samples=int(x.shape[0]),
        steps=steps,
    )
    return report, z


# ─────────────────────────────────────
# Драйверы
# ─────────────────────────────────────

def run_pca_svd(cfg: PicaConfig) -> PicaRun:
    x, v = _evaluation_set(cfg)
    w, explained = pca_svd(x, cfg.embed_dim)
    report, z = _linear_report("pca_svd", w, x, cfg, steps=0, with_reconstruction=True)
    report.explained_variance = explained
    logger.info("pca_svd: explained variance %.4f", explained)
    return PicaRun(report=report, scatter=_scatter(z, v, cfg.scatter_rows))


def run_pica(method: str, cfg: PicaConfig) -> PicaRun:
    """Обучает связанный линейный автокодировщик с регуляризатором метода."""
    if method not in ("pca_covreg", "pca_linear_pred", "pica_nonlinear"):
        raise ConfigError(f"unknown PICA method: {method}", {"method": method})

    ae = LinearAe.init(3, cfg.embed_dim, make_rng(cfg.seed, "encoder_init"))
    recon_hook = TiedReconstructionHook(ae, weight=cfg.recon_weight)
    source = PicaSource()

    if method == "pca_covreg":
        admin_cfg = cfg.admin_config(predictor_depth=1)
        hook = CompositeHook([recon_hook, CovariancePenaltyHook(weight=cfg.task_weight)])
        runlog = admin_train(ae, None, source, hook, admin_cfg)
    else:
        depth = 1 if method == "pca_linear_pred" else 2
        admin_cfg = cfg.admin_config(predictor_depth=depth)
        bank = PredictorBank.init(
            cfg.embed_dim,
            make_rng(cfg.seed, "predictor_init"),
            hidden=cfg.predictor_hidden,
            depth=depth,
            activation="gelu",
        )
        runlog = admin_train(ae, bank, source, recon_hook, admin_cfg)

    x, v = _evaluation_set(cfg)
    report, z = _linear_report(method, ae.weight, x, cfg, steps=cfg.steps, with_reconstruction=True)
    logger.info(
        "%s: axes=%s explained=%.4f recon=%.4f dcorr=%.4f",
        method, report.selected_axes, report.explained_variance, report.reconstruction_mse, report.dcorr_z,
    )
    return PicaRun(report=report, runlog=runlog, scatter=_scatter(z, v, cfg.scatter_rows))


def run_nlpica(cfg: PicaConfig) -> PicaRun:
    """
    Нелинейный автокодировщик 3 → 2 → 3 с состязательным членом на узком
    слое. При task_weight = 0 это обычный NLPCA.
    """
    init_rng = make_rng(cfg.seed, "encoder_init")
    encoder = Mlp.init([3, cfg.nl_hidden, cfg.embed_dim], init_rng, activation="gelu")
    decoder = Mlp.init([cfg.embed_dim, cfg.nl_hidden, 3], make_rng(cfg.seed, "decoder_init"), activation="gelu")
    bank = PredictorBank.init(
        cfg.embed_dim, make_rng(cfg.seed, "predictor_init"), hidden=cfg.predictor_hidden, depth=2
    )
    hook = DecoderReconstructionHook(decoder, weight=cfg.recon_weight)
    runlog = admin_train(encoder, bank, PicaSource(), hook, cfg.admin_config(predictor_depth=2))

    x, v = _evaluation_set(cfg)
    z = encoder.forward(x)
    residual = decoder.forward(z) - x
    cov = covariance_matrix(z)
    k = min(cfg.dcorr_samples, z.shape[0])
    report = PicaReport(
        method="nlpica",
        explained_variance=float(np.trace(cov)),
        reconstruction_mse=float(np.mean(np.sum(residual * residual, axis=1))),
        dcorr_z=dcorr(z[:k, 0], z[:k, 1]),
        covariance_z=cov.tolist(),
        eval_samples=int(x.shape[0]),
        steps=cfg.steps,
    )
    logger.info("nlpica: recon=%.4f dcorr=%.4f", report.reconstruction_mse, report.dcorr_z)
    return PicaRun(report=report, runlog=runlog, scatter=_scatter(z, v, cfg.scatter_rows))


def run_pica_method(cfg: PicaConfig) -> PicaRun:
    if cfg.method == "pca_svd":
        return run_pca_svd(cfg)
    if cfg.method == "nlpica":
        return run_nlpica(cfg)
    return run_pica(cfg.method, cfg)
