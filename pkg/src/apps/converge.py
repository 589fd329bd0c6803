# src/apps/converge.py

from __future__ import annotations

import logging
import math

import numpy as np

from ..admin_game import PredictorBank, RunLog, admin_train
from ..depmetrics import dcorr
from ..diffcore import Mlp, OptimizerState, mean_squared_norm, optimizer_step
from ..errors import TrainingDivergenceError
from ..synthgen import gen_pairwise_not_mutual
from ..synthgen.rng import make_rng
from ..synthgen.sources import GaussianSource, PairwiseNotMutualSource
from .config import ConvergeConfig, ImputeConfig
from .models import ConvergeReport, ImputeReport

logger = logging.getLogger(__name__)

# U(0, 1): среднее 1/2, дисперсия 1/12
_UNIFORM_MEAN = 0.5
_UNIFORM_SCALE = math.sqrt(12.0)


def run_converge(cfg: ConvergeConfig) -> tuple[ConvergeReport, RunLog]:
    """
    Игра в стандартизованной формулировке на коррелированном гауссиане
    без задачи: MSE предикторов должна сойтись к 1, корреляции к нулю.
    """
    admin_cfg = cfg.admin_config()
    encoder = Mlp.init(
        [cfg.input_dim, cfg.encoder_hidden, cfg.embed_dim], make_rng(cfg.seed, "encoder_init"), activation="gelu"
    )
    bank = PredictorBank.init(
        cfg.embed_dim, make_rng(cfg.seed, "predictor_init"), hidden=admin_cfg.predictor_hidden
    )
    runlog = admin_train(encoder, bank, GaussianSource(m=cfg.input_dim, seed=cfg.seed), None, admin_cfg)

    report = ConvergeReport(
        final_predictor_loss=runlog.tail_mean("predictor_loss", window=100),
        final_mean_abs_pearson=runlog.summary.mean_abs_offdiag_pearson,
        start_mean_sq_dcorr=runlog.start_dcorr,
        end_mean_sq_dcorr=runlog.summary.mean_sq_dcorr,
        summary=runlog.summary,
    )
    logger.info(
        "converge: predictor=%.4f mean|rho|=%.4f dcorr %.4f -> %.4f",
        report.final_predictor_loss, report.final_mean_abs_pearson,
        report.start_mean_sq_dcorr, report.end_mean_sq_dcorr,
    )
    return report, runlog


def _standardized_triple(x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    std = (x - _UNIFORM_MEAN) * _UNIFORM_SCALE
    return std[:, :2], std[:, 2:3]


def impute_mutual(cfg: ImputeConfig) -> ImputeReport:
    """
    Тройка x₃ = frac(x₁ + x₂): попарные dCor около нуля, но двухслойный
    предиктор восстанавливает стандартизованный x₃ по (x₁, x₂).
    """
    triple = gen_pairwise_not_mutual(min(cfg.eval_samples, 8192), seed=cfg.seed)
    pairwise = [dcorr(triple[:, i], triple[:, j]) for i, j in ((0, 1), (0, 2), (1, 2))]
    joint = dcorr(triple[:, 2], triple[:, :2])

    net = Mlp.init([2, cfg.hidden, 1], make_rng(cfg.seed, "impute_init"), activation="gelu")
    opt = OptimizerState.create("adam", net.parameters())
    source = PairwiseNotMutualSource()
    rng = make_rng(cfg.seed, "impute_batches")

    for step in range(1, cfg.steps + 1):
        inputs, target = _standardized_triple(source.sample(cfg.batch_size, rng).x)
        loss, g_out = mean_squared_norm(net.forward(inputs) - target)
        if not math.isfinite(loss):
            raise TrainingDivergenceError("imputation loss is not finite", {"step": step})
        grads, _ = net.backward(inputs, g_out)
        net.set_parameters(optimizer_step(opt, net.parameters(), grads, cfg.lr))
        if step % cfg.log_every == 0:
            logger.info("impute step %d: mse=%.4f", step, loss)

    eval_inputs, eval_target = _standardized_triple(
        source.sample(cfg.eval_samples, make_rng(cfg.seed, "impute_evaluation")).x
    )
    mse, _ = mean_squared_norm(net.forward(eval_inputs) - eval_target)
    logger.info("impute_mutual: pairwise=%s joint=%.4f mse=%.4f", pairwise, joint, mse)
    return ImputeReport(pairwise_dcorr=pairwise, joint_dcorr=joint, imputation_mse=mse)
