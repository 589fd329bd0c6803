# src/apps/classify.py

"""
Классификация на «цветных фигурах».

Обучающие классы различимы по одному цвету, поэтому кросс-энтропия
без регуляризации игнорирует форму. Состязательный член заставляет
измерения z быть взаимно независимыми и сохраняет форму в признаках.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Optional, Sequence

import numpy as np

from ..admin_game import Encoder, PredictorBank, RunLog, admin_train
from ..diffcore import Mlp
from ..errors import ConfigError
from ..settings import get_settings
from ..synthgen import LabeledDataset, gen_shapes_dataset
from ..synthgen.models import TRAIN_CLASSES
from ..synthgen.rng import make_rng
from ..synthgen.sources import DatasetSource
from .config import ClassifyConfig, ShapesDataConfig
from .knn import knn_eval, knn_predict
from .models import (
    AblationRow,
    AttributeAccuracy,
    ClassifierHead,
    ClassifyReport,
    GeneralizationReport,
    SweepRow,
)
from .tasks import CrossEntropyHook

logger = logging.getLogger(__name__)

RED_SQUARE_CLASS = TRAIN_CLASSES[(0, 0)]


def shapes_dataset(cfg: ShapesDataConfig) -> LabeledDataset:
    return gen_shapes_dataset(
        n_per_class=cfg.n_per_class,
        noise_sigma=cfg.noise_sigma,
        embed_dim=cfg.input_dim,
        seed=cfg.data_seed,
    )


def train_classifier(
    dataset: LabeledDataset, use_admin: bool, cfg: ClassifyConfig
) -> tuple[Mlp, ClassifierHead, RunLog]:
    cfg = cfg.model_copy(update={"use_admin": use_admin})
    admin_cfg = cfg.admin_config()
    train = dataset.subset("train")

    encoder = Mlp.init(
        [train.embed_dim, cfg.encoder_hidden, cfg.embed_dim], make_rng(cfg.seed, "encoder_init"), activation="gelu"
    )
    head = ClassifierHead.init(cfg.embed_dim, dataset.n_classes, make_rng(cfg.seed, "head_init"))
    bank = (
        PredictorBank.init(cfg.embed_dim, make_rng(cfg.seed, "predictor_init"), hidden=admin_cfg.predictor_hidden)
        if use_admin and cfg.task_weight > 0.0
        else None
    )

    runlog = admin_train(
        encoder,
        bank,
        DatasetSource(train.features, train.label),
        CrossEntropyHook(head),
        admin_cfg,
    )
    return encoder, head, runlog


def train_accuracy(encoder: Mlp, head: ClassifierHead, dataset: LabeledDataset) -> float:
    train = dataset.subset("train")
    return float(np.mean(head.predict(encoder.forward(train.features)) == train.label))


def eval_generalization(encoder: Encoder, dataset: LabeledDataset, k: int = 20) -> GeneralizationReport:
    """
    kNN по атрибутам на survey-выборке (чётные строки - база, нечётные - запросы)
    и доля heldout-запросов, которые kNN по train-признакам относит к красному квадрату.
    """
    train = dataset.subset("train")
    heldout = dataset.subset("heldout")
    votes = knn_predict(encoder.forward(train.features), train.label, encoder.forward(heldout.features), k=k)
    return GeneralizationReport(
        attributes=attribute_accuracy(encoder, dataset, k=k),
        heldout_as_red_square=float(np.mean(votes == RED_SQUARE_CLASS)),
    )


def attribute_accuracy(encoder: Encoder, dataset: LabeledDataset, k: int = 20) -> AttributeAccuracy:
    survey = dataset.subset("survey")
    z_survey = encoder.forward(survey.features)
    accuracies = {}
    for attribute in ("shape", "color"):
        labels = survey.attribute(attribute)
        accuracies[attribute] = knn_eval(z_survey[0::2], labels[0::2], z_survey[1::2], labels[1::2], k=k)
    return AttributeAccuracy(**accuracies)


def run_classify(cfg: ClassifyConfig, dataset: Optional[LabeledDataset] = None) -> tuple[ClassifyReport, RunLog]:
    dataset = dataset if dataset is not None else shapes_dataset(cfg)
    encoder, head, runlog = train_classifier(dataset, cfg.use_admin, cfg)
    report = ClassifyReport(
        use_admin=cfg.use_admin,
        train_accuracy=train_accuracy(encoder, head, dataset),
        generalization=eval_generalization(encoder, dataset, k=cfg.knn_k),
        mean_sq_dcorr=runlog.summary.mean_sq_dcorr,
        mean_abs_pearson=runlog.summary.mean_abs_offdiag_pearson,
        final_mean_norm=runlog.last.mean_norm,
    )
    logger.info(
        "classify(use_admin=%s): train=%.3f shape=%.3f color=%.3f dcorr=%.4f",
        cfg.use_admin, report.train_accuracy, report.generalization.attributes.shape,
        report.generalization.attributes.color, report.mean_sq_dcorr,
    )
    return report, runlog


# ─────────────────────────────────────
# Перебор отступа и абляция формулировок
# ─────────────────────────────────────

def _sweep_point(alpha: float, cfg: ClassifyConfig, dataset: LabeledDataset) -> SweepRow:
    if alpha == 0.0:
        point_cfg = cfg.model_copy(update={"use_admin": False})
    else:
        point_cfg = cfg.model_copy(update={"use_admin": True, "formulation": "margin", "margin": alpha})
    report, _ = run_classify(point_cfg, dataset)
    attrs = report.generalization.attributes
    return SweepRow(
        alpha=alpha,
        secondary_accuracy=attrs.shape,
        mean_attribute_accuracy=0.5 * (attrs.shape + attrs.color),
        mean_sq_dcorr=report.mean_sq_dcorr,
    )


def sweep_margin(alphas: Sequence[float], cfg: ClassifyConfig, workers: Optional[int] = None) -> list[SweepRow]:
    """Один прогон на α при фиксированном seed; α = 0 - базовая модель без игры."""
    alphas = [float(a) for a in alphas]
    if not alphas or alphas != sorted(alphas) or 0.0 not in alphas:
        raise ConfigError("alphas must be sorted ascending and include 0", {"alphas": alphas})
    if any(a < 0.0 for a in alphas):
        raise ConfigError("alphas must be non-negative", {"alphas": alphas})

    dataset = shapes_dataset(cfg)
    workers = workers or get_settings().threads
    logger.info("sweep_margin: %d points on %d worker(s)", len(alphas), workers)

    if workers <= 1:
        return [_sweep_point(a, cfg, dataset) for a in alphas]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda a: _sweep_point(a, cfg, dataset), alphas))


ABLATION_ROWS = (
    ("standardized", {"formulation": "standardized", "distance": "l2_squared", "predictor_steps": 2}),
    ("margin", {"formulation": "margin", "distance": "l1", "margin": 0.4, "predictor_steps": 1}),
    ("neither", {"formulation": "raw", "distance": "l2_squared", "predictor_steps": 1}),
)


def ablate_formulations(cfg: ClassifyConfig) -> list[AblationRow]:
    dataset = shapes_dataset(cfg)
    rows: list[AblationRow] = []
    for name, update in ABLATION_ROWS:
        row_cfg = cfg.model_copy(update={"use_admin": True, **update})
        report, runlog = run_classify(row_cfg, dataset)
        rows.append(
            AblationRow(
                formulation=name,
                predictor_steps=row_cfg.predictor_steps,
                shape_accuracy=report.generalization.attributes.shape,
                color_accuracy=report.generalization.attributes.color,
                mean_sq_dcorr=report.mean_sq_dcorr,
                final_mean_norm=report.final_mean_norm,
            )
        )
        logger.info("ablation row %s: dcorr=%.4f norm=%.3f", name, report.mean_sq_dcorr, report.final_mean_norm)
    return rows
