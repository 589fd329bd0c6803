# src/apps/service.py

"""
Сервис экспериментов: запуск по имени, сохранение результата и RunLog
в репозиторий, чтение сохранённых прогонов.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Callable, Optional

import numpy as np

from ..admin_game import RunLog, build_config
from ..depmetrics import corr_summary, dcorr, mean_abs_offdiag_pearson, pearson_matrix
from ..errors import ConfigError, DataFormatError, DimensionError
from ..storage import ResultRecord, ResultRepository, make_run_id, repository_from_settings
from ..synthgen import (
    gen_correlated_gaussian,
    gen_independent_uniform,
    gen_pairwise_not_mutual,
    gen_pica_observations,
    gen_quadratic_pair,
)
from ..utils.validators import parse_numeric_csv, require_matrix
from .classify import ablate_formulations, run_classify, sweep_margin
from .config import (
    ClassifyConfig,
    ConvergeConfig,
    DcorrConfig,
    ImputeConfig,
    PicaConfig,
    SslConfig,
    SweepConfig,
)
from .converge import impute_mutual, run_converge
from .pica import SCATTER_HEADER, run_pica_method
from .ssl_toy import train_ssl_toy

logger = logging.getLogger(__name__)

MAX_DCORR_ROWS = 8192


@dataclass
class ExperimentOutcome:
    record: ResultRecord
    runlog: Optional[RunLog] = None
    tables: dict[str, tuple[list[str], list[list[Any]]]] = field(default_factory=dict)


# ─────────────────────────────────────
# Эксперименты
# ─────────────────────────────────────

def generate_matrix(cfg: DcorrConfig):
    if cfg.generator == "quadratic":
        return gen_quadratic_pair(cfg.n, a=cfg.a, seed=cfg.seed)
    if cfg.generator == "pairwise-not-mutual":
        return gen_pairwise_not_mutual(cfg.n, seed=cfg.seed)
    if cfg.generator == "independent":
        return gen_independent_uniform(cfg.n, d=2, seed=cfg.seed)
    if cfg.generator == "pica":
        return gen_pica_observations(cfg.n, seed=cfg.seed)[1]
    return gen_correlated_gaussian(cfg.n, m=8, seed=cfg.seed)


def dependence_metrics(z) -> dict[str, Any]:
    """Сводка зависимостей для произвольной матрицы: ρ-матрица, попарные и по-измерениям dCor."""
    summary = corr_summary(z)
    rho, degenerate = pearson_matrix(z)
    d = z.shape[1]
    pairwise = {f"{i},{j}": dcorr(z[:, i], z[:, j]) for i in range(d) for j in range(i + 1, d)}
    metrics: dict[str, Any] = {
        "n": int(z.shape[0]),
        "d": int(d),
        "pearson_matrix": rho.tolist(),
        "mean_abs_offdiag_pearson": mean_abs_offdiag_pearson(z)[0],
        "pairwise_dcorr": pairwise,
        "summary": summary.model_dump(),
        "degenerate_columns": degenerate,
    }
    if d == 2:
        metrics["dcorr"] = dcorr(z[:, 0], z[:, 1])
    return metrics


def load_matrix_csv(path: str) -> np.ndarray:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DataFormatError(f"cannot read {path}: {exc.strerror}", {"path": path, "line": 0}) from exc
    matrix = require_matrix(parse_numeric_csv(text), min_rows=4, min_cols=2, name=path)
    if matrix.shape[0] > MAX_DCORR_ROWS:
        # dCor строит n×n матрицы расстояний
        raise DimensionError(
            f"{path}: at most {MAX_DCORR_ROWS} rows supported, got {matrix.shape[0]}",
            {"path": path, "rows": int(matrix.shape[0])},
        )
    return matrix


def _exp_dcorr(cfg: DcorrConfig, matrix=None, source: Optional[str] = None) -> ExperimentOutcome:
    if matrix is None:
        matrix = load_matrix_csv(cfg.input) if cfg.input else generate_matrix(cfg)
        source = source or (f"csv:{cfg.input}" if cfg.input else f"generator:{cfg.generator}")
    metrics = dependence_metrics(matrix)
    metrics["source"] = source or "matrix"
    return ExperimentOutcome(record=_record("dcorr", cfg, metrics))


def _exp_pica(cfg: PicaConfig) -> ExperimentOutcome:
    run = run_pica_method(cfg)
    out = ExperimentOutcome(record=_record("pica", cfg, run.report.model_dump()), runlog=run.runlog)
    out.tables["scatter"] = (SCATTER_HEADER, run.scatter)
    return out


def _exp_converge(cfg: ConvergeConfig) -> ExperimentOutcome:
    report, runlog = run_converge(cfg)
    return ExperimentOutcome(record=_record("converge", cfg, report.model_dump()), runlog=runlog)


def _exp_classify(cfg: ClassifyConfig) -> ExperimentOutcome:
    report, runlog = run_classify(cfg)
    return ExperimentOutcome(record=_record("classify", cfg, report.model_dump()), runlog=runlog)


def _exp_ssl(cfg: SslConfig) -> ExperimentOutcome:
    _, runlog, report = train_ssl_toy(cfg)
    return ExperimentOutcome(record=_record("ssl", cfg, report.model_dump()), runlog=runlog)


def _exp_sweep(cfg: SweepConfig) -> ExperimentOutcome:
    base = ClassifyConfig(**cfg.model_dump(exclude={"alphas"}))
    rows = sweep_margin(cfg.alphas, base)
    header = ["alpha", "secondary_accuracy", "mean_attribute_accuracy", "mean_sq_dcorr"]
    out = ExperimentOutcome(record=_record("sweep-margin", cfg, {"rows": [r.model_dump() for r in rows]}))
    out.tables["sweep"] = (header, [[r.alpha, r.secondary_accuracy, r.mean_attribute_accuracy, r.mean_sq_dcorr] for r in rows])
    return out


def _exp_ablate(cfg: ClassifyConfig) -> ExperimentOutcome:
    rows = ablate_formulations(cfg)
    header = ["formulation", "predictor_steps", "shape_accuracy", "color_accuracy", "mean_sq_dcorr", "final_mean_norm"]
    out = ExperimentOutcome(record=_record("ablate", cfg, {"rows": [r.model_dump() for r in rows]}))
    out.tables["ablation"] = (
        header,
        [[r.formulation, r.predictor_steps, r.shape_accuracy, r.color_accuracy, r.mean_sq_dcorr, r.final_mean_norm] for r in rows],
    )
    return out


def _exp_impute(cfg: ImputeConfig) -> ExperimentOutcome:
    return ExperimentOutcome(record=_record("impute", cfg, impute_mutual(cfg).model_dump()))


EXPERIMENTS: dict[str, tuple[type, Callable[..., ExperimentOutcome]]] = {
    "dcorr": (DcorrConfig, _exp_dcorr),
    "pica": (PicaConfig, _exp_pica),
    "converge": (ConvergeConfig, _exp_converge),
    "classify": (ClassifyConfig, _exp_classify),
    "ssl": (SslConfig, _exp_ssl),
    "sweep-margin": (SweepConfig, _exp_sweep),
    "ablate": (ClassifyConfig, _exp_ablate),
    "impute": (ImputeConfig, _exp_impute),
}


def _record(experiment: str, cfg, metrics: dict[str, Any]) -> ResultRecord:
    config = cfg.model_dump(mode="json")
    return ResultRecord(
        experiment=experiment,
        run_id=make_run_id(experiment, cfg.seed, config),
        config=config,
        metrics=metrics,
    )


# ─────────────────────────────────────
# Сервис
# ─────────────────────────────────────

class ExperimentService:
    """
    Запуск экспериментов и доступ к сохранённым результатам.

    Бэкенд репозитория выбирается ADMIN_LAB_RESULTS_BACKEND (file | memory),
    если репозиторий не передан явно.
    """

    def __init__(self, repository: Optional[ResultRepository] = None) -> None:
        self.repository = repository if repository is not None else repository_from_settings()

    @staticmethod
    def config_for(experiment: str, data: Optional[dict[str, Any]] = None):
        if experiment not in EXPERIMENTS:
            raise ConfigError(f"unknown experiment: {experiment}", {"experiment": experiment, "known": sorted(EXPERIMENTS)})
        model, _ = EXPERIMENTS[experiment]
        return build_config(model, data or {})

    def run(self, experiment: str, config: Any = None, **kwargs: Any) -> ExperimentOutcome:
        cfg = config if config is not None and not isinstance(config, dict) else self.config_for(experiment, config)
        _, runner = EXPERIMENTS[experiment]
        logger.info("Running experiment %s (seed=%s)", experiment, getattr(cfg, "seed", None))
        outcome = runner(cfg, **kwargs)
        self.store(outcome)
        return outcome

    def store(self, outcome: ExperimentOutcome) -> str:
        run_id = self.repository.save_result(outcome.record)
        if outcome.runlog is not None:
            self.repository.save_runlog(run_id, outcome.runlog)
        for name, (header, rows) in outcome.tables.items():
            self.repository.save_rows(run_id, name, header, rows)
        self.repository.save_metadata(
            run_id,
            {"created_at": datetime.now(timezone.utc).isoformat(), "experiment": outcome.record.experiment},
        )
        return run_id

    def get(self, run_id: str) -> Optional[ResultRecord]:
        return self.repository.get_result(run_id)

    def list(self) -> list[ResultRecord]:
        return self.repository.list_results()
