# src/admin_game/runlog.py

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Any, Optional

from ..depmetrics import CorrSummary
from ..errors import DataFormatError, NumericError
from ..utils.formatters import format_float

RUNLOG_SCHEMA_VERSION = 1

STEP_HEADER = [
    "step",
    "predictor_loss",
    "adversarial_loss",
    "task_loss",
    "mean_abs_pearson",
    "mean_norm",
    "encoder_lr",
    "mean_sq_dcorr",
]


@dataclass
class StepRecord:
    step: int
    predictor_loss: float
    adversarial_loss: float
    task_loss: float
    mean_abs_pearson: float
    mean_norm: float
    encoder_lr: float = 0.0

    def values(self) -> list[float]:
        return [
            self.predictor_loss,
            self.adversarial_loss,
            self.task_loss,
            self.mean_abs_pearson,
            self.mean_norm,
            self.encoder_lr,
        ]


@dataclass
class DcorrRecord:
    step: int
    mean_sq_dcorr: float


@dataclass
class RunLog:
    """
    Журнал обучения.

    records - по строке на шаг энкодера (шаги строго возрастают);
    dcorr_records - периодические mean_sq_dcorr (шаг 0 - до обучения);
    summary - итоговый CorrSummary на оценочной выборке;
    diagnostic - заполняется, если обучение прервано.
    """

    config: dict[str, Any] = field(default_factory=dict)
    records: list[StepRecord] = field(default_factory=list)
    dcorr_records: list[DcorrRecord] = field(default_factory=list)
    summary: Optional[CorrSummary] = None
    diagnostic: Optional[dict[str, Any]] = None
    schema_version: int = RUNLOG_SCHEMA_VERSION

    def append(self, record: StepRecord) -> None:
        if self.records and record.step <= self.records[-1].step:
            raise DataFormatError(
                "run log steps must increase", {"step": record.step, "previous": self.records[-1].step}
            )
        if not all(math.isfinite(v) for v in record.values()):
            raise NumericError("run log record is not finite", {"step": record.step})
        self.records.append(record)

    def append_dcorr(self, step: int, value: float) -> None:
        if self.dcorr_records and step <= self.dcorr_records[-1].step:
            raise DataFormatError("dcorr records must increase", {"step": step})
        self.dcorr_records.append(DcorrRecord(step=step, mean_sq_dcorr=float(value)))

    # ---- accessors ----

    @property
    def last(self) -> Optional[StepRecord]:
        return self.records[-1] if self.records else None

    def column(self, name: str) -> list[float]:
        return [getattr(r, name) for r in self.records]

    def tail_mean(self, name: str, window: int = 100) -> float:
        values = self.column(name)[-window:]
        return float(sum(values) / len(values)) if values else float("nan")

    @property
    def start_dcorr(self) -> Optional[float]:
        return self.dcorr_records[0].mean_sq_dcorr if self.dcorr_records else None

    @property
    def end_dcorr(self) -> Optional[float]:
        if self.summary is not None:
            return self.summary.mean_sq_dcorr
        return self.dcorr_records[-1].mean_sq_dcorr if self.dcorr_records else None

    # ---- serialization ----

    def csv_rows(self) -> list[list[str]]:
        """Строки CSV под STEP_HEADER; mean_sq_dcorr пуст, если на шаге не считался."""
        dcorr_at = {r.step: r.mean_sq_dcorr for r in self.dcorr_records}
        rows: list[list[str]] = []
        for rec in self.records:
            dc = dcorr_at.get(rec.step)
            rows.append(
                [str(rec.step)]
                + [format_float(v) for v in rec.values()]
                + ["" if dc is None else format_float(dc)]
            )
        return rows

    def to_dict(self) -> dict[str, Any]:
        return {
            "schema_version": self.schema_version,
            "config": self.config,
            "steps": [asdict(r) for r in self.records],
            "dcorr": [asdict(r) for r in self.dcorr_records],
            "summary": self.summary.model_dump() if self.summary is not None else None,
            "diagnostic": self.diagnostic,
        }
