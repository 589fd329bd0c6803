# src/storage/file_repository.py

"""
Файловое хранилище прогонов:

    <out>/<run_id>/result.json   - ResultRecord (без временных меток)
    <out>/<run_id>/runlog.csv    - по строке на шаг
    <out>/<run_id>/runlog.json   - RunLog целиком
    <out>/<run_id>/<name>.csv    - дополнительные таблицы
    <out>/<run_id>/meta.json     - время создания и прочее нестабильное
"""

from __future__ import annotations

import csv
import json
import logging
from pathlib import Path
from typing import Any, Optional, Sequence, Union

from pydantic import ValidationError

from ..admin_game.runlog import STEP_HEADER, RunLog
from ..errors import DataFormatError
from ..utils.formatters import format_row
from .models import ResultRecord
from .repository import ResultRepository

logger = logging.getLogger(__name__)

RESULT_FILE = "result.json"


def _dump_json(path: Path, payload: Any) -> None:
    # sort_keys + фиксированный отступ: одинаковый payload → одинаковые байты
    path.write_text(json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")


def _write_csv(path: Path, header: Sequence[str], rows: Sequence[Sequence[Any]]) -> None:
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(list(header))
        for row in rows:
            writer.writerow(format_row(row))


class FileResultRepository(ResultRepository):
    def __init__(self, out_dir: Union[str, Path] = "runs") -> None:
        self.out_dir = Path(out_dir)

    def _run_dir(self, run_id: str) -> Path:
        if not run_id or "/" in run_id or "\\" in run_id or run_id.startswith("."):
            raise DataFormatError(f"invalid run id: {run_id!r}", {"run_id": run_id})
        path = self.out_dir / run_id
        path.mkdir(parents=True, exist_ok=True)
        return path

    # ---- ResultRepository implementation ----

    def save_result(self, record: ResultRecord) -> str:
        path = self._run_dir(record.run_id) / RESULT_FILE
        _dump_json(path, record.model_dump(mode="json"))
        logger.info("Result saved: %s", path)
        return record.run_id

    def get_result(self, run_id: str) -> Optional[ResultRecord]:
        if not run_id or "/" in run_id or run_id.startswith("."):
            return None
        path = self.out_dir / run_id / RESULT_FILE
        if not path.is_file():
            return None
        try:
            return ResultRecord.model_validate_json(path.read_text(encoding="utf-8"))
        except ValidationError as exc:
            logger.warning("Skipping malformed result file %s: %s", path, exc)
            return None

    def list_results(self) -> list[ResultRecord]:
        if not self.out_dir.is_dir():
            return []
        records: list[ResultRecord] = []
        for run_dir in sorted(p for p in self.out_dir.iterdir() if p.is_dir()):
            record = self.get_result(run_dir.name)
            if record is not None:
                records.append(record)
        return records

    def save_runlog(self, run_id: str, runlog: RunLog) -> None:
        run_dir = self._run_dir(run_id)
        _write_csv(run_dir / "runlog.csv", STEP_HEADER, runlog.csv_rows())
        _dump_json(run_dir / "runlog.json", runlog.to_dict())

    def save_rows(self, run_id: str, name: str, header: Sequence[str], rows: Sequence[Sequence[Any]]) -> None:
        _write_csv(self._run_dir(run_id) / f"{name}.csv", header, rows)

    def save_metadata(self, run_id: str, metadata: dict[str, Any]) -> None:
        _dump_json(self._run_dir(run_id) / "meta.json", metadata)
