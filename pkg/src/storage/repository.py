# src/storage/repository.py

from __future__ import annotations

from typing import Any, Dict, List, Optional, Protocol, Sequence

from ..admin_game.runlog import RunLog
from .models import ResultRecord


class ResultRepository(Protocol):
    """
    Абстрактный интерфейс хранилища результатов.

    Реализации: InMemoryResultRepository, FileResultRepository.
    """

    def save_result(self, record: ResultRecord) -> str:
        """
        Сохранить запись результата, вернуть run_id.
        Повторное сохранение того же run_id перезаписывает запись.
        """
        ...

    def get_result(self, run_id: str) -> Optional[ResultRecord]:
        ...

    def list_results(self) -> list[ResultRecord]:
        """Все записи, отсортированные по run_id."""
        ...

    def save_runlog(self, run_id: str, runlog: RunLog) -> None:
        ...

    def save_rows(self, run_id: str, name: str, header: Sequence[str], rows: Sequence[Sequence[Any]]) -> None:
        """Произвольная таблица прогона (scatter, sweep, ablation)."""
        ...

    def save_metadata(self, run_id: str, metadata: dict[str, Any]) -> None:
        ...


class InMemoryResultRepository(ResultRepository):
    """
    Простая in-memory реализация репозитория.

    Нужна для тестов и для HTTP-сервиса без записи на диск.
    """

    def __init__(self) -> None:
        self._results: Dict[str, ResultRecord] = {}
        self._runlogs: Dict[str, RunLog] = {}
        self._tables: Dict[str, Dict[str, tuple[list[str], list[list[Any]]]]] = {}
        self._metadata: Dict[str, Dict[str, Any]] = {}

    # ---- ResultRepository implementation ----

    def save_result(self, record: ResultRecord) -> str:
        self._results[record.run_id] = record.model_copy(deep=True)
        return record.run_id

    def get_result(self, run_id: str) -> Optional[ResultRecord]:
        record = self._results.get(run_id)
        return record.model_copy(deep=True) if record is not None else None

    def list_results(self) -> list[ResultRecord]:
        return [self._results[k].model_copy(deep=True) for k in sorted(self._results)]

    def save_runlog(self, run_id: str, runlog: RunLog) -> None:
        self._runlogs[run_id] = runlog

    def save_rows(self, run_id: str, name: str, header: Sequence[str], rows: Sequence[Sequence[Any]]) -> None:
        self._tables.setdefault(run_id, {})[name] = (list(header), [list(r) for r in rows])

    def save_metadata(self, run_id: str, metadata: dict[str, Any]) -> None:
        self._metadata[run_id] = dict(metadata)

    # ---- helpers для тестов ----

    def get_runlog(self, run_id: str) -> Optional[RunLog]:
        return self._runlogs.get(run_id)

    def get_rows(self, run_id: str, name: str) -> Optional[tuple[list[str], List[list[Any]]]]:
        return self._tables.get(run_id, {}).get(name)

    def get_metadata(self, run_id: str) -> Optional[dict[str, Any]]:
        return self._metadata.get(run_id)
