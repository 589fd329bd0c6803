# src/storage/models.py

from __future__ import annotations

import hashlib
import json
from typing import Any

from pydantic import BaseModel, Field

RESULT_SCHEMA_VERSION = 1


class ResultRecord(BaseModel):
    """
    Результат одного прогона: эхо конфига + метрики.

    Временных меток здесь нет (они в meta.json), поэтому одинаковые
    конфиг и seed дают побайтно одинаковый result.json.
    """

    schema_version: int = RESULT_SCHEMA_VERSION
    experiment: str
    run_id: str
    config: dict[str, Any] = Field(default_factory=dict)
    metrics: dict[str, Any] = Field(default_factory=dict)


def canonical_json(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def make_run_id(experiment: str, seed: int, config: dict[str, Any]) -> str:
    digest = hashlib.sha256(canonical_json(config).encode("utf-8")).hexdigest()[:8]
    return f"{experiment}-{seed}-{digest}"
