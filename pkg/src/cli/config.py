# src/cli/config.py

"""
Слои конфигурации CLI: значения по умолчанию < файл key=value (--config)
< --set k=v < выделенные флаги (--steps, --d, ...).
"""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Any, Iterable, Optional

from pydantic import BaseModel, Field

from ..errors import ConfigError, DataFormatError

logger = logging.getLogger(__name__)


class CliConfig(BaseModel):
    subcommand: str
    out_dir: Optional[str] = None
    seed: Optional[int] = Field(None, ge=0)
    overrides: dict[str, Any] = Field(default_factory=dict)

    def layered(self, flags: dict[str, Any]) -> dict[str, Any]:
        """Итоговый словарь для build_config: флаги поверх overrides, seed поверх всего."""
        payload = dict(self.overrides)
        payload.update({k: v for k, v in flags.items() if v is not None})
        if self.seed is not None:
            payload["seed"] = self.seed
        return payload


def parse_value(raw: str) -> Any:
    """
    Значение из key=value: JSON-литерал (числа, true/false, списки),
    иначе строка как есть.
    """
    text = raw.strip()
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def parse_assignment(item: str, line: Optional[int] = None) -> tuple[str, Any]:
    if "=" not in item:
        where = f"line {line}: " if line is not None else ""
        raise ConfigError(f"{where}expected key=value, got {item!r}", {"item": item, "line": line})
    key, value = item.split("=", 1)
    key = key.strip().replace("-", "_")
    if not key:
        raise ConfigError(f"empty key in {item!r}", {"item": item, "line": line})
    return key, parse_value(value)


def parse_overrides(items: Iterable[str]) -> dict[str, Any]:
    return dict(parse_assignment(item) for item in items)


def load_config_file(path: str) -> dict[str, Any]:
    """Простой текстовый формат: по одному key=value на строку, # - комментарий."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DataFormatError(f"cannot read config file {path}: {exc.strerror}", {"path": path, "line": 0}) from exc

    values: dict[str, Any] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, value = parse_assignment(line, line=line_no)
        values[key] = value
    logger.debug("Loaded %d keys from %s", len(values), path)
    return values


def build_cli_config(subcommand: str, out_dir: Optional[str], seed: Optional[int],
                     config_file: Optional[str], set_items: Iterable[str]) -> CliConfig:
    overrides: dict[str, Any] = {}
    if config_file:
        overrides.update(load_config_file(config_file))
    overrides.update(parse_overrides(set_items))
    return CliConfig(subcommand=subcommand, out_dir=out_dir, seed=seed, overrides=overrides)
