# src/settings.py

from functools import lru_cache
import os
from typing import Literal, Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field

from .errors import ConfigError


class Settings(BaseModel):
    log_level: str = "INFO"
    log_file: Optional[str] = None
    out_dir: str = "runs"
    results_backend: Literal["file", "memory"] = "file"
    # потолок параллелизма для sweep-margin
    threads: int = Field(default=1, ge=1)


@lru_cache
def get_settings() -> Settings:
    """
    Настройки процесса из окружения (.env подхватывается один раз).

    Экспериментальные гиперпараметры сюда не попадают - они живут
    в pydantic-конфигах экспериментов и эхом пишутся в каждый результат.
    """
    load_dotenv()

    backend = os.getenv("ADMIN_LAB_RESULTS_BACKEND", "file").strip().lower() or "file"
    raw_threads = os.getenv("ADMIN_LAB_THREADS", "1").strip() or "1"
    if backend not in ("file", "memory"):
        raise ConfigError(f"unknown results backend: {backend!r}", {"ADMIN_LAB_RESULTS_BACKEND": backend})
    try:
        threads = max(1, int(raw_threads))
    except ValueError as exc:
        raise ConfigError(f"ADMIN_LAB_THREADS must be an integer, got {raw_threads!r}") from exc

    return Settings(
        log_level=os.getenv("ADMIN_LAB_LOG_LEVEL", "INFO").strip().upper() or "INFO",
        log_file=os.getenv("ADMIN_LAB_LOG_FILE") or None,
        out_dir=os.getenv("ADMIN_LAB_OUT_DIR", "runs").strip() or "runs",
        results_backend=backend,
        threads=threads,
    )
