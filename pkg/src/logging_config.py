# src/logging_config.py
import logging
from logging import FileHandler, Formatter, StreamHandler
from typing import Optional

from .settings import get_settings

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

_CONFIGURED = False


def configure_logging(level_name: Optional[str] = None) -> None:
    """Централизованная настройка логирования для CLI и HTTP-сервиса."""
    global _CONFIGURED

    settings = get_settings()
    level_name = (level_name or settings.log_level).upper()
    level = getattr(logging, level_name, logging.INFO)

    root = logging.getLogger()
    # Очистка handler'ов, чтобы исключить дублирование при повторном вызове
    for h in root.handlers[:]:
        root.removeHandler(h)

    formatter = Formatter(LOG_FORMAT)

    console_handler = StreamHandler()
    console_handler.setFormatter(formatter)
    root.addHandler(console_handler)

    if settings.log_file:
        file_handler = FileHandler(settings.log_file, mode="a", encoding="utf-8")
        file_handler.setFormatter(formatter)
        root.addHandler(file_handler)

    root.setLevel(level)

    # шумные библиотеки
    logging.getLogger("uvicorn.access").setLevel(logging.WARNING)
    logging.getLogger("httpx").setLevel(logging.WARNING)

    if not _CONFIGURED:
        logging.getLogger(__name__).info("Logging configured with level: %s", level_name)
    _CONFIGURED = True
