# tests/test_settings.py
import logging

import pytest

from src.errors import ConfigError
from src.logging_config import configure_logging
from src.settings import get_settings


def test_defaults(monkeypatch, tmp_path):
    monkeypatch.delenv("ADMIN_LAB_RESULTS_BACKEND")
    get_settings.cache_clear()
    settings = get_settings()
    assert settings.results_backend == "file"
    assert settings.threads == 1
    assert settings.out_dir == str(tmp_path / "runs")


def test_threads_clamped_to_one(monkeypatch):
    monkeypatch.setenv("ADMIN_LAB_THREADS", "0")
    get_settings.cache_clear()
    assert get_settings().threads == 1


def test_bad_threads_is_config_error(monkeypatch):
    monkeypatch.setenv("ADMIN_LAB_THREADS", "many")
    get_settings.cache_clear()
    with pytest.raises(ConfigError):
        get_settings()


def test_unknown_backend_is_config_error(monkeypatch):
    monkeypatch.setenv("ADMIN_LAB_RESULTS_BACKEND", "postgres")
    get_settings.cache_clear()
    with pytest.raises(ConfigError) as exc:
        get_settings()
    assert exc.value.code == "config_error"


def test_configure_logging_level_and_file(monkeypatch, tmp_path):
    log_file = tmp_path / "admin.log"
    monkeypatch.setenv("ADMIN_LAB_LOG_FILE", str(log_file))
    get_settings.cache_clear()

    configure_logging("debug")
    root = logging.getLogger()
    try:
        assert root.level == logging.DEBUG
        assert any(isinstance(h, logging.FileHandler) for h in root.handlers)
        logging.getLogger("src.test").debug("hello %s", "file")
        for h in root.handlers:
            h.flush()
        assert "hello file" in log_file.read_text(encoding="utf-8")
    finally:
        for h in root.handlers[:]:
            root.removeHandler(h)
            h.close()
