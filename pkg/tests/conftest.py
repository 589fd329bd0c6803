# tests/conftest.py
import numpy as np
import pytest

from src.diffcore import Mlp
from src.settings import get_settings


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)


@pytest.fixture
def small_mlp(rng) -> Mlp:
    return Mlp.init([3, 5, 2], rng, activation="gelu")


@pytest.fixture(autouse=True)
def _clean_settings(monkeypatch, tmp_path):
    """Настройки процесса изолированы: результаты в tmp, кэш сброшен до и после."""
    for name in ("ADMIN_LAB_LOG_FILE", "ADMIN_LAB_THREADS", "ADMIN_LAB_LOG_LEVEL"):
        monkeypatch.delenv(name, raising=False)
    monkeypatch.setenv("ADMIN_LAB_OUT_DIR", str(tmp_path / "runs"))
    monkeypatch.setenv("ADMIN_LAB_RESULTS_BACKEND", "file")
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def out_dir(tmp_path):
    path = tmp_path / "out"
    path.mkdir()
    return path
