# tests/acceptance/test_acceptance_converge.py
import pytest

from src.apps import ConvergeConfig, run_converge

pytestmark = pytest.mark.slow


def test_predictor_loss_converges_to_one():
    report, runlog = run_converge(ConvergeConfig(steps=5000, embed_dim=4))
    assert 0.9 <= report.final_predictor_loss <= 1.1
    assert report.final_mean_abs_pearson < 0.05
    assert report.end_mean_sq_dcorr < report.start_mean_sq_dcorr
    assert len(runlog.records) == 5000


def test_rerun_is_byte_identical():
    cfg = ConvergeConfig(steps=300, embed_dim=4, seed=3)
    first, _ = run_converge(cfg)
    second, _ = run_converge(cfg)
    assert first.model_dump_json() == second.model_dump_json()
