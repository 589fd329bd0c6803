# tests/test_apps_converge.py
import numpy as np

from src.apps import ConvergeConfig, ImputeConfig, impute_mutual, run_converge


def test_run_converge_report():
    cfg = ConvergeConfig(
        steps=20, batch_size=32, dcorr_every=10, dcorr_samples=64, eval_samples=128, encoder_hidden=8, log_every=10
    )
    report, runlog = run_converge(cfg)
    assert len(runlog.records) == 20
    assert [r.step for r in runlog.dcorr_records] == [0, 10, 20]
    assert report.start_mean_sq_dcorr == runlog.dcorr_records[0].mean_sq_dcorr
    assert report.end_mean_sq_dcorr == report.summary.mean_sq_dcorr
    assert report.final_predictor_loss > 0.0
    assert report.summary.n_samples == 128


def test_impute_mutual_small_run():
    report = impute_mutual(ImputeConfig(steps=30, batch_size=64, eval_samples=2048, hidden=8, log_every=10))
    assert len(report.pairwise_dcorr) == 3
    assert all(0.0 <= v <= 1.0 for v in report.pairwise_dcorr)
    assert report.joint_dcorr > max(report.pairwise_dcorr)
    assert np.isfinite(report.imputation_mse)


def test_converge_defaults_let_predictors_track_the_encoder():
    admin_cfg = ConvergeConfig().admin_config()
    assert admin_cfg.predictor_steps > 1
    assert admin_cfg.predictor_lr > admin_cfg.encoder_lr
    assert admin_cfg.schedule == "cosine_with_warmup"
    assert admin_cfg.predictor_schedule == "constant"


def test_converge_encoder_rate_decays():
    cfg = ConvergeConfig(
        steps=12, batch_size=32, dcorr_every=0, dcorr_samples=64, eval_samples=128, encoder_hidden=8, log_every=6
    )
    _, runlog = run_converge(cfg)
    rates = [r.encoder_lr for r in runlog.records]
    assert rates[0] == cfg.encoder_lr
    assert all(a >= b for a, b in zip(rates, rates[1:]))
    assert rates[-1] < 0.1 * cfg.encoder_lr
