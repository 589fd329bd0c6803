# tests/test_apps_ssl.py
import numpy as np
import pytest

from src.apps import SslConfig, invariance_mse, train_ssl_toy
from src.apps.ssl_toy import ViewSampler
from src.diffcore import grad_check
from src.errors import TrainingDivergenceError
from src.synthgen import ShapesWorld, gen_shapes_dataset, make_rng


def _cfg(**overrides) -> SslConfig:
    base = dict(
        n_per_class=20,
        steps=10,
        batch_size=32,
        knn_k=5,
        encoder_hidden=16,
        embed_dim=6,
        eval_samples=120,
        log_every=5,
    )
    base.update(overrides)
    return SslConfig(**base)


def test_invariance_zero_for_identical_views(rng):
    z = rng.normal(size=(16, 4))
    loss, g1, g2 = invariance_mse(z, z.copy())
    assert loss == 0.0
    np.testing.assert_allclose(g1, 0.0)
    np.testing.assert_allclose(g2, 0.0)


def test_invariance_gradients(rng):
    z1 = rng.normal(size=(10, 3))
    z2 = rng.normal(size=(10, 3))

    def f(params):
        loss, g1, g2 = invariance_mse(params[0], params[1])
        return loss, [g1, g2]

    assert grad_check(f, [z1, z2]) < 1e-6


def test_view_sampler_shares_latents():
    ds = gen_shapes_dataset(n_per_class=5, seed=0)
    world = ShapesWorld(noise_sigma=0.0, seed=0)
    x1, x2 = ViewSampler(ds, world).sample(8, make_rng(0))
    # без шума виды одного латента совпадают
    np.testing.assert_allclose(x1, x2)


def test_train_ssl_toy_runs():
    encoder, runlog, report = train_ssl_toy(_cfg())
    assert len(runlog.records) == 10
    assert [r.step for r in runlog.dcorr_records] == [0, 10]
    assert 0.0 <= report.attributes.shape <= 1.0
    assert 0.0 <= report.attributes.color <= 1.0
    assert report.final_invariance >= 0.0
    assert encoder.out_features == 6


def test_ssl_without_multiplier_skips_predictors():
    _, runlog, _ = train_ssl_toy(_cfg(task_weight=0.0))
    assert all(r.adversarial_loss == 0.0 and r.predictor_loss == 0.0 for r in runlog.records)


def test_predictor_divergence_keeps_partial_log(monkeypatch):
    def broken(z, z_hat, distance):
        return float("nan"), np.zeros_like(z_hat)

    monkeypatch.setattr("src.admin_game.trainer.predictor_loss_grad", broken)
    with pytest.raises(TrainingDivergenceError) as exc:
        train_ssl_toy(_cfg())
    partial = exc.value.partial_log
    assert partial is not None
    assert partial.records == []
    assert partial.diagnostic["step"] == 1
    assert partial.diagnostic["phase"] == "predictor"
