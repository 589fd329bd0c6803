# tests/test_diffcore.py
import math

import numpy as np
import pytest

from src.diffcore import (
    DenseLayer,
    LrSchedule,
    Mlp,
    OptimizerState,
    cross_entropy,
    gelu,
    gelu_grad,
    grad_check,
    lr_at,
    optimizer_step,
)
from src.errors import ConfigError, DimensionError, EvaluationError, TrainingDivergenceError


def test_gelu_matches_exact_form():
    x = np.array([-2.0, -0.5, 0.0, 0.5, 2.0])
    expected = np.array([v * 0.5 * (1.0 + math.erf(v / math.sqrt(2.0))) for v in x])
    np.testing.assert_allclose(gelu(x), expected, rtol=1e-12, atol=1e-15)


def test_gelu_grad_against_central_difference():
    x = np.linspace(-3.0, 3.0, 13)
    h = 1e-6
    numeric = (gelu(x + h) - gelu(x - h)) / (2 * h)
    np.testing.assert_allclose(gelu_grad(x), numeric, atol=1e-7)


def test_mlp_shapes_and_parameter_roundtrip(small_mlp, rng):
    x = rng.normal(size=(7, 3))
    out = small_mlp.forward(x)
    assert out.shape == (7, 2)
    assert small_mlp.n_params == 3 * 5 + 5 + 5 * 2 + 2

    clone = small_mlp.copy()
    clone.set_parameters([p + 1.0 for p in clone.parameters()])
    assert not np.allclose(clone.forward(x), out)
    np.testing.assert_array_equal(small_mlp.forward(x), out)


def test_mlp_rejects_wrong_input_width(small_mlp):
    with pytest.raises(DimensionError):
        small_mlp.forward(np.zeros((4, 2)))


def test_mlp_rejects_unchained_layers(rng):
    a = DenseLayer.init(3, 4, "relu", rng)
    b = DenseLayer.init(5, 2, "identity", rng)
    with pytest.raises(DimensionError):
        Mlp(layers=[a, b])


def test_unknown_activation_is_a_config_error(rng):
    layer = DenseLayer.init(3, 2, "tanh", rng)
    x = rng.normal(size=(4, 3))
    with pytest.raises(ConfigError) as exc:
        layer.forward(x)
    assert exc.value.details == {"activation": "tanh"}
    with pytest.raises(ConfigError):
        layer.backward(x, layer.pre_activation(x), np.ones((4, 2)))


@pytest.mark.parametrize("activation", ["identity", "relu", "gelu"])
def test_mlp_backward_passes_grad_check(activation, rng):
    net = Mlp.init([3, 4, 2], rng, activation=activation)
    x = rng.normal(size=(6, 3))
    upstream = rng.normal(size=(6, 2))

    def f(params):
        net.set_parameters(params)
        value = float(np.sum(upstream * net.forward(x)))
        grads, _ = net.backward(x, upstream)
        return value, grads

    # relu имеет излом в нуле; случайные точки его не задевают
    assert grad_check(f, net.parameters()) < 1e-5


def test_mlp_input_gradient(small_mlp, rng):
    x = rng.normal(size=(5, 3))
    upstream = rng.normal(size=(5, 2))

    def f(params):
        value = float(np.sum(upstream * small_mlp.forward(params[0])))
        _, dx = small_mlp.backward(params[0], upstream)
        return value, [dx]

    assert grad_check(f, [x]) < 1e-5


def test_grad_check_rejects_non_finite_objective():
    def f(params):
        return float("nan"), [np.zeros_like(params[0])]

    with pytest.raises(EvaluationError):
        grad_check(f, [np.zeros(3)])


def test_cross_entropy_value_and_gradient(rng):
    logits = rng.normal(size=(8, 3))
    labels = rng.integers(0, 3, size=8)

    loss, grad = cross_entropy(logits, labels)
    shifted = logits - logits.max(axis=1, keepdims=True)
    log_p = shifted - np.log(np.exp(shifted).sum(axis=1, keepdims=True))
    assert loss == pytest.approx(-log_p[np.arange(8), labels].mean())

    def f(params):
        value, g = cross_entropy(params[0], labels)
        return value, [g]

    assert grad_check(f, [logits]) < 1e-6


def test_adam_first_step_moves_by_lr():
    params = [np.array([1.0, -1.0])]
    grads = [np.array([0.5, -2.0])]
    state = OptimizerState.create("adam", params)
    new = optimizer_step(state, params, grads, lr=0.1)
    # первый шаг Adam после bias correction ≈ lr·sign(g)
    np.testing.assert_allclose(new[0], [0.9, -0.9], atol=1e-6)
    assert state.step_count == 1


def test_sgd_momentum_accumulates():
    params = [np.array([0.0])]
    state = OptimizerState.create("sgd_momentum", params, momentum=0.5)
    p1 = optimizer_step(state, params, [np.array([1.0])], lr=1.0)
    p2 = optimizer_step(state, p1, [np.array([1.0])], lr=1.0)
    np.testing.assert_allclose(p1[0], [-1.0])
    np.testing.assert_allclose(p2[0], [-2.5])


def test_optimizer_rejects_non_finite_gradient():
    params = [np.zeros(2)]
    state = OptimizerState.create("adam", params)
    with pytest.raises(TrainingDivergenceError):
        optimizer_step(state, params, [np.array([np.inf, 0.0])], lr=0.1)


def test_optimizer_rejects_shape_mismatch():
    params = [np.zeros(2)]
    state = OptimizerState.create("adam", params)
    with pytest.raises(DimensionError):
        optimizer_step(state, params, [np.zeros(3)], lr=0.1)


def test_unknown_optimizer_kind():
    with pytest.raises(ConfigError):
        OptimizerState.create("rmsprop", [np.zeros(1)])


def test_lr_schedule_warmup_and_cosine():
    schedule = LrSchedule(kind="cosine_with_warmup", total_steps=100, warmup_steps=10, base_rate=1.0)
    assert lr_at(schedule, 0) == 0.0
    assert lr_at(schedule, 5) == pytest.approx(0.5)
    assert lr_at(schedule, 10) == pytest.approx(1.0)
    assert lr_at(schedule, 55) == pytest.approx(0.5)
    assert lr_at(schedule, 100) == pytest.approx(0.0, abs=1e-12)
    assert lr_at(schedule, 500) == pytest.approx(0.0, abs=1e-12)


def test_lr_schedule_constant_and_invalid_warmup():
    assert lr_at(LrSchedule(base_rate=0.3, total_steps=10), 7) == 0.3
    with pytest.raises(ConfigError):
        LrSchedule(total_steps=5, warmup_steps=6)


def test_sgd_step_without_momentum():
    params = [np.array([1.0])]
    state = OptimizerState.create("sgd_momentum", params, momentum=0.0)
    new = optimizer_step(state, params, [np.array([2.0])], lr=0.1)
    np.testing.assert_allclose(new[0], [0.8])


@pytest.mark.parametrize("kind", ["sgd_momentum", "adam"])
def test_zero_gradient_leaves_parameters(kind):
    params = [np.array([1.5, -0.25]), np.array([[2.0]])]
    state = OptimizerState.create(kind, params, momentum=0.9)
    new = optimizer_step(state, params, [np.zeros(2), np.zeros((1, 1))], lr=0.1)
    for before, after in zip(params, new):
        np.testing.assert_array_equal(before, after)


def test_decoupled_weight_decay_shrinks_parameters():
    params = [np.array([2.0, -4.0])]
    state = OptimizerState.create("adam", params, weight_decay=0.5)
    new = optimizer_step(state, params, [np.zeros(2)], lr=0.1)
    np.testing.assert_allclose(new[0], [1.9, -3.8])
