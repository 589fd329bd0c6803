# src/diffcore/layers.py

"""
Плотные слои и MLP с ручным reverse-mode.

Архитектуры закрыты (dense + identity/relu/gelu), поэтому градиенты
выписаны послойно, без общего tape. Всё в float64.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Literal, Sequence

import numpy as np
from scipy.special import erf

from ..errors import ConfigError, DimensionError

logger = logging.getLogger(__name__)

Activation = Literal["identity", "relu", "gelu"]

_INV_SQRT2 = 1.0 / math.sqrt(2.0)
_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)


# ─────────────────────────────────────
# Активации
# ─────────────────────────────────────

def normal_cdf(x: np.ndarray) -> np.ndarray:
    return 0.5 * (1.0 + erf(x * _INV_SQRT2))


def gelu(x: np.ndarray) -> np.ndarray:
    """Точная GELU: x·Φ(x), Φ через erf (не tanh-аппроксимация)."""
    return x * normal_cdf(x)


def gelu_grad(x: np.ndarray) -> np.ndarray:
    # d/dx [x Φ(x)] = Φ(x) + x φ(x)
    return normal_cdf(x) + x * _INV_SQRT_2PI * np.exp(-0.5 * x * x)


def activate(pre: np.ndarray, activation: Activation) -> np.ndarray:
    if activation == "identity":
        return pre
    if activation == "relu":
        return np.maximum(pre, 0.0)
    if activation == "gelu":
        return gelu(pre)
    raise ConfigError(f"unknown activation: {activation}", {"activation": activation})


def activation_grad(pre: np.ndarray, activation: Activation) -> np.ndarray:
    if activation == "identity":
        return np.ones_like(pre)
    if activation == "relu":
        return np.where(pre > 0.0, 1.0, 0.0)
    if activation == "gelu":
        return gelu_grad(pre)
    raise ConfigError(f"unknown activation: {activation}", {"activation": activation})


def glorot_limit(fan_in: int, fan_out: int) -> float:
    return math.sqrt(6.0 / (fan_in + fan_out))


# ─────────────────────────────────────
# Слои
# ─────────────────────────────────────

@dataclass
class DenseLayer:
    weight: np.ndarray  # [out × in]
    bias: np.ndarray  # [out]
    activation: Activation = "identity"

    def __post_init__(self) -> None:
        self.weight = np.asarray(self.weight, dtype=np.float64)
        self.bias = np.asarray(self.bias, dtype=np.float64)
        if self.weight.ndim != 2 or self.bias.shape != (self.weight.shape[0],):
            raise DimensionError(
                "dense layer weight/bias shapes are inconsistent",
                {"weight": list(self.weight.shape), "bias": list(self.bias.shape)},
            )

    @property
    def in_features(self) -> int:
        return self.weight.shape[1]

    @property
    def out_features(self) -> int:
        return self.weight.shape[0]

    @property
    def n_params(self) -> int:
        return self.weight.size + self.bias.size

    @classmethod
    def init(
        cls,
        in_features: int,
        out_features: int,
        activation: Activation,
        rng: np.random.Generator,
    ) -> "DenseLayer":
        limit = glorot_limit(in_features, out_features)
        weight = rng.uniform(-limit, limit, size=(out_features, in_features))
        # смещения нулевые
        return cls(weight=weight, bias=np.zeros(out_features), activation=activation)

    def pre_activation(self, x: np.ndarray) -> np.ndarray:
        return x @ self.weight.T + self.bias

    def forward(self, x: np.ndarray) -> np.ndarray:
        return activate(self.pre_activation(x), self.activation)

    def backward(
        self, x: np.ndarray, pre: np.ndarray, upstream: np.ndarray
    ) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Возвращает (dW, db, dx) для ⟨upstream, forward(x)⟩."""
        g_pre = upstream * activation_grad(pre, self.activation)
        d_weight = g_pre.T @ x
        d_bias = g_pre.sum(axis=0)
        d_x = g_pre @ self.weight
        return d_weight, d_bias, d_x


@dataclass
class Mlp:
    layers: list[DenseLayer] = field(default_factory=list)

    def __post_init__(self) -> None:
        if not self.layers:
            raise DimensionError("an Mlp needs at least one layer")
        for prev, nxt in zip(self.layers, self.layers[1:]):
            if prev.out_features != nxt.in_features:
                raise DimensionError(
                    "adjacent layer widths do not chain",
                    {"out": prev.out_features, "next_in": nxt.in_features},
                )

    @classmethod
    def init(
        cls,
        widths: Sequence[int],
        rng: np.random.Generator,
        activation: Activation = "gelu",
        output_activation: Activation = "identity",
    ) -> "Mlp":
        """widths = [in, hidden..., out]; скрытые слои с activation, выход - output_activation."""
        if len(widths) < 2:
            raise DimensionError("widths must list at least input and output", {"widths": list(widths)})
        layers: list[DenseLayer] = []
        n_layers = len(widths) - 1
        for idx in range(n_layers):
            act = output_activation if idx == n_layers - 1 else activation
            layers.append(DenseLayer.init(widths[idx], widths[idx + 1], act, rng))
        return cls(layers=layers)

    @property
    def in_features(self) -> int:
        return self.layers[0].in_features

    @property
    def out_features(self) -> int:
        return self.layers[-1].out_features

    @property
    def n_params(self) -> int:
        return sum(layer.n_params for layer in self.layers)

    def parameters(self) -> list[np.ndarray]:
        params: list[np.ndarray] = []
        for layer in self.layers:
            params.extend([layer.weight, layer.bias])
        return params

    def set_parameters(self, params: Sequence[np.ndarray]) -> None:
        if len(params) != 2 * len(self.layers):
            raise DimensionError(
                "parameter list length does not match the layer count",
                {"expected": 2 * len(self.layers), "got": len(params)},
            )
        for idx, layer in enumerate(self.layers):
            weight, bias = params[2 * idx], params[2 * idx + 1]
            if weight.shape != layer.weight.shape or bias.shape != layer.bias.shape:
                raise DimensionError("parameter shape mismatch", {"layer": idx})
            layer.weight = np.array(weight, dtype=np.float64)
            layer.bias = np.array(bias, dtype=np.float64)

    def copy(self) -> "Mlp":
        return Mlp(
            layers=[
                DenseLayer(layer.weight.copy(), layer.bias.copy(), layer.activation)
                for layer in self.layers
            ]
        )

    def _check_input(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=np.float64)
        if x.ndim != 2 or x.shape[1] != self.in_features:
            raise DimensionError(
                "input width does not match the network",
                {"expected_cols": self.in_features, "shape": list(x.shape)},
            )
        return x

    def forward(self, x: np.ndarray) -> np.ndarray:
        h = self._check_input(x)
        for layer in self.layers:
            h = layer.forward(h)
        return h

    def backward(
        self, x: np.ndarray, upstream: np.ndarray
    ) -> tuple[list[np.ndarray], np.ndarray]:
        """
        Точные градиенты ⟨upstream, forward(x)⟩ по всем параметрам и по x.

        Прямой проход пересчитывается, поэтому функция чистая.
        """
        h = self._check_input(x)
        upstream = np.asarray(upstream, dtype=np.float64)
        if upstream.shape != (h.shape[0], self.out_features):
            raise DimensionError(
                "upstream shape does not match the forward output",
                {"expected": [h.shape[0], self.out_features], "got": list(upstream.shape)},
            )

        inputs: list[np.ndarray] = []
        pres: list[np.ndarray] = []
        for layer in self.layers:
            inputs.append(h)
            pre = layer.pre_activation(h)
            pres.append(pre)
            h = activate(pre, layer.activation)

        grads: list[np.ndarray] = [np.empty(0)] * (2 * len(self.layers))
        g = upstream
        for idx in range(len(self.layers) - 1, -1, -1):
            d_weight, d_bias, g = self.layers[idx].backward(inputs[idx], pres[idx], g)
            grads[2 * idx] = d_weight
            grads[2 * idx + 1] = d_bias
        return grads, g


def mlp_forward(net: Mlp, x: np.ndarray) -> np.ndarray:
    return net.forward(x)


def mlp_backward(
    net: Mlp, x: np.ndarray, upstream: np.ndarray
) -> tuple[list[np.ndarray], np.ndarray]:
    return net.backward(x, upstream)
