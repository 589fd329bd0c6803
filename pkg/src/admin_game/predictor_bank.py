# src/admin_game/predictor_bank.py

"""
Банк предикторов зависимостей.

d маленьких сетей, сеть i восстанавливает z_i по z_{−i}. Все сети
считаются одним батчевым проходом: веса слоя хранятся стопкой
[d × out × in], вход группы i собирается индексами others[i] (без i),
поэтому маскирование структурное и не обучается.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ..diffcore.layers import Activation, DenseLayer, Mlp, activate, activation_grad
from ..errors import ConfigError, DimensionError

logger = logging.getLogger(__name__)


@dataclass
class GroupedLayer:
    weight: np.ndarray  # [d × out × in]
    bias: np.ndarray  # [d × out]
    activation: Activation = "identity"

    def pre_activation(self, h: np.ndarray) -> np.ndarray:
        # h: [d × n × in]
        return np.einsum("gni,goi->gno", h, self.weight) + self.bias[:, None, :]


def _others_index(d: int) -> np.ndarray:
    return np.array([[j for j in range(d) if j != i] for i in range(d)], dtype=np.int64)


@dataclass
class PredictorBank:
    d: int
    layers: list[GroupedLayer]
    others: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if self.d < 2:
            raise ConfigError("a predictor bank needs d ≥ 2", {"d": self.d})
        if not self.layers:
            raise DimensionError("a predictor bank needs at least one layer")
        self.others = _others_index(self.d)
        width = self.d - 1
        for idx, layer in enumerate(self.layers):
            if layer.weight.ndim != 3 or layer.weight.shape[0] != self.d or layer.weight.shape[2] != width:
                raise DimensionError(
                    "grouped layer does not chain",
                    {"layer": idx, "weight": list(layer.weight.shape), "expected_in": width},
                )
            width = layer.weight.shape[1]
        if width != 1:
            raise DimensionError("every predictor must output a scalar", {"out": width})

    @classmethod
    def init(
        cls,
        d: int,
        rng: np.random.Generator,
        hidden: int = 32,
        depth: int = 2,
        activation: Activation = "gelu",
    ) -> "PredictorBank":
        """depth=1 - линейные предикторы; иначе depth слоёв, скрытые ширины hidden."""
        if d < 2:
            raise ConfigError("a predictor bank needs d ≥ 2", {"d": d})
        if depth < 1:
            raise ConfigError("predictor depth must be ≥ 1", {"depth": depth})
        widths = [d - 1] + [hidden] * (depth - 1) + [1]
        nets = [Mlp.init(widths, rng, activation=activation, output_activation="identity") for _ in range(d)]
        return cls.from_predictors(nets)

    @classmethod
    def from_predictors(cls, nets: Sequence[Mlp]) -> "PredictorBank":
        layers: list[GroupedLayer] = []
        for idx in range(len(nets[0].layers)):
            layers.append(
                GroupedLayer(
                    weight=np.stack([net.layers[idx].weight for net in nets]).astype(np.float64),
                    bias=np.stack([net.layers[idx].bias for net in nets]).astype(np.float64),
                    activation=nets[0].layers[idx].activation,
                )
            )
        return cls(d=len(nets), layers=layers)

    @property
    def predictors(self) -> list[Mlp]:
        """Копии отдельных предикторов как Mlp (для проверок и отладки)."""
        return [
            Mlp(
                layers=[
                    DenseLayer(layer.weight[i].copy(), layer.bias[i].copy(), layer.activation)
                    for layer in self.layers
                ]
            )
            for i in range(self.d)
        ]

    @property
    def n_params(self) -> int:
        return sum(layer.weight.size + layer.bias.size for layer in self.layers)

    def parameters(self) -> list[np.ndarray]:
        params: list[np.ndarray] = []
        for layer in self.layers:
            params.extend([layer.weight, layer.bias])
        return params

    def set_parameters(self, params: Sequence[np.ndarray]) -> None:
        if len(params) != 2 * len(self.layers):
            raise DimensionError("parameter list length does not match the bank")
        for idx, layer in enumerate(self.layers):
            weight, bias = params[2 * idx], params[2 * idx + 1]
            if weight.shape != layer.weight.shape or bias.shape != layer.bias.shape:
                raise DimensionError("parameter shape mismatch", {"layer": idx})
            layer.weight = np.array(weight, dtype=np.float64)
            layer.bias = np.array(bias, dtype=np.float64)

    def copy(self) -> "PredictorBank":
        return PredictorBank(
            d=self.d,
            layers=[GroupedLayer(l.weight.copy(), l.bias.copy(), l.activation) for l in self.layers],
        )

    # ---- forward / backward ----

    def _gather(self, z: np.ndarray) -> np.ndarray:
        z = np.asarray(z, dtype=np.float64)
        if z.ndim != 2 or z.shape[1] != self.d:
            raise DimensionError(
                "bank input width does not match d",
                {"d": self.d, "shape": list(z.shape)},
            )
        # [n × d × (d−1)] → [d × n × (d−1)]
        return np.ascontiguousarray(z[:, self.others].transpose(1, 0, 2))

    def forward(self, z: np.ndarray) -> np.ndarray:
        h = self._gather(z)
        for layer in self.layers:
            h = activate(layer.pre_activation(h), layer.activation)
        return h[:, :, 0].T.copy()

    def backward(self, z: np.ndarray, upstream: np.ndarray) -> tuple[list[np.ndarray], np.ndarray]:
        """Градиенты ⟨upstream, forward(z)⟩ по параметрам банка и по z."""
        h = self._gather(z)
        n = h.shape[1]
        upstream = np.asarray(upstream, dtype=np.float64)
        if upstream.shape != (n, self.d):
            raise DimensionError(
                "upstream shape does not match the bank output",
                {"expected": [n, self.d], "got": list(upstream.shape)},
            )

        inputs: list[np.ndarray] = []
        pres: list[np.ndarray] = []
        for layer in self.layers:
            inputs.append(h)
            pre = layer.pre_activation(h)
            pres.append(pre)
            h = activate(pre, layer.activation)

        grads: list[np.ndarray] = [np.empty(0)] * (2 * len(self.layers))
        g = upstream.T[:, :, None]
        for idx in range(len(self.layers) - 1, -1, -1):
            layer = self.layers[idx]
            g_pre = g * activation_grad(pres[idx], layer.activation)
            grads[2 * idx] = np.einsum("gno,gni->goi", g_pre, inputs[idx])
            grads[2 * idx + 1] = g_pre.sum(axis=1)
            g = np.einsum("gno,goi->gni", g_pre, layer.weight)

        dz = np.zeros((n, self.d))
        for i in range(self.d):
            dz[:, self.others[i]] += g[i]
        return grads, dz


def bank_forward(bank: PredictorBank, z: np.ndarray) -> np.ndarray:
    return bank.forward(z)
