# src/diffcore/losses.py

"""Скалярные функции потерь с градиентами по входам."""

from __future__ import annotations

import numpy as np
from scipy.special import log_softmax, softmax

from ..errors import DimensionError


def cross_entropy(logits: np.ndarray, labels: np.ndarray) -> tuple[float, np.ndarray]:
    """Средний softmax cross-entropy и его градиент по логитам."""
    logits = np.asarray(logits, dtype=np.float64)
    labels = np.asarray(labels, dtype=np.int64)
    if logits.ndim != 2 or labels.shape != (logits.shape[0],):
        raise DimensionError(
            "logits must be [n × classes] with one label per row",
            {"logits": list(logits.shape), "labels": list(labels.shape)},
        )
    n = logits.shape[0]
    rows = np.arange(n)
    log_p = log_softmax(logits, axis=1)
    loss = float(-log_p[rows, labels].mean())

    grad = softmax(logits, axis=1)
    grad[rows, labels] -= 1.0
    return loss, grad / n


def mean_squared_norm(diff: np.ndarray) -> tuple[float, np.ndarray]:
    """mean_i ‖diff_i‖² и градиент по diff."""
    diff = np.asarray(diff, dtype=np.float64)
    n = diff.shape[0]
    return float(np.sum(diff * diff) / n), 2.0 * diff / n
