# src/diffcore/gradcheck.py

from __future__ import annotations

import logging
from typing import Callable, Sequence

import numpy as np

from ..errors import DimensionError, EvaluationError

logger = logging.getLogger(__name__)

# f(params) -> (значение, аналитические градиенты той же формы)
ValueAndGrad = Callable[[list[np.ndarray]], tuple[float, list[np.ndarray]]]


def _value(f: ValueAndGrad, params: list[np.ndarray]) -> float:
    value, _ = f(params)
    value = float(value)
    if not np.isfinite(value):
        raise EvaluationError("objective is not finite at the evaluation point", {"value": repr(value)})
    return value


def grad_check(f: ValueAndGrad, params: Sequence[np.ndarray], h: float = 1e-4) -> float:
    """
    max по координатам |analytic − central| / max(1, |central|).

    Центральные разности с шагом h по каждой координате каждого параметра.
    """
    base = [np.array(p, dtype=np.float64) for p in params]
    _value(f, base)
    _, analytic = f(base)
    if len(analytic) != len(base):
        raise DimensionError(
            "analytic gradient list does not match parameters",
            {"params": len(base), "grads": len(analytic)},
        )

    max_err = 0.0
    for p_idx, p in enumerate(base):
        if analytic[p_idx].shape != p.shape:
            raise DimensionError("analytic gradient shape mismatch", {"index": p_idx})
        for coord in np.ndindex(p.shape):
            original = p[coord]

            p[coord] = original + h
            f_plus = _value(f, base)
            p[coord] = original - h
            f_minus = _value(f, base)
            p[coord] = original

            numeric = (f_plus - f_minus) / (2.0 * h)
            err = abs(float(analytic[p_idx][coord]) - numeric) / max(1.0, abs(numeric))
            if err > max_err:
                max_err = err

    logger.debug("grad_check: %d tensors, max relative error %.3e", len(base), max_err)
    return max_err
