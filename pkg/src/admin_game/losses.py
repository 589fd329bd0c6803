# src/admin_game/losses.py

"""
Потери игры.

Ошибка восстановления нормирована на размерность: для l2 это среднее
по всем элементам (z − ẑ)², поэтому в равновесии стандартизованной
игры оно равно 1 при любом d.
"""

from __future__ import annotations

import numpy as np

from ..errors import ConfigError, DimensionError
from .config import AdminConfig, Distance


def _residual(z: np.ndarray, z_hat: np.ndarray) -> np.ndarray:
    z = np.asarray(z, dtype=np.float64)
    z_hat = np.asarray(z_hat, dtype=np.float64)
    if z.shape != z_hat.shape or z.ndim != 2:
        raise DimensionError(
            "representation and reconstruction shapes differ",
            {"z": list(z.shape), "z_hat": list(z_hat.shape)},
        )
    return z - z_hat


def predictor_loss_grad(z_std: np.ndarray, z_hat: np.ndarray, distance: Distance) -> tuple[float, np.ndarray]:
    """Потеря предикторов и её градиент по ẑ."""
    r = _residual(z_std, z_hat)
    size = r.size
    if distance == "l2_squared":
        return float(np.mean(r * r)), -2.0 * r / size
    if distance == "l1":
        return float(np.mean(np.abs(r))), -np.sign(r) / size
    raise ConfigError(f"unknown distance: {distance}", {"distance": distance})


def predictor_loss(z_std: np.ndarray, z_hat: np.ndarray, distance: Distance = "l2_squared") -> float:
    return predictor_loss_grad(z_std, z_hat, distance)[0]


def per_sample_distance(r: np.ndarray, distance: Distance) -> np.ndarray:
    d = r.shape[1]
    if distance == "l2_squared":
        return np.sum(r * r, axis=1) / d
    if distance == "l1":
        return np.sum(np.abs(r), axis=1) / d
    raise ConfigError(f"unknown distance: {distance}", {"distance": distance})


def encoder_adversarial_loss_grad(
    z_eff: np.ndarray, z_hat: np.ndarray, cfg: AdminConfig
) -> tuple[float, np.ndarray, np.ndarray]:
    """
    Состязательная потеря энкодера и градиенты по z_eff и по ẑ.

    z_eff зависит от формулировки: стандартизованный z для standardized,
    сырой z для margin и raw.
    """
    r = _residual(z_eff, z_hat)
    n, d = r.shape

    if cfg.formulation == "standardized":
        loss = 1.0 - float(np.mean(r * r))
        g_r = -2.0 * r / r.size
    elif cfg.formulation == "raw":
        loss = -float(np.mean(r * r))
        g_r = -2.0 * r / r.size
    elif cfg.formulation == "margin":
        dist = per_sample_distance(r, cfg.distance)
        hinge = cfg.margin - dist
        active = hinge > 0.0
        loss = float(np.mean(np.where(active, hinge, 0.0)))
        if cfg.distance == "l2_squared":
            g_dist = 2.0 * r / d
        else:
            g_dist = np.sign(r) / d
        # d/dr max(0, α − dist) = −∂dist/∂r на активных строках
        g_r = -(active[:, None] * g_dist) / n
    else:
        raise ConfigError(f"unknown formulation: {cfg.formulation}", {"formulation": cfg.formulation})

    return loss, g_r, -g_r


def encoder_adversarial_loss(z_eff: np.ndarray, z_hat: np.ndarray, cfg: AdminConfig) -> float:
    return encoder_adversarial_loss_grad(z_eff, z_hat, cfg)[0]
