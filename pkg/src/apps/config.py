# src/apps/config.py

"""
Конфиги экспериментов. Неизвестные ключи отклоняются (extra="forbid"),
поэтому опечатка в --set или в файле конфига даёт ConfigError, а не
молча игнорируется.
"""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

from ..admin_game.config import AdminConfig, Distance, Formulation, build_config

PicaMethod = Literal["pca_svd", "pca_covreg", "pca_linear_pred", "pica_nonlinear", "nlpica"]


class ExperimentConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    seed: int = Field(0, ge=0)
    log_every: int = Field(500, ge=1)


class PicaConfig(ExperimentConfig):
    """Значения по умолчанию - линейный автокодировщик 3 → 2 на наблюдениях [5v₁, 3cos(·), v₂]."""

    method: PicaMethod = "pica_nonlinear"
    steps: int = Field(5000, ge=1)
    batch_size: int = Field(512, ge=4)
    encoder_lr: float = Field(5e-3, ge=0.0)
    predictor_lr: float = Field(2e-2, ge=0.0)
    task_weight: float = Field(1.0, ge=0.0)
    recon_weight: float = Field(0.02, ge=0.0)
    predictor_steps: int = Field(16, ge=1)
    predictor_hidden: int = Field(32, ge=1)
    embed_dim: int = Field(2, ge=2)
    nl_hidden: int = Field(32, ge=1)
    eval_samples: int = Field(100_000, ge=4)
    dcorr_samples: int = Field(4096, ge=4, le=8192)
    scatter_rows: int = Field(5000, ge=0)

    def admin_config(self, predictor_depth: int) -> AdminConfig:
        return build_config(
            AdminConfig,
            formulation="standardized",
            task_weight=self.task_weight,
            predictor_steps=self.predictor_steps,
            encoder_lr=self.encoder_lr,
            predictor_lr=self.predictor_lr,
            batch_size=self.batch_size,
            embed_dim=self.embed_dim,
            seed=self.seed,
            steps=self.steps,
            optimizer="adam",
            predictor_hidden=self.predictor_hidden,
            predictor_depth=predictor_depth,
            eval_samples=min(self.dcorr_samples, 8192),
            dcorr_samples=min(self.dcorr_samples, 1024),
            log_every=self.log_every,
        )


class ConvergeConfig(ExperimentConfig):
    """
    Предикторы делают k = 4 шага с lr в 4 раза выше, чем у энкодера, и не
    затухают; lr энкодера уходит в ноль по косинусу. При k = 1 и равных lr
    предикторы отстают от энкодера и остаточная корреляция не исчезает.
    """

    input_dim: int = Field(8, ge=2)
    embed_dim: int = Field(4, ge=2)
    encoder_hidden: int = Field(32, ge=1)
    steps: int = Field(5000, ge=1)
    batch_size: int = Field(256, ge=4)
    encoder_lr: float = Field(1e-3, ge=0.0)
    predictor_lr: float = Field(4e-3, ge=0.0)
    predictor_steps: int = Field(4, ge=1)
    schedule: Literal["constant", "cosine_with_warmup"] = "cosine_with_warmup"
    task_weight: float = Field(1.0, ge=0.0)
    dcorr_every: int = Field(500, ge=0)
    dcorr_samples: int = Field(1024, ge=4, le=8192)
    eval_samples: int = Field(4096, ge=4, le=8192)

    def admin_config(self) -> AdminConfig:
        return build_config(
            AdminConfig,
            formulation="standardized",
            task_weight=self.task_weight,
            predictor_steps=self.predictor_steps,
            encoder_lr=self.encoder_lr,
            predictor_lr=self.predictor_lr,
            batch_size=self.batch_size,
            embed_dim=self.embed_dim,
            seed=self.seed,
            steps=self.steps,
            schedule=self.schedule,
            predictor_schedule="constant",
            dcorr_every=self.dcorr_every,
            dcorr_samples=self.dcorr_samples,
            eval_samples=self.eval_samples,
            log_every=self.log_every,
        )


class ShapesDataConfig(ExperimentConfig):
    n_per_class: int = Field(200, ge=1)
    noise_sigma: float = Field(0.1, ge=0.0)
    input_dim: int = Field(16, ge=8)
    data_seed: int = Field(0, ge=0)
    knn_k: int = Field(20, ge=1)


class ClassifyConfig(ShapesDataConfig):
    """
    λ=5, l1-margin α=0.4, k=1 - вариант с нестандартизованными представлениями.

    Предикторы учатся втрое быстрее энкодера, а развязанный weight decay
    энкодера не даёт уйти от отступа простым ростом нормы z.
    """

    use_admin: bool = True
    formulation: Formulation = "margin"
    distance: Distance = "l1"
    margin: float = Field(0.4, ge=0.0)
    task_weight: float = Field(5.0, ge=0.0)
    predictor_steps: int = Field(1, ge=1)
    encoder_hidden: int = Field(64, ge=1)
    embed_dim: int = Field(16, ge=2)
    steps: int = Field(2000, ge=1)
    batch_size: int = Field(128, ge=4)
    encoder_lr: float = Field(1e-3, ge=0.0)
    predictor_lr: float = Field(3e-3, ge=0.0)
    warmup_steps: int = Field(100, ge=0)
    schedule: Literal["constant", "cosine_with_warmup"] = "cosine_with_warmup"
    weight_decay: float = Field(0.05, ge=0.0)
    eval_samples: int = Field(600, ge=4, le=8192)

    def admin_config(self) -> AdminConfig:
        baseline = not self.use_admin
        formulation = self.formulation
        if baseline and formulation == "margin" and self.margin <= 0.0:
            formulation = "standardized"
        return build_config(
            AdminConfig,
            formulation=formulation,
            distance=self.distance,
            margin=self.margin,
            task_weight=0.0 if baseline else self.task_weight,
            predictor_steps=self.predictor_steps,
            encoder_lr=self.encoder_lr,
            predictor_lr=self.predictor_lr,
            batch_size=self.batch_size,
            embed_dim=self.embed_dim,
            seed=self.seed,
            steps=self.steps,
            warmup_steps=min(self.warmup_steps, self.steps),
            schedule=self.schedule,
            weight_decay=self.weight_decay,
            eval_samples=self.eval_samples,
            dcorr_samples=min(self.eval_samples, 1024),
            log_every=self.log_every,
        )


class SslConfig(ShapesDataConfig):
    formulation: Formulation = "standardized"
    distance: Distance = "l2_squared"
    margin: float = Field(0.4, ge=0.0)
    task_weight: float = Field(1.0, ge=0.0)
    predictor_steps: int = Field(1, ge=1)
    encoder_hidden: int = Field(64, ge=1)
    embed_dim: int = Field(16, ge=2)
    steps: int = Field(2000, ge=1)
    batch_size: int = Field(256, ge=4)
    encoder_lr: float = Field(1e-3, ge=0.0)
    predictor_lr: float = Field(1e-3, ge=0.0)
    view_noise: float = Field(0.1, ge=0.0)
    eval_samples: int = Field(1200, ge=4, le=8192)

    def admin_config(self) -> AdminConfig:
        return build_config(
            AdminConfig,
            formulation=self.formulation,
            distance=self.distance,
            margin=self.margin if self.formulation == "margin" else 0.0,
            task_weight=self.task_weight,
            predictor_steps=self.predictor_steps,
            encoder_lr=self.encoder_lr,
            predictor_lr=self.predictor_lr,
            batch_size=self.batch_size,
            embed_dim=self.embed_dim,
            seed=self.seed,
            steps=self.steps,
            eval_samples=self.eval_samples,
            dcorr_samples=min(self.eval_samples, 1024),
            log_every=self.log_every,
        )


class ImputeConfig(ExperimentConfig):
    hidden: int = Field(32, ge=1)
    steps: int = Field(3000, ge=1)
    batch_size: int = Field(256, ge=4)
    lr: float = Field(1e-2, ge=0.0)
    eval_samples: int = Field(4096, ge=4)


class SweepConfig(ClassifyConfig):
    alphas: list[float] = Field(default_factory=lambda: [0.0, 0.1, 0.2, 0.4, 0.8, 1.6])


class DcorrConfig(ExperimentConfig):
    """input - путь к числовому CSV; если задан, generator не используется."""

    input: Optional[str] = None
    generator: Literal["quadratic", "pairwise-not-mutual", "independent", "pica", "gaussian"] = "quadratic"
    n: int = Field(4096, ge=4, le=8192)
    a: float = Field(1.0, gt=0.0)
