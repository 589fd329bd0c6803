# src/admin_game/config.py

from __future__ import annotations

from typing import Any, Literal, Mapping, Optional, Type, TypeVar

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from ..errors import ConfigError

Formulation = Literal["standardized", "margin", "raw"]
Distance = Literal["l2_squared", "l1"]

ModelT = TypeVar("ModelT", bound=BaseModel)


class AdminConfig(BaseModel):
    """
    Гиперпараметры состязательной игры.

    formulation:
      - standardized - игра на стандартизованных z, равновесие MSE = 1;
      - margin - hinge max(0, α − dist) на нестандартизованных z;
      - raw - неограниченная максимизация MSE (только для абляции).
    task_weight - множитель λ при состязательном члене.
    predictor_steps - k шагов предикторов на один шаг энкодера.
    """

    model_config = ConfigDict(extra="forbid")

    formulation: Formulation = "standardized"
    distance: Distance = "l2_squared"
    margin: float = Field(0.0, ge=0.0)
    task_weight: float = Field(1.0, ge=0.0)
    predictor_steps: int = Field(1, ge=1)
    encoder_lr: float = Field(1e-3, ge=0.0)
    predictor_lr: float = Field(1e-3, ge=0.0)
    batch_size: int = Field(256, ge=4)
    embed_dim: int = 4
    seed: int = Field(0, ge=0)

    steps: int = Field(1000, ge=1)
    warmup_steps: int = Field(0, ge=0)
    schedule: Literal["constant", "cosine_with_warmup"] = "constant"
    # None: предикторы идут по тому же расписанию, что и энкодер
    predictor_schedule: Optional[Literal["constant", "cosine_with_warmup"]] = None
    optimizer: Literal["sgd_momentum", "adam"] = "adam"
    momentum: float = Field(0.9, ge=0.0, lt=1.0)
    weight_decay: float = Field(0.0, ge=0.0)
    standardize_eps: float = Field(1e-5, gt=0.0)

    dcorr_every: int = Field(0, ge=0)  # 0: только начало и конец
    dcorr_samples: int = Field(1024, ge=4, le=8192)
    eval_samples: int = Field(4096, ge=4, le=8192)
    log_every: int = Field(500, ge=1)

    predictor_hidden: int = Field(32, ge=1)
    predictor_depth: int = Field(2, ge=1)
    predictor_activation: Literal["identity", "relu", "gelu"] = "gelu"

    @model_validator(mode="after")
    def _check_consistency(self) -> "AdminConfig":
        if self.formulation == "margin" and self.margin <= 0.0:
            raise ValueError("margin formulation requires margin > 0")
        if self.warmup_steps > self.steps:
            raise ValueError("warmup_steps must not exceed steps")
        return self


def build_config(model: Type[ModelT], data: Mapping[str, Any] | None = None, **overrides: Any) -> ModelT:
    """Валидация конфига с переводом ошибок pydantic в ConfigError."""
    payload = {**(data or {}), **overrides}
    try:
        return model.model_validate(payload)
    except ValidationError as exc:
        errors = [
            {"loc": ".".join(str(p) for p in err.get("loc", ())), "msg": err.get("msg", "")}
            for err in exc.errors()
        ]
        raise ConfigError(f"invalid {model.__name__}", {"errors": errors}) from exc
