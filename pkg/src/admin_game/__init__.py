"""
Состязательная минимизация зависимостей: стандартизация, банк предикторов, цикл игры
"""

from .config import AdminConfig, build_config
from .losses import (
    encoder_adversarial_loss,
    encoder_adversarial_loss_grad,
    predictor_loss,
    predictor_loss_grad,
)
from .predictor_bank import PredictorBank, bank_forward
from .runlog import RUNLOG_SCHEMA_VERSION, STEP_HEADER, RunLog, StepRecord
from .standardizer import Standardizer, standardize, standardize_backward
from .trainer import (
    Encoder,
    TaskHook,
    TaskOutput,
    admin_train,
    adversarial_encoder_grad,
    predictor_update,
)

__all__ = [
    'AdminConfig',
    'Encoder',
    'PredictorBank',
    'RUNLOG_SCHEMA_VERSION',
    'RunLog',
    'STEP_HEADER',
    'Standardizer',
    'StepRecord',
    'TaskHook',
    'TaskOutput',
    'admin_train',
    'adversarial_encoder_grad',
    'bank_forward',
    'build_config',
    'encoder_adversarial_loss',
    'encoder_adversarial_loss_grad',
    'predictor_loss',
    'predictor_loss_grad',
    'predictor_update',
    'standardize',
    'standardize_backward',
]
