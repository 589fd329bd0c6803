"""
Минимальный движок дифференцируемых вычислений admin-lab
"""

from .layers import DenseLayer, Mlp, gelu, gelu_grad, mlp_backward, mlp_forward
from .optim import LrSchedule, OptimizerState, lr_at, optimizer_step
from .gradcheck import grad_check
from .losses import cross_entropy, mean_squared_norm

__all__ = [
    'DenseLayer',
    'Mlp',
    'gelu',
    'gelu_grad',
    'mlp_forward',
    'mlp_backward',
    'LrSchedule',
    'OptimizerState',
    'lr_at',
    'optimizer_step',
    'grad_check',
    'cross_entropy',
    'mean_squared_norm',
]
