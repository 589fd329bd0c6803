"""
Прикладные эксперименты: PCA/PICA/NLPICA, классификация, игрушечное самообучение
"""

from ..diffcore import cross_entropy
from .classify import (
    ablate_formulations,
    attribute_accuracy,
    eval_generalization,
    run_classify,
    sweep_margin,
    train_classifier,
)
from .config import (
    ClassifyConfig,
    ConvergeConfig,
    DcorrConfig,
    ImputeConfig,
    PicaConfig,
    SslConfig,
    SweepConfig,
)
from .converge import impute_mutual, run_converge
from .knn import knn_eval, knn_predict
from .models import ClassifierHead, LinearAe, PicaReport
from .pca import jacobi_eigh, pca_svd
from .pica import pattern_error, run_nlpica, run_pca_svd, run_pica, run_pica_method
from .service import ExperimentOutcome, ExperimentService
from .ssl_toy import invariance_mse, train_ssl_toy

__all__ = [
    'ClassifierHead',
    'ClassifyConfig',
    'ConvergeConfig',
    'DcorrConfig',
    'ExperimentOutcome',
    'ExperimentService',
    'ImputeConfig',
    'LinearAe',
    'PicaConfig',
    'PicaReport',
    'SslConfig',
    'SweepConfig',
    'ablate_formulations',
    'attribute_accuracy',
    'cross_entropy',
    'eval_generalization',
    'impute_mutual',
    'invariance_mse',
    'jacobi_eigh',
    'knn_eval',
    'knn_predict',
    'pattern_error',
    'pca_svd',
    'run_classify',
    'run_converge',
    'run_nlpica',
    'run_pca_svd',
    'run_pica',
    'run_pica_method',
    'sweep_margin',
    'train_classifier',
    'train_ssl_toy',
]
