"""
Синтетические распределения и датасеты
"""

from .export import export_dataset_csv
from .generators import (
    gen_correlated_gaussian,
    gen_independent_uniform,
    gen_pairwise_not_mutual,
    gen_pica_observations,
    gen_quadratic_pair,
    mixing_matrix,
)
from .models import COLORS, HELDOUT_COMBINATION, SHAPES, TRAIN_CLASSES, Batch, LabeledDataset
from .rng import make_rng
from .shapes import ShapesWorld, gen_shapes_dataset
from .sources import DataSource, DatasetSource, GaussianSource, PairwiseNotMutualSource, PicaSource

__all__ = [
    'Batch',
    'COLORS',
    'DataSource',
    'DatasetSource',
    'GaussianSource',
    'HELDOUT_COMBINATION',
    'LabeledDataset',
    'PairwiseNotMutualSource',
    'PicaSource',
    'SHAPES',
    'ShapesWorld',
    'TRAIN_CLASSES',
    'export_dataset_csv',
    'gen_correlated_gaussian',
    'gen_independent_uniform',
    'gen_pairwise_not_mutual',
    'gen_pica_observations',
    'gen_quadratic_pair',
    'gen_shapes_dataset',
    'make_rng',
    'mixing_matrix',
]
