# tests/test_imports.py
"""Публичные точки входа пакетов импортируются без побочных ошибок."""

import importlib

import pytest

PACKAGES = {
    "src.diffcore": ["Mlp", "DenseLayer", "optimizer_step", "grad_check"],
    "src.depmetrics": ["pearson", "dcorr", "corr_summary", "CorrSummary"],
    "src.synthgen": ["gen_quadratic_pair", "gen_pairwise_not_mutual", "gen_shapes_dataset"],
    "src.admin_game": ["AdminConfig", "RunLog", "admin_train", "build_config"],
    "src.apps": ["pca_svd", "run_pica_method", "run_classify", "train_ssl_toy", "ExperimentService"],
    "src.storage": ["ResultRecord", "FileResultRepository", "InMemoryResultRepository"],
    "src.cli": ["main", "build_parser"],
    "src.api": ["create_app", "APIResponse"],
}


@pytest.mark.parametrize("package", sorted(PACKAGES))
def test_package_exports(package):
    module = importlib.import_module(package)
    for name in PACKAGES[package]:
        assert hasattr(module, name), f"{package}.{name}"
        assert name in module.__all__
