# tests/acceptance/test_acceptance_pica.py
import numpy as np
import pytest

from src.apps import PicaConfig, run_pica_method

pytestmark = pytest.mark.slow

SELECT_X1_X3 = np.array([[1.0, 0.0], [0.0, 0.0], [0.0, 1.0]])


@pytest.fixture(scope="module")
def reports():
    return {
        method: run_pica_method(PicaConfig(method=method, seed=7)).report
        for method in ("pca_svd", "pca_linear_pred", "pica_nonlinear")
    }


def test_pca_svd_explained_variance(reports):
    report = reports["pca_svd"]
    assert 28.5 <= report.explained_variance <= 30.5
    assert sorted(report.selected_axes) == [0, 1]


def test_linear_predictor_keeps_pca_solution(reports):
    report = reports["pca_linear_pred"]
    assert sorted(report.selected_axes) == [0, 1]
    assert 0.20 <= report.dcorr_z <= 0.30
    assert 28.5 <= report.explained_variance <= 30.5


def test_nonlinear_predictor_selects_independent_axes(reports):
    report = reports["pica_nonlinear"]
    assert sorted(report.selected_axes) == [0, 2]
    abs_w = np.asarray(report.abs_w)
    if report.selected_axes[0] == 2:
        abs_w = abs_w[:, ::-1]
    assert np.max(np.abs(abs_w - SELECT_X1_X3)) <= 0.05
    assert 4.16 <= report.reconstruction_mse <= 4.76
    assert report.dcorr_z <= 0.05
    assert 25.0 <= report.explained_variance <= 27.0


def test_independent_solution_explains_less_than_pca(reports):
    gap = reports["pca_svd"].explained_variance - reports["pica_nonlinear"].explained_variance
    assert gap > 1.0


def test_rerun_is_byte_identical(reports):
    again = run_pica_method(PicaConfig(method="pica_nonlinear", seed=7)).report
    assert again.model_dump_json() == reports["pica_nonlinear"].model_dump_json()
