# tests/acceptance/test_acceptance_classify.py
import pytest

from src.apps import ClassifyConfig, SslConfig, ablate_formulations, run_classify, sweep_margin, train_ssl_toy
from src.apps.classify import shapes_dataset

pytestmark = pytest.mark.slow


@pytest.fixture(scope="module")
def dataset():
    return shapes_dataset(ClassifyConfig())


@pytest.fixture(scope="module")
def classify_pair(dataset):
    admin, _ = run_classify(ClassifyConfig(), dataset)
    baseline, _ = run_classify(ClassifyConfig(use_admin=False), dataset)
    return admin, baseline


def test_both_fit_training_classes(classify_pair):
    admin, baseline = classify_pair
    assert admin.train_accuracy >= 0.99
    assert baseline.train_accuracy >= 0.99


def test_adversarial_term_recovers_secondary_attribute(classify_pair):
    admin, baseline = classify_pair
    assert admin.generalization.attributes.shape >= baseline.generalization.attributes.shape + 0.20
    assert admin.mean_sq_dcorr < baseline.mean_sq_dcorr


def test_classify_rerun_is_byte_identical(classify_pair, dataset):
    again, _ = run_classify(ClassifyConfig(), dataset)
    assert again.model_dump_json() == classify_pair[0].model_dump_json()


def test_margin_sweep_has_interior_maximum():
    rows = sweep_margin([0.0, 0.1, 0.2, 0.4, 0.8, 1.6], ClassifyConfig())
    accuracy = [row.secondary_accuracy for row in rows]
    assert max(accuracy[1:-1]) > max(accuracy[0], accuracy[-1])


def test_ablation_structure():
    rows = {row.formulation: row for row in ablate_formulations(ClassifyConfig())}
    assert rows["standardized"].mean_sq_dcorr == min(r.mean_sq_dcorr for r in rows.values())
    assert rows["neither"].final_mean_norm > 5.0 * rows["margin"].final_mean_norm


def test_ssl_toy_recovers_both_attributes():
    _, _, report = train_ssl_toy(SslConfig())
    _, _, control = train_ssl_toy(SslConfig(task_weight=0.0))
    assert report.attributes.shape >= 0.85
    assert report.attributes.color >= 0.85
    assert control.mean_sq_dcorr > report.mean_sq_dcorr
