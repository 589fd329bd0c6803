# tests/test_synthgen.py
import csv

import numpy as np
import pytest

from src.errors import ConfigError, DimensionError
from src.synthgen import (
    DatasetSource,
    GaussianSource,
    LabeledDataset,
    PairwiseNotMutualSource,
    PicaSource,
    ShapesWorld,
    export_dataset_csv,
    gen_correlated_gaussian,
    gen_pairwise_not_mutual,
    gen_pica_observations,
    gen_quadratic_pair,
    gen_shapes_dataset,
    make_rng,
)


def test_make_rng_streams_are_reproducible_and_distinct():
    a = make_rng(7, "encoder_batches").normal(size=5)
    b = make_rng(7, "encoder_batches").normal(size=5)
    c = make_rng(7, "predictor_batches").normal(size=5)
    np.testing.assert_array_equal(a, b)
    assert not np.allclose(a, c)


def test_generators_are_pure_functions_of_seed():
    np.testing.assert_array_equal(gen_quadratic_pair(64, seed=3), gen_quadratic_pair(64, seed=3))
    assert not np.array_equal(gen_quadratic_pair(64, seed=3), gen_quadratic_pair(64, seed=4))


def test_quadratic_pair_relation():
    z = gen_quadratic_pair(100, a=2.0, seed=0)
    np.testing.assert_allclose(z[:, 1], z[:, 0] ** 2)
    assert np.all(np.abs(z[:, 0]) <= 2.0)


def test_generators_reject_small_n():
    with pytest.raises(ConfigError):
        gen_quadratic_pair(3)
    with pytest.raises(ConfigError):
        gen_quadratic_pair(10, a=0.0)


def test_pairwise_not_mutual_is_sum_mod_one():
    z = gen_pairwise_not_mutual(500, seed=2)
    np.testing.assert_allclose(z[:, 2], np.mod(z[:, 0] + z[:, 1], 1.0))
    assert np.all((z >= 0.0) & (z < 1.0))


def test_pairwise_source_matches_generator():
    from_source = PairwiseNotMutualSource().sample(64, make_rng(4, "pairwise_not_mutual")).x
    np.testing.assert_array_equal(from_source, gen_pairwise_not_mutual(64, seed=4))


def test_pica_observations_variances():
    v, x = gen_pica_observations(200_000, seed=0)
    assert v.shape == (200_000, 2)
    np.testing.assert_allclose(x.var(axis=0), [25.0, 4.5, 1.0], rtol=0.03)
    corr = np.corrcoef(x, rowvar=False)
    assert np.max(np.abs(corr[np.triu_indices(3, k=1)])) < 0.02


def test_correlated_gaussian_shape_and_correlation():
    x = gen_correlated_gaussian(5000, m=8, seed=0)
    assert x.shape == (5000, 8)
    corr = np.corrcoef(x, rowvar=False)
    assert np.max(np.abs(corr[np.triu_indices(8, k=1)])) > 0.1


def test_gaussian_source_shares_mixing_with_generator():
    source = GaussianSource(m=4, seed=5)
    batch = source.sample(10, make_rng(0, "any"))
    assert batch.x.shape == (10, 4)
    with pytest.raises(ConfigError):
        GaussianSource(m=1)


def test_pica_source_puts_latents_in_extras():
    batch = PicaSource().sample(16, make_rng(0))
    assert batch.x.shape == (16, 3)
    np.testing.assert_allclose(batch.x[:, 0], 5.0 * batch.extras["latents"][:, 0])


def test_dataset_source_samples_rows_with_labels():
    features = np.arange(20.0).reshape(10, 2)
    labels = np.arange(10)
    batch = DatasetSource(features, labels).sample(6, make_rng(1))
    np.testing.assert_array_equal(batch.x[:, 0] / 2, batch.labels)
    assert len(set(batch.extras["index"].tolist())) == 6

    big = DatasetSource(features).sample(25, make_rng(1))
    assert big.x.shape == (25, 2)


def test_dataset_source_rejects_mismatched_labels():
    with pytest.raises(ConfigError):
        DatasetSource(np.zeros((4, 2)), np.zeros(3))


def test_shapes_dataset_splits_and_labels():
    ds = gen_shapes_dataset(n_per_class=20, seed=1)
    train = ds.subset("train")
    heldout = ds.subset("heldout")
    survey = ds.subset("survey")

    assert len(train) == 60 and len(heldout) == 20 and len(survey) == 120
    assert set(train.label.tolist()) == {0, 1, 2}
    assert np.all(heldout.label == -1)
    # неувиденная комбинация - только красный треугольник
    assert np.all(heldout.shape == 1) and np.all(heldout.color == 0)
    assert not np.any((train.shape == 1) & (train.color == 0))
    assert len({(int(s), int(c)) for s, c in zip(survey.shape, survey.color)}) == 6
    assert ds.embed_dim == 16


def test_shapes_dataset_reproducible():
    a = gen_shapes_dataset(n_per_class=10, seed=4)
    b = gen_shapes_dataset(n_per_class=10, seed=4)
    np.testing.assert_array_equal(a.features, b.features)


def test_shapes_world_validation():
    with pytest.raises(ConfigError):
        ShapesWorld(embed_dim=4)
    with pytest.raises(ConfigError):
        ShapesWorld(noise_sigma=-1.0)


def test_shape_signal_is_weaker_than_color():
    survey = gen_shapes_dataset(n_per_class=200, seed=0).subset("survey")

    def centroid(mask):
        return survey.features[mask].mean(axis=0)

    shape_gap = np.linalg.norm(centroid(survey.shape == 0) - centroid(survey.shape == 1))
    color_gaps = [
        np.linalg.norm(centroid(survey.color == a) - centroid(survey.color == b))
        for a, b in ((0, 1), (0, 2), (1, 2))
    ]
    assert shape_gap < 0.5 * np.mean(color_gaps)


def test_shapes_world_noise_free_render_is_deterministic_in_latents():
    world = ShapesWorld(noise_sigma=0.0, seed=2)
    nuisance = np.zeros((3, world.n_nuisance))
    ids = np.array([0, 1, 1])
    colors = np.array([0, 1, 2])
    a = world.render_with_nuisance(ids, colors, nuisance, make_rng(0))
    b = world.render_with_nuisance(ids, colors, nuisance, make_rng(1))
    np.testing.assert_allclose(a, b)


def test_export_dataset_csv(tmp_path):
    ds = gen_shapes_dataset(n_per_class=3, embed_dim=8, seed=0)
    path = export_dataset_csv(ds, tmp_path / "shapes.csv")
    with path.open() as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == [f"f{j}" for j in range(8)] + ["shape", "color", "label", "split"]
    assert len(rows) == len(ds) + 1
    assert float(rows[1][0]) == ds.features[0, 0]
    assert rows[1][-1] == "train"


def test_invalid_seed_and_columns_raise_domain_errors():
    with pytest.raises(ConfigError):
        make_rng(-1)
    with pytest.raises(ConfigError):
        make_rng(0, -2)
    ds = gen_shapes_dataset(n_per_class=2, seed=0)
    with pytest.raises(ConfigError):
        ds.attribute("size")
    with pytest.raises(DimensionError):
        LabeledDataset(features=ds.features, shape=ds.shape[:-1], color=ds.color, label=ds.label, split=ds.split)
