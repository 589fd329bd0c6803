# src/apps/knn.py

"""Взвешенный kNN по косинусной близости на замороженных признаках."""

from __future__ import annotations

import numpy as np

from ..errors import ConfigError, DimensionError

DEFAULT_K = 20
_CHUNK = 2048


def _unit_rows(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    norms = np.linalg.norm(x, axis=1, keepdims=True)
    return x / np.where(norms > 0.0, norms, 1.0)


def knn_predict(
    train_feats: np.ndarray,
    train_labels: np.ndarray,
    query_feats: np.ndarray,
    k: int = DEFAULT_K,
) -> np.ndarray:
    train_labels = np.asarray(train_labels, dtype=np.int64)
    if train_feats.ndim != 2 or query_feats.ndim != 2 or train_feats.shape[1] != query_feats.shape[1]:
        raise DimensionError(
            "train and query features must share a width",
            {"train": list(train_feats.shape), "query": list(query_feats.shape)},
        )
    if train_labels.shape != (train_feats.shape[0],):
        raise DimensionError("one train label per train row is required")
    if k < 1 or k > train_feats.shape[0]:
        raise ConfigError("k must lie in [1, train size]", {"k": k, "train_size": int(train_feats.shape[0])})

    bank = _unit_rows(train_feats)
    queries = _unit_rows(query_feats)
    n_classes = int(train_labels.max()) + 1
    predictions = np.empty(queries.shape[0], dtype=np.int64)

    for start in range(0, queries.shape[0], _CHUNK):
        sims = queries[start:start + _CHUNK] @ bank.T
        top = np.argsort(-sims, axis=1, kind="stable")[:, :k]
        top_sims = np.take_along_axis(sims, top, axis=1)
        votes = np.zeros((sims.shape[0], n_classes))
        rows = np.repeat(np.arange(sims.shape[0]), k)
        np.add.at(votes, (rows, train_labels[top].ravel()), top_sims.ravel())
        predictions[start:start + sims.shape[0]] = np.argmax(votes, axis=1)
    return predictions


def knn_eval(
    train_feats: np.ndarray,
    train_labels: np.ndarray,
    query_feats: np.ndarray,
    query_labels: np.ndarray,
    k: int = DEFAULT_K,
) -> float:
    """Top-1 точность взвешенного kNN на query."""
    predictions = knn_predict(train_feats, train_labels, query_feats, k)
    return float(np.mean(predictions == np.asarray(query_labels)))
