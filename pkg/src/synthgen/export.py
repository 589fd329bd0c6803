# src/synthgen/export.py
import csv
import logging
from pathlib import Path
from typing import Union

from ..utils.formatters import format_float
from .models import LabeledDataset

logger = logging.getLogger(__name__)


def dataset_header(dataset: LabeledDataset) -> list[str]:
    return [f"f{j}" for j in range(dataset.embed_dim)] + ["shape", "color", "label", "split"]


def export_dataset_csv(dataset: LabeledDataset, path: Union[str, Path]) -> Path:
    """CSV: f0..f{m-1}, shape, color, label, split; числа в кратчайшем repr."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)

    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(dataset_header(dataset))
        for i in range(len(dataset)):
            writer.writerow(
                [format_float(v) for v in dataset.features[i]]
                + [
                    int(dataset.shape[i]),
                    int(dataset.color[i]),
                    int(dataset.label[i]),
                    str(dataset.split[i]),
                ]
            )

    logger.info("Dataset exported: %s (%d rows)", path, len(dataset))
    return path
