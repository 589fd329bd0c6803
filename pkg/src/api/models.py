# src/api/models.py
from typing import Optional

from pydantic import BaseModel, Field


class DcorrIn(BaseModel):
    """Два вектора одинаковой длины (или матрицы с одинаковым числом строк)."""

    x: list[float] | list[list[float]]
    y: list[float] | list[list[float]]


class SummaryIn(BaseModel):
    z: list[list[float]] = Field(..., min_length=4)


class PcaIn(BaseModel):
    x: list[list[float]] = Field(..., min_length=2)
    d: int = Field(2, ge=1)


class RunListItem(BaseModel):
    run_id: str
    experiment: str
    seed: Optional[int] = None
