# src/depmetrics/models.py

from __future__ import annotations

from pydantic import BaseModel, Field


class CorrSummary(BaseModel):
    """
    Сводка зависимостей представления z [n × d].

    mean_abs_offdiag_pearson - среднее |ρ| по d(d−1)/2 неупорядоченным парам;
    per_dim_dcorr[i] - dCor(z_i, z_{−i});
    mean_sq_dcorr - среднее квадратов per_dim_dcorr.
    """

    mean_abs_offdiag_pearson: float = Field(..., ge=0.0, le=1.0)
    mean_sq_dcorr: float = Field(..., ge=0.0, le=1.0)
    per_dim_dcorr: list[float]
    degenerate: bool = False
    degenerate_columns: list[int] = Field(default_factory=list)
    n_samples: int
