# src/api/router.py
import logging

import numpy as np
from fastapi import APIRouter, Depends, Request, status
from fastapi.responses import JSONResponse

from ..apps.pca import pca_svd
from ..apps.service import ExperimentService
from ..depmetrics import corr_summary, dcorr, pearson
from ..errors import DimensionError
from ..utils.validators import require_matrix
from .api_response import APIResponse, error_response
from .models import DcorrIn, PcaIn, RunListItem, SummaryIn

logger = logging.getLogger(__name__)

metrics_router = APIRouter(prefix="/metrics", tags=["metrics"])
runs_router = APIRouter(prefix="/runs", tags=["runs"])

MAX_ROWS = 8192


def get_experiment_service(request: Request) -> ExperimentService:
    # один сервис на приложение; создаётся лениво, чтобы тесты могли подменить его заранее
    service = getattr(request.app.state, "experiment_service", None)
    if service is None:
        service = ExperimentService()
        request.app.state.experiment_service = service
    return service


def _rows(matrix: np.ndarray, name: str) -> np.ndarray:
    if matrix.shape[0] > MAX_ROWS:
        raise DimensionError(f"{name}: at most {MAX_ROWS} rows supported", {"name": name, "rows": int(matrix.shape[0])})
    return matrix


# 1. POST /metrics/dcorr - dCor(x, y) и, для векторов, Пирсон
@metrics_router.post("/dcorr", response_model=APIResponse)
def metrics_dcorr(body: DcorrIn) -> APIResponse:
    x = _rows(require_matrix(body.x, min_rows=2, name="x"), "x")
    y = _rows(require_matrix(body.y, min_rows=2, name="y"), "y")
    data = {"n": int(x.shape[0]), "dcorr": dcorr(x, y)}
    if x.shape[1] == 1 and y.shape[1] == 1:
        data["pearson"] = pearson(x[:, 0], y[:, 0])
    return APIResponse(ok=True, data=data)


# 2. POST /metrics/summary - CorrSummary представления
@metrics_router.post("/summary", response_model=APIResponse)
def metrics_summary(body: SummaryIn) -> APIResponse:
    z = _rows(require_matrix(body.z, min_rows=4, min_cols=2, name="z"), "z")
    return APIResponse(ok=True, data=corr_summary(z).model_dump())


# 3. POST /metrics/pca - главные направления через собственный решатель Якоби
@metrics_router.post("/pca", response_model=APIResponse)
def metrics_pca(body: PcaIn) -> APIResponse:
    x = require_matrix(body.x, min_rows=2, name="x")
    w, explained = pca_svd(x, body.d)
    return APIResponse(ok=True, data={"components": w.tolist(), "explained_variance": explained})


# 4. GET /runs - сохранённые прогоны
@runs_router.get("", response_model=APIResponse)
def list_runs(service: ExperimentService = Depends(get_experiment_service)) -> APIResponse:
    items = [
        RunListItem(run_id=r.run_id, experiment=r.experiment, seed=r.config.get("seed")).model_dump()
        for r in service.list()
    ]
    return APIResponse(ok=True, data={"runs": items, "total": len(items)})


# 5. GET /runs/{run_id} - запись результата целиком
@runs_router.get("/{run_id}", response_model=APIResponse)
def get_run(run_id: str, service: ExperimentService = Depends(get_experiment_service)):
    record = service.get(run_id)
    if record is None:
        return JSONResponse(
            status_code=status.HTTP_404_NOT_FOUND,
            content=error_response("not_found", "Run not found", {"run_id": run_id}),
        )
    return APIResponse(ok=True, data=record.model_dump(mode="json"))
