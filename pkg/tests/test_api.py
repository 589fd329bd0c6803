# tests/test_api.py
import pytest
from fastapi.testclient import TestClient

from src.api import create_app
from src.api.api_response import admin_error_response
from src.apps.service import ExperimentService
from src.errors import ConfigError, DimensionError, NumericError, TrainingDivergenceError
from src.storage import InMemoryResultRepository


@pytest.fixture
def service() -> ExperimentService:
    return ExperimentService(InMemoryResultRepository())


@pytest.fixture
def client(service) -> TestClient:
    app = create_app()
    app.state.experiment_service = service
    return TestClient(app)


def test_health(client):
    resp = client.get("/health")
    assert resp.status_code == 200
    assert resp.json() == {"ok": True, "data": {"status": "ok"}, "error": None}


def test_dcorr_of_linear_vectors(client):
    x = [1.0, 2.0, 3.0, 4.0, 5.0, 6.0]
    resp = client.post("/metrics/dcorr", json={"x": x, "y": [2 * v + 1 for v in x]})
    assert resp.status_code == 200
    data = resp.json()["data"]
    assert data["n"] == 6
    assert data["dcorr"] == pytest.approx(1.0)
    assert data["pearson"] == pytest.approx(1.0)


def test_dcorr_of_matrices_has_no_pearson(client):
    x = [[0.0, 1.0], [1.0, 0.0], [2.0, 3.0], [3.0, 1.0], [4.0, 4.0]]
    y = [[0.5], [1.5], [2.0], [3.5], [4.0]]
    data = client.post("/metrics/dcorr", json={"x": x, "y": y}).json()["data"]
    assert "pearson" not in data
    assert 0.0 <= data["dcorr"] <= 1.0


def test_dcorr_length_mismatch_is_400(client):
    resp = client.post("/metrics/dcorr", json={"x": [1, 2, 3, 4, 5], "y": [1, 2, 3, 4]})
    assert resp.status_code == 400
    body = resp.json()
    assert body["ok"] is False
    assert body["error"]["code"] == "dimension_error"


def test_summary(client):
    z = [[1.0, 1.0], [2.0, -1.0], [3.0, 1.0], [4.0, -1.0], [5.0, 1.0], [6.0, -1.0]]
    data = client.post("/metrics/summary", json={"z": z}).json()["data"]
    assert len(data["per_dim_dcorr"]) == 2
    assert 0.0 <= data["mean_abs_offdiag_pearson"] <= 1.0


def test_summary_too_few_rows_is_422(client):
    resp = client.post("/metrics/summary", json={"z": [[1, 2], [3, 4], [5, 7]]})
    assert resp.status_code == 422
    assert resp.json()["error"]["code"] == "validation_error"


def test_pca_picks_high_variance_axis(client):
    x = [[2.0, 0.1], [-2.0, -0.1], [1.0, -0.2], [-1.0, 0.2], [3.0, 0.0], [-3.0, 0.0]]
    one = client.post("/metrics/pca", json={"x": x, "d": 1}).json()["data"]
    both = client.post("/metrics/pca", json={"x": x, "d": 2}).json()["data"]
    assert abs(one["components"][0][0]) == pytest.approx(1.0, abs=1e-2)
    assert both["explained_variance"] >= one["explained_variance"] > 0.0


def test_pca_d_larger_than_columns_is_400(client):
    resp = client.post("/metrics/pca", json={"x": [[1.0, 2.0], [3.0, 5.0], [4.0, 1.0]], "d": 3})
    assert resp.status_code == 400
    assert resp.json()["error"]["code"] == "config_error"


def test_runs_list_and_get(client, service):
    outcome = service.run("dcorr", {"generator": "independent", "n": 64, "seed": 5})
    run_id = outcome.record.run_id

    listing = client.get("/runs").json()["data"]
    assert listing["total"] == 1
    assert listing["runs"][0] == {"run_id": run_id, "experiment": "dcorr", "seed": 5}

    record = client.get(f"/runs/{run_id}").json()["data"]
    assert record["config"]["n"] == 64
    assert record["metrics"]["source"] == "generator:independent"


def test_unknown_run_is_404(client):
    resp = client.get("/runs/dcorr-0-deadbeef")
    assert resp.status_code == 404
    body = resp.json()
    assert body["error"]["code"] == "not_found"
    assert body["error"]["details"] == {"run_id": "dcorr-0-deadbeef"}


def test_unknown_path_is_404(client):
    resp = client.get("/nope")
    assert resp.status_code == 404
    assert resp.json()["error"]["details"] == {"path": "/nope"}


@pytest.mark.parametrize(
    "exc, status",
    [
        (DimensionError("bad shape", {"n": 3}), 400),
        (ConfigError("bad key"), 400),
        (TrainingDivergenceError("non-finite loss", {"step": 4}), 500),
        (NumericError("no convergence"), 500),
    ],
)
def test_admin_error_response_maps_domain_errors(exc, status):
    code, body = admin_error_response(exc)
    assert code == status
    assert body["ok"] is False and body["data"] is None
    assert body["error"] == {"code": exc.code, "message": exc.message, "details": exc.details}
