# tests/test_storage.py
import json

import pytest

from src.admin_game import RunLog, StepRecord
from src.errors import DataFormatError
from src.storage import (
    FileResultRepository,
    InMemoryResultRepository,
    ResultRecord,
    make_run_id,
    repository_from_settings,
)
from src.settings import get_settings


def _record(run_id="dcorr-1-deadbeef", value=0.5) -> ResultRecord:
    return ResultRecord(experiment="dcorr", run_id=run_id, config={"seed": 1, "n": 64}, metrics={"dcorr": value})


def _runlog() -> RunLog:
    log = RunLog(config={"seed": 1})
    log.append(StepRecord(1, 1.5, -0.5, 0.0, 0.25, 2.0, 0.001))
    log.append_dcorr(1, 0.125)
    return log


def test_make_run_id_is_stable_and_order_independent():
    a = make_run_id("pica", 7, {"steps": 10, "method": "nlpica"})
    b = make_run_id("pica", 7, {"method": "nlpica", "steps": 10})
    assert a == b
    assert a.startswith("pica-7-") and len(a.split("-")[-1]) == 8
    assert make_run_id("pica", 7, {"steps": 11, "method": "nlpica"}) != a


def test_in_memory_repository_roundtrip():
    repo = InMemoryResultRepository()
    repo.save_result(_record("b-0-00000000"))
    repo.save_result(_record("a-0-00000000"))
    repo.save_rows("a-0-00000000", "sweep", ["alpha"], [[0.0], [0.4]])
    repo.save_runlog("a-0-00000000", _runlog())

    assert [r.run_id for r in repo.list_results()] == ["a-0-00000000", "b-0-00000000"]
    assert repo.get_result("missing") is None
    assert repo.get_rows("a-0-00000000", "sweep") == (["alpha"], [[0.0], [0.4]])
    assert len(repo.get_runlog("a-0-00000000").records) == 1


def test_in_memory_repository_returns_copies():
    repo = InMemoryResultRepository()
    repo.save_result(_record())
    fetched = repo.get_result("dcorr-1-deadbeef")
    fetched.metrics["dcorr"] = 99.0
    assert repo.get_result("dcorr-1-deadbeef").metrics["dcorr"] == 0.5


def test_file_repository_layout(tmp_path):
    repo = FileResultRepository(tmp_path)
    run_id = repo.save_result(_record())
    repo.save_runlog(run_id, _runlog())
    repo.save_rows(run_id, "scatter", ["z1", "z2"], [[0.1, 0.2]])
    repo.save_metadata(run_id, {"created_at": "2026-01-01T00:00:00+00:00"})

    run_dir = tmp_path / run_id
    assert {p.name for p in run_dir.iterdir()} == {
        "result.json", "runlog.csv", "runlog.json", "scatter.csv", "meta.json",
    }
    lines = (run_dir / "runlog.csv").read_text().splitlines()
    assert lines[0].startswith("step,predictor_loss,adversarial_loss")
    assert lines[1] == "1,1.5,-0.5,0.0,0.25,2.0,0.001,0.125"
    assert (run_dir / "scatter.csv").read_text() == "z1,z2\n0.1,0.2\n"

    payload = json.loads((run_dir / "result.json").read_text())
    assert "created_at" not in json.dumps(payload)
    assert repo.get_result(run_id) == _record()
    assert [r.run_id for r in repo.list_results()] == [run_id]


def test_file_repository_result_bytes_are_stable(tmp_path):
    a, b = FileResultRepository(tmp_path / "a"), FileResultRepository(tmp_path / "b")
    a.save_result(_record())
    b.save_result(_record())
    assert (tmp_path / "a" / "dcorr-1-deadbeef" / "result.json").read_bytes() == (
        tmp_path / "b" / "dcorr-1-deadbeef" / "result.json"
    ).read_bytes()


def test_file_repository_rejects_path_like_run_ids(tmp_path):
    repo = FileResultRepository(tmp_path)
    with pytest.raises(DataFormatError):
        repo.save_result(_record(run_id="../escape"))
    assert repo.get_result("../escape") is None
    assert repo.list_results() == []


def test_file_repository_skips_malformed_results(tmp_path):
    repo = FileResultRepository(tmp_path)
    (tmp_path / "broken").mkdir()
    (tmp_path / "broken" / "result.json").write_text('{"experiment": 1}')
    assert repo.list_results() == []


def test_repository_from_settings(monkeypatch, tmp_path):
    monkeypatch.setenv("ADMIN_LAB_RESULTS_BACKEND", "memory")
    get_settings.cache_clear()
    assert isinstance(repository_from_settings(), InMemoryResultRepository)

    monkeypatch.setenv("ADMIN_LAB_RESULTS_BACKEND", "file")
    monkeypatch.setenv("ADMIN_LAB_OUT_DIR", str(tmp_path / "results"))
    get_settings.cache_clear()
    repo = repository_from_settings()
    assert isinstance(repo, FileResultRepository)
    assert repo.out_dir == tmp_path / "results"
