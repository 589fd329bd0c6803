# tests/test_cli.py
import json

import pytest

from src.cli import load_config_file, main, parse_overrides
from src.errors import ConfigError


def _run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_dcorr_generator_json(capsys, out_dir):
    code, out, _ = _run(capsys, "dcorr", "--gen", "quadratic", "--n", "1024", "--seed", "1", "--json", "--out", str(out_dir))
    assert code == 0
    record = json.loads(out)
    assert record["experiment"] == "dcorr"
    assert record["config"]["seed"] == 1 and record["config"]["n"] == 1024
    assert record["metrics"]["dcorr"] == pytest.approx(0.4912, abs=0.05)
    assert record["metrics"]["source"] == "generator:quadratic"
    assert (out_dir / record["run_id"] / "result.json").is_file()
    assert (out_dir / record["run_id"] / "meta.json").is_file()


def test_same_command_gives_identical_result_bytes(capsys, tmp_path):
    paths = []
    for name in ("a", "b"):
        code, out, _ = _run(capsys, "dcorr", "--gen", "pairwise-not-mutual", "--n", "256", "--json", "--out", str(tmp_path / name))
        assert code == 0
        paths.append(tmp_path / name / json.loads(out)["run_id"] / "result.json")
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_dcorr_summary_line(capsys, out_dir):
    code, out, _ = _run(capsys, "dcorr", "--gen", "independent", "--n", "128", "--out", str(out_dir))
    assert code == 0
    assert out.startswith("dcorr [generator:independent] mean|rho|=")
    assert "run_id=dcorr-0-" in out


def test_dcorr_csv_input(capsys, tmp_path, out_dir):
    path = tmp_path / "data.csv"
    path.write_text("a,b\n" + "\n".join(f"{i},{(i * 7) % 5}" for i in range(10)) + "\n")
    code, out, _ = _run(capsys, "dcorr", "--input", str(path), "--json", "--out", str(out_dir))
    assert code == 0
    record = json.loads(out)
    assert record["metrics"]["n"] == 10
    assert record["metrics"]["source"] == f"csv:{path}"


def test_dcorr_empty_file_exits_2(capsys, tmp_path, out_dir):
    path = tmp_path / "empty.csv"
    path.write_text("")
    code, _, err = _run(capsys, "dcorr", "--input", str(path), "--out", str(out_dir))
    assert code == 2
    assert "error:" in err


def test_dcorr_malformed_line_is_named(capsys, tmp_path, out_dir):
    path = tmp_path / "bad.csv"
    path.write_text("1,2\n3,4\n5,oops\n7,8\n")
    code, out, err = _run(capsys, "dcorr", "--input", str(path), "--json", "--out", str(out_dir))
    assert code == 2
    assert "line 3" in err
    envelope = json.loads(out)
    assert envelope["ok"] is False
    assert envelope["error"]["code"] == "data_format_error"
    assert envelope["error"]["details"]["line"] == 3


def test_pica_bogus_method_is_usage_error(capsys):
    code, _, err = _run(capsys, "pica", "--method", "bogus")
    assert code == 2
    assert "invalid choice" in err


def test_pica_svd_writes_scatter(capsys, out_dir):
    code, out, _ = _run(
        capsys, "pica", "--method", "pca-svd", "--set", "eval_samples=5000", "--set", "dcorr_samples=200",
        "--json", "--out", str(out_dir),
    )
    assert code == 0
    record = json.loads(out)
    assert record["metrics"]["method"] == "pca_svd"
    assert record["metrics"]["selected_axes"] == [0, 1]
    scatter = (out_dir / record["run_id"] / "scatter.csv").read_text().splitlines()
    assert scatter[0] == "z1,z2,v1,v2"


def test_unknown_override_key_exits_2(capsys, out_dir):
    code, out, _ = _run(capsys, "converge", "--set", "lamda=2", "--json", "--out", str(out_dir))
    assert code == 2
    assert json.loads(out)["error"]["code"] == "config_error"


def test_flags_win_over_overrides_and_config_file(capsys, tmp_path, out_dir):
    cfg_file = tmp_path / "converge.cfg"
    cfg_file.write_text("# small run\nsteps = 9\nbatch_size=16\ndcorr_samples=32\neval_samples=64\nencoder_hidden=8\n")
    code, out, _ = _run(
        capsys, "converge", "--config", str(cfg_file), "--set", "steps=7", "--steps", "4", "--d", "3",
        "--json", "--out", str(out_dir),
    )
    assert code == 0
    record = json.loads(out)
    assert record["config"]["steps"] == 4
    assert record["config"]["embed_dim"] == 3
    assert record["config"]["batch_size"] == 16
    runlog = (out_dir / record["run_id"] / "runlog.csv").read_text().splitlines()
    assert len(runlog) == 1 + 4


def test_divergence_exits_3(capsys, out_dir):
    code, out, _ = _run(
        capsys, "converge", "--steps", "3", "--set", "encoder_lr=1e300", "--set", "batch_size=16",
        "--set", "dcorr_samples=32", "--set", "eval_samples=64", "--json", "--out", str(out_dir),
    )
    assert code == 3
    assert json.loads(out)["error"]["code"] == "training_divergence"


def test_schema_command(capsys):
    code, out, _ = _run(capsys, "schema")
    assert code == 0
    schema = json.loads(out)
    assert set(schema["required"]) >= {"experiment", "run_id"}


def test_help_exits_0(capsys):
    assert main(["--help"]) == 0


def test_parse_overrides_values():
    values = parse_overrides(["margin=0.2", "use-admin=false", "alphas=[0, 0.4]", "formulation=margin"])
    assert values == {"margin": 0.2, "use_admin": False, "alphas": [0, 0.4], "formulation": "margin"}
    with pytest.raises(ConfigError):
        parse_overrides(["novalue"])


def test_load_config_file_names_bad_line(tmp_path):
    path = tmp_path / "bad.cfg"
    path.write_text("steps=3\n\nnot an assignment\n")
    with pytest.raises(ConfigError) as exc:
        load_config_file(str(path))
    assert exc.value.details["line"] == 3
