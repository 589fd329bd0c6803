# src/cli/main.py

"""
admin-lab: командная строка экспериментов.

    python main.py dcorr --gen quadratic --n 4096 --seed 1
    python main.py pica --method pica-nonlinear --seed 7
    python main.py converge --steps 5000 --d 4
    python main.py sweep-margin --alphas 0,0.1,0.2,0.4,0.8,1.6

Коды выхода: 0 - успех, 2 - ошибка использования/конфига/данных,
3 - численный сбой (расходимость обучения, не сошёлся собственный решатель).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Any, Optional, Sequence

from ..apps.service import ExperimentOutcome, ExperimentService
from ..errors import (
    AdminLabError,
    EvaluationError,
    NumericError,
    TrainingDivergenceError,
)
from ..logging_config import configure_logging
from ..storage import FileResultRepository, ResultRecord, repository_from_settings
from ..utils.formatters import format_corr_summary, format_metrics_line
from .config import build_cli_config

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERIC = 3

PICA_METHODS = ["pca-svd", "pca-covreg", "pca-linear-pred", "pica-nonlinear", "nlpica"]


# ─────────────────────────────────────
# Разбор аргументов
# ─────────────────────────────────────

def _u64(raw: str) -> int:
    try:
        value = int(raw)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {raw!r}")
    if value < 0 or value >= 2**64:
        raise argparse.ArgumentTypeError(f"seed out of range: {value}")
    return value


def _alphas(raw: str) -> list[float]:
    try:
        return [float(part) for part in raw.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {raw!r}")


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", default=None, help="output directory (default: ADMIN_LAB_OUT_DIR)")
    parser.add_argument("--seed", type=_u64, default=None)
    parser.add_argument("--json", action="store_true", help="print the result record as JSON on stdout")
    parser.add_argument("--config", default=None, help="plain-text key=value config file")
    parser.add_argument("--set", dest="set_items", action="append", default=[], metavar="KEY=VALUE")
    parser.add_argument("--log-level", default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="admin-lab", description="Adversarial dependence minimization experiments")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dcorr", help="Pearson and distance correlation summary of a matrix")
    _common(p)
    source = p.add_mutually_exclusive_group()
    source.add_argument("--gen", dest="generator",
                        choices=["quadratic", "pairwise-not-mutual", "independent", "pica", "gaussian"])
    source.add_argument("--input", default=None, help="numeric CSV file")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--a", type=float, default=None)

    p = sub.add_parser("pica", help="PCA / PICA / NLPICA on the 3-dimensional observation set")
    _common(p)
    p.add_argument("--method", choices=PICA_METHODS, default=None)
    p.add_argument("--steps", type=int, default=None)

    p = sub.add_parser("converge", help="convergence study of the adversarial game")
    _common(p)
    p.add_argument("--steps", type=int, default=None)
    p.add_argument("--d", dest="embed_dim", type=int, default=None)

    p = sub.add_parser("classify", help="shapes classification with or without the adversarial term")
    _common(p)
    p.add_argument("--steps", type=int, default=None)
    p.add_argument("--baseline", action="store_true", help="train without the adversarial term")

    p = sub.add_parser("ssl", help="toy self-supervised run on two noisy views")
    _common(p)
    p.add_argument("--steps", type=int, default=None)

    p = sub.add_parser("sweep-margin", help="secondary-attribute accuracy across margins")
    _common(p)
    p.add_argument("--alphas", type=_alphas, default=None)
    p.add_argument("--steps", type=int, default=None)

    p = sub.add_parser("ablate", help="standardized / margin / raw formulation table")
    _common(p)
    p.add_argument("--steps", type=int, default=None)

    p = sub.add_parser("impute", help="impute one variable of the pairwise-not-mutual triple")
    _common(p)
    p.add_argument("--steps", type=int, default=None)

    sub.add_parser("schema", help="print the result record JSON schema")

    p = sub.add_parser("serve", help="run the HTTP metrics/results service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--log-level", default=None)

    return parser


def _flags(args: argparse.Namespace) -> dict[str, Any]:
    flags: dict[str, Any] = {}
    for name in ("generator", "input", "n", "a", "steps", "embed_dim", "alphas"):
        if hasattr(args, name):
            flags[name] = getattr(args, name)
    if getattr(args, "method", None):
        flags["method"] = args.method.replace("-", "_")
    if getattr(args, "baseline", False):
        flags["use_admin"] = False
    return flags


# ─────────────────────────────────────
# Вывод
# ─────────────────────────────────────

def _record_json(record: ResultRecord) -> str:
    return json.dumps(record.model_dump(mode="json"), sort_keys=True, indent=2)


def _summary_line(record: ResultRecord) -> str:
    metrics = record.metrics
    if record.experiment == "dcorr":
        line = f"dcorr [{metrics.get('source')}] {format_corr_summary(metrics.get('summary', {}))}"
        if "dcorr" in metrics:
            line += f" dcorr(x,y)={metrics['dcorr']:.4f}"
        return line
    if "rows" in metrics:
        return f"{record.experiment}: {len(metrics['rows'])} rows"
    return format_metrics_line(record.experiment, metrics)


def _emit_error(exc: AdminLabError, as_json: bool) -> None:
    print(f"error: {exc.message}", file=sys.stderr)
    if as_json:
        print(json.dumps({"ok": False, "error": exc.to_dict()}, sort_keys=True, default=str))


def exit_code_for(exc: AdminLabError) -> int:
    if isinstance(exc, (TrainingDivergenceError, NumericError, EvaluationError)):
        return EXIT_NUMERIC
    return EXIT_USAGE


def _serve(args: argparse.Namespace) -> int:
    import uvicorn

    uvicorn.run("src.api.app:app", host=args.host, port=args.port, log_level=(args.log_level or "info").lower())
    return EXIT_OK


# ─────────────────────────────────────
# Точка входа
# ─────────────────────────────────────

def run_command(args: argparse.Namespace, service: Optional[ExperimentService] = None) -> ExperimentOutcome:
    cli_cfg = build_cli_config(args.command, args.out, args.seed, args.config, args.set_items)
    if service is None:
        repository = FileResultRepository(cli_cfg.out_dir) if cli_cfg.out_dir else repository_from_settings()
        service = ExperimentService(repository)
    config = service.config_for(args.command, cli_cfg.layered(_flags(args)))
    return service.run(args.command, config)


def main(argv: Optional[Sequence[str]] = None, service: Optional[ExperimentService] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_USAGE

    as_json = getattr(args, "json", False)
    try:
        configure_logging(getattr(args, "log_level", None))

        if args.command == "schema":
            print(json.dumps(ResultRecord.model_json_schema(), sort_keys=True, indent=2))
            return EXIT_OK
        if args.command == "serve":
            return _serve(args)

        outcome = run_command(args, service)
    except AdminLabError as exc:
        if isinstance(exc, TrainingDivergenceError):
            logger.error("Training diverged: %s %s", exc.message, exc.details)
        _emit_error(exc, as_json)
        return exit_code_for(exc)

    record = outcome.record
    if as_json:
        print(_record_json(record))
    else:
        print(_summary_line(record))
        print(f"run_id={record.run_id}")
    return EXIT_OK
