"""Command-line experiment runner: run | sweep | validate.

Exit codes: 0 success, 2 configuration error, 3 physics/validity error,
4 numerical error.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import sys
from pathlib import Path

from .config import ExperimentConfig, load_config, parse_number
from .errors import (
    ConfigError,
    ConfigurationError,
    CyclicityError,
    ModelError,
    NumericalError,
    SamplingError,
    ValidityError,
)
from .runner import run_to_directory, validate_config, write_json

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_PHYSICS = 3
EXIT_NUMERICAL = 4


def _exit_code_for(exc: Exception) -> int:
    if isinstance(exc, ConfigError):
        return EXIT_CONFIG
    if isinstance(exc, (ConfigurationError, ModelError, ValidityError, CyclicityError, SamplingError)):
        return EXIT_PHYSICS
    if isinstance(exc, NumericalError):
        return EXIT_NUMERICAL
    raise exc


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="aagates",
        description="Simulate geometric pi-pulse gate experiments from a config file.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", required=True, help="experiment config file")
        p.add_argument("--out-dir", default=None, help="output directory (overrides [output] dir)")
        p.add_argument("--dt", default=None, help="integrator step in fs (overrides [integrator])")
        p.add_argument("--jobs", type=int, default=1, help="parallel sub-runs for sweep")
        p.add_argument("--quiet", action="store_true", help="suppress progress output")

    run_p = sub.add_parser("run", help="execute one configured experiment")
    common(run_p)

    sweep_p = sub.add_parser("sweep", help="run a grid over one config parameter")
    common(sweep_p)
    sweep_p.add_argument("--param", required=True, help="parameter as section.key, e.g. model.detuning")
    sweep_p.add_argument("--values", default=None, help="comma-separated grid values")
    sweep_p.add_argument("--min", dest="vmin", default=None, help="grid start (with --max/--points)")
    sweep_p.add_argument("--max", dest="vmax", default=None, help="grid end")
    sweep_p.add_argument("--points", type=int, default=None, help="grid size")

    val_p = sub.add_parser("validate", help="check a config without running it")
    common(val_p)
    return parser


def _load_with_overrides(args) -> ExperimentConfig:
    cfg = load_config(args.config)
    if args.dt is not None:
        cfg.sections.setdefault("integrator", {})["dt"] = args.dt
    if args.out_dir is not None:
        cfg.sections.setdefault("output", {})["dir"] = args.out_dir
    return cfg


def _cmd_run(args) -> int:
    cfg = _load_with_overrides(args)
    validate_config(cfg, quiet=True)
    run_to_directory(cfg, cfg.output_dir, quiet=args.quiet)
    return EXIT_OK


def _sweep_grid(args) -> list[float]:
    if args.values is not None:
        return [parse_number(v) for v in args.values.split(",") if v.strip()]
    if args.vmin is None or args.vmax is None or args.points is None:
        raise ConfigError("sweep needs either --values or --min/--max/--points")
    lo, hi, n = parse_number(args.vmin), parse_number(args.vmax), args.points
    if n < 1:
        raise ConfigError("--points must be >= 1")
    if n == 1:
        return [lo]
    return [lo + (hi - lo) * k / (n - 1) for k in range(n)]


def _run_sweep_point(config_path: str, section: str, key: str, value: float,
                     point_dir: str, dt: str | None) -> dict:
    cfg = load_config(config_path)
    cfg.sections.setdefault(section, {})[key] = repr(value)
    if dt is not None:
        cfg.sections.setdefault("integrator", {})["dt"] = dt
    manifest = run_to_directory(cfg, Path(point_dir), quiet=True)
    import json

    report = json.loads((Path(point_dir) / "report.json").read_text())
    return {"value": value, "report": report, "manifest": manifest}


_SUMMARY_FIELDS = ("fidelity", "leakage", "gamma_loop", "population_transfer",
                   "measured_rabi", "max_leakage")


def _cmd_sweep(args) -> int:
    cfg = _load_with_overrides(args)
    validate_config(cfg, quiet=True)
    if "." not in args.param:
        raise ConfigError(f"--param must be section.key, got {args.param!r}")
    section, key = args.param.split(".", 1)
    if section not in cfg.sections and section not in ("model", "sequence", "target", "integrator"):
        raise ConfigError(f"unknown config section {section!r}")
    grid = _sweep_grid(args)
    out_root = cfg.output_dir
    out_root.mkdir(parents=True, exist_ok=True)

    tasks = [
        (str(cfg.path), section, key, value, str(out_root / f"point_{k:03d}"), args.dt)
        for k, value in enumerate(grid)
    ]
    results: list[dict | None] = [None] * len(tasks)
    failure: Exception | None = None
    if args.jobs > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=args.jobs) as pool:
            futures = {pool.submit(_run_sweep_point, *t): k for k, t in enumerate(tasks)}
            for fut in concurrent.futures.as_completed(futures):
                k = futures[fut]
                try:
                    results[k] = fut.result()
                except Exception as exc:  # noqa: BLE001 - mapped to exit codes
                    failure = exc
                    break
    else:
        for k, t in enumerate(tasks):
            try:
                results[k] = _run_sweep_point(*t)
            except Exception as exc:  # noqa: BLE001
                failure = exc
                break

    completed = [r for r in results if r is not None]
    lines = ["value," + ",".join(_SUMMARY_FIELDS)]
    for r in completed:
        rep = r["report"]
        row = [format(r["value"], ".17g")]
        for f in _SUMMARY_FIELDS:
            v = rep.get(f)
            row.append("" if v is None else format(v, ".17g"))
        lines.append(",".join(row))
    (out_root / "summary.csv").write_text("\n".join(lines) + "\n", encoding="utf-8")
    write_json(
        {
            "parameter": args.param,
            "grid": grid,
            "completed_points": len(completed),
            "aborted": failure is not None,
            "error": str(failure) if failure else None,
        },
        out_root / "sweep_manifest.json",
    )
    if failure is not None:
        if not args.quiet:
            print(f"sweep aborted after {len(completed)} points: {failure}", file=sys.stderr)
        return _exit_code_for(failure)
    if not args.quiet:
        print(f"wrote {out_root}/summary.csv ({len(completed)} points)")
    return EXIT_OK


def _cmd_validate(args) -> int:
    cfg = _load_with_overrides(args)
    warnings = validate_config(cfg, quiet=args.quiet)
    if not args.quiet:
        print(f"OK ({len(warnings)} warning(s))")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    handlers = {"run": _cmd_run, "sweep": _cmd_sweep, "validate": _cmd_validate}
    try:
        return handlers[args.command](args)
    except Exception as exc:  # noqa: BLE001 - single funnel to exit codes
        try:
            code = _exit_code_for(exc)
        except Exception:
            raise exc from None
        print(f"error: {exc}", file=sys.stderr)
        return code


if __name__ == "__main__":
    sys.exit(main())
