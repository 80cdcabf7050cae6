"""Command-line entry point.

Subcommands: budget (noise-curve CSV), band (feasibility report JSON),
entangle (conditional-state + two-mirror EPR JSON), fig1 (EPR-pair
demonstration JSON), swap (entanglement-swap report JSON).

Exit codes: 0 success, 2 configuration error, 3 numeric failure. stderr
carries a single-line machine-parsable reason; stdout carries only data when
the output path is '-'.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import band, conditional, gaussian, jsonio, spectra
from .errors import ConfigError, EprOptomechError
from .params import InterferometerConfig, load_config

CONFIG_ENV_VAR = "EPR_OPTOMECH_CONFIG"

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="epr-optomech",
        description="Noise budget and entanglement feasibility of the dual-Michelson "
        "mirror-entanglement interferometer.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", metavar="PATH", default=None,
                       help=f"JSON config (falls back to ${CONFIG_ENV_VAR}, then defaults)")
        p.add_argument("--out", metavar="PATH", default="-",
                       help="output file, '-' for stdout (default)")
        p.add_argument("--format", choices=("csv", "json"), default=None,
                       help="output format (budget: csv default; reports: json only)")

    p_budget = sub.add_parser("budget", help="emit the noise-budget curves")
    common(p_budget)
    p_budget.add_argument("--fmin", type=float, default=10.0, metavar="HZ")
    p_budget.add_argument("--fmax", type=float, default=1e4, metavar="HZ")
    p_budget.add_argument("--ppd", type=int, default=60, metavar="N",
                          help="grid points per decade")

    p_band = sub.add_parser("band", help="emit the SQL-crossing/feasibility report")
    common(p_band)
    p_band.add_argument("--fmin", type=float, default=1.0, metavar="HZ")
    p_band.add_argument("--fmax", type=float, default=1e5, metavar="HZ")
    p_band.add_argument("--ppd", type=int, default=24, metavar="N")

    for name, helptext in (
        ("entangle", "emit conditional mirror states and the two-mirror EPR report"),
        ("fig1", "emit the EPR-pair demonstration state and report"),
        ("swap", "emit the entanglement-swapping report"),
    ):
        common(sub.add_parser(name, help=helptext))

    return parser


def _load_cli_config(path: str | None) -> InterferometerConfig:
    if path is None:
        path = os.environ.get(CONFIG_ENV_VAR) or None
    if path is None:
        return load_config("{}")
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path!r}: {exc}") from exc
    return load_config(text)


def _write(out: str, text: str) -> None:
    if out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _render(args: argparse.Namespace, cfg: InterferometerConfig) -> str:
    if args.subcommand == "budget":
        curves = spectra.budget(cfg, args.fmin, args.fmax, args.ppd)
        fmt = args.format or "csv"
        if fmt == "csv":
            return spectra.budget_to_csv(curves)
        return jsonio.dumps({
            "frequencies_hz": curves[0].frequencies.tolist(),
            "curves": {c.label: c.values.tolist() for c in curves},
        })

    if args.format == "csv":
        raise ConfigError(f"subcommand '{args.subcommand}' only supports JSON output")

    if args.subcommand == "band":
        report = band.analyze(cfg, args.fmin, args.fmax, args.ppd)
        return jsonio.dumps(report.to_json_dict())

    if args.subcommand == "entangle":
        common = conditional.steady_conditional_cov(conditional.build_model(cfg, "common"))
        diff = conditional.steady_conditional_cov(conditional.build_model(cfg, "differential"))
        state, report = conditional.two_mirror_state(common, diff)
        return jsonio.dumps({
            "common": common.to_json_dict(),
            "differential": diff.to_json_dict(),
            "two_mirror": {
                "state": state.to_json_dict(),
                "epr_report": report.to_json_dict(),
            },
        })

    if args.subcommand == "fig1":
        r = cfg.squeeze_parameter_r
        state = gaussian.epr_pair(r, r)
        report = gaussian.epr_report(state, 0, 1)
        return jsonio.dumps({
            "squeeze_parameter_r": r,
            "state": state.to_json_dict(),
            "epr_report": report.to_json_dict(),
        })

    if args.subcommand == "swap":
        r = cfg.squeeze_parameter_r
        report = gaussian.entanglement_swap(r, r)
        return jsonio.dumps({
            "squeeze_parameter_r": r,
            "epr_report": report.to_json_dict(),
        })

    raise ConfigError(f"unknown subcommand {args.subcommand!r}")


def run(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = _load_cli_config(args.config)
        text = _render(args, cfg)
    except ConfigError as exc:
        print(f"error: config: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except EprOptomechError as exc:
        print(f"error: numeric: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    try:
        _write(args.out, text)
    except OSError as exc:
        print(f"error: config: cannot write {args.out!r}: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
