"""Command-line interface: `rwfit fit` and `rwfit simulate`.

Exit codes: 0 success, 1 input/output or configuration error, 2 fit failure.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

import pandas as pd
from pydantic import ValidationError

from .. import __version__
from ..distribution import Sample
from ..errors import RwFitError, SampleError
from ..estimation import EstimationPipeline, Method
from ..simulation import SimConfig, best_methods, render_tables, run
from .plotdata import plot_data, write_plot_data
from .readers import expand_grouped, read_grouped_csv, read_raw_csv
from .report import InputDescriptor, build_fit_report, write_report

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_IO = 1
EXIT_FIT = 2

_GROUPED_HELP = (
    "Grouped files have header lower,upper,frequency. Integer-age classes such as "
    "5-14, 15-24 are given with real boundaries 4.5,14.5 and 14.5,24.5 so classes "
    "are contiguous; each class contributes its midpoint frequency times."
)


def _configure_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    )


# =============================================================================
# FIT
# =============================================================================

def _load_sample(path: str, fmt: str) -> Sample:
    if fmt == "grouped":
        return expand_grouped(read_grouped_csv(path), source=path)
    return read_raw_csv(path)


def _summary_table(report) -> str:
    rows = [
        {"method": r.method.value, "delta": r.delta, "beta": r.beta, "gamma": r.gamma,
         "log_likelihood": r.log_likelihood, "ks": r.ks_statistic, "boundary_hit": r.boundary_hit}
        for r in report.results
    ]
    return pd.DataFrame(rows).to_string(index=False) if rows else "(no successful fits)"


def cmd_fit(args: argparse.Namespace) -> int:
    try:
        s = _load_sample(args.input, args.format)
    except (OSError, SampleError) as e:
        logger.error(f"Cannot read {args.input}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO
    if args.negate:
        s = s.negated()

    methods: List[Method] = list(Method) if args.method == "all" else [Method.parse(args.method)]
    outcome = EstimationPipeline().run(s, methods)
    for method, message in outcome.failures.items():
        print(f"error: {method.value}: {message}", file=sys.stderr)

    report = build_fit_report(
        s,
        outcome,
        InputDescriptor(path=args.input, format=args.format, negated=args.negate, n=s.n, bin_width=s.bin_width),
        args.method.upper(),
    )
    try:
        if args.output:
            write_report(report, args.output)
        else:
            print(report.model_dump_json(indent=2))
        if args.plot_data and outcome.results:
            write_plot_data(plot_data(s, outcome.results), args.plot_data)
    except OSError as e:
        logger.error(f"Cannot write output: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO

    if args.output:
        print(_summary_table(report))
    return EXIT_FIT if outcome.failures else EXIT_OK


# =============================================================================
# SIMULATE
# =============================================================================

def _flag_overrides(args: argparse.Namespace) -> Dict[str, Any]:
    overrides = {
        "delta_values": args.delta_values,
        "n_values": args.n_values,
        "replications": args.replications,
        "methods": args.methods,
        "beta_true": args.beta_true,
        "gamma_true": args.gamma_true,
        "base_seed": args.base_seed,
        "workers": args.workers,
    }
    return {k: v for k, v in overrides.items() if v is not None}


def load_sim_config(path: Optional[str], overrides: Dict[str, Any]) -> SimConfig:
    """SimConfig from an optional JSON document, then flag overrides.

    Raises:
        OSError: If the document cannot be read
        ValidationError: On invalid fields
    """
    document: Dict[str, Any] = {}
    if path:
        document = json.loads(Path(path).read_text(encoding="utf-8"))
        if not isinstance(document, dict):
            raise ValueError(f"{path}: expected a JSON object")
    document.update(overrides)
    return SimConfig.model_validate(document)


def _format_validation_error(e: ValidationError) -> str:
    return "; ".join(f"{'.'.join(str(p) for p in err['loc']) or 'config'}: {err['msg']}" for err in e.errors())


def cmd_simulate(args: argparse.Namespace) -> int:
    try:
        config = load_sim_config(args.config, _flag_overrides(args))
    except ValidationError as e:
        message = _format_validation_error(e)
        logger.error(f"Invalid simulation config: {message}")
        print(f"error: invalid config: {message}", file=sys.stderr)
        return EXIT_IO
    except (OSError, ValueError) as e:
        logger.error(f"Cannot load simulation config: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO

    effective = config.model_dump_json(indent=2)
    logger.info(f"Effective config:\n{effective}")

    report = run(config)
    table = render_tables(report, "text")
    findings = best_methods(report).to_string(index=False)

    output = Path(args.output)
    try:
        output.write_text(render_tables(report, "csv"), encoding="utf-8")
        output.with_suffix(".txt").write_text(
            f"{table}\n\nSmallest joint RMSE per cell:\n{findings}\n", encoding="utf-8"
        )
        output.with_suffix(".config.json").write_text(effective, encoding="utf-8")
    except OSError as e:
        logger.error(f"Cannot write output: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO
    logger.info(f"Wrote {len(report.cells)} cells to {output}")
    print(table)
    return EXIT_OK


# =============================================================================
# ENTRY POINT
# =============================================================================

def _float_list(text: str) -> List[float]:
    return [float(v) for v in text.split(",") if v.strip()]


def _int_list(text: str) -> List[int]:
    return [int(v) for v in text.split(",") if v.strip()]


def _str_list(text: str) -> List[str]:
    return [v.strip() for v in text.split(",") if v.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rwfit",
        description="Fit the three-parameter reflected Weibull distribution and compare estimators.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="Debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    fit = sub.add_parser("fit", help="Fit a data file", epilog=_GROUPED_HELP)
    fit.add_argument("--input", required=True, help="CSV file")
    fit.add_argument("--format", choices=["raw", "grouped"], default="raw", help="raw (default) or grouped")
    fit.add_argument("--method", choices=["mle", "mme", "lspfe", "all"], default="all", type=str.lower)
    fit.add_argument("--negate", action="store_true", help="Multiply the data by -1 (Weibull-form inputs)")
    fit.add_argument("--output", help="FitReport JSON path (default: stdout)")
    fit.add_argument("--plot-data", help="CSV of empirical and fitted curves")
    fit.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS, help="Debug logging")
    fit.set_defaults(handler=cmd_fit)

    sim = sub.add_parser("simulate", help="Monte Carlo comparison of the estimators")
    sim.add_argument("--config", help="SimConfig JSON document")
    sim.add_argument("--output", required=True, help="CSV path; .txt table and .config.json written alongside")
    sim.add_argument("--delta-values", type=_float_list, help="Comma-separated true shapes")
    sim.add_argument("--n-values", type=_int_list, help="Comma-separated sample sizes")
    sim.add_argument("--replications", type=int)
    sim.add_argument("--methods", type=_str_list, help="Comma-separated subset of mle,mme,lspfe")
    sim.add_argument("--beta-true", type=float)
    sim.add_argument("--gamma-true", type=float)
    sim.add_argument("--base-seed", type=int, help="Overrides $RWFIT_SEED")
    sim.add_argument("--workers", type=int)
    sim.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS, help="Debug logging")
    sim.set_defaults(handler=cmd_simulate)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    _configure_logging(getattr(args, "verbose", False))
    try:
        return args.handler(args)
    except (RwFitError, ArithmeticError) as e:
        logger.error(str(e))
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FIT


if __name__ == "__main__":
    sys.exit(main())
