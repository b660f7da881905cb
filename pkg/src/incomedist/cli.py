"""Command-line front end.

Subcommands:
  fit       full pipeline on a microdata file, emitting report.json and
            the four plot-data CSVs
  simulate  draw a synthetic sample from a two-class model into the
            pre-aggregated CSV format
  lorenz    Lorenz curve and Gini only
  bins      print the logarithmic bin grid
"""

import argparse
import json
import sys

import numpy as np
import pandas as pd

from . import __version__
from .binning import build_log_bins
from .gompertz import GompertzParams
from .inequality import gini, lorenz_curve
from .ingest import load_sample
from .model import TwoClassModel, sample_model
from .pipeline import (
    AnalysisReport,
    PipelineConfig,
    StageError,
    run_pipeline,
    write_outputs,
    _atomic_write_csv,
)


def _add_common_input(parser):
    parser.add_argument("--input", required=True, help="input CSV path")
    parser.add_argument(
        "--format",
        choices=["household", "aggregated"],
        default="household",
        help="input layout (default: household)",
    )


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="incomedist",
        description="Two-class (Gompertz + Pareto) income distribution analysis",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    fit = sub.add_parser("fit", help="run the full fitting pipeline")
    _add_common_input(fit)
    fit.add_argument("--x-min", type=float, default=0.01)
    fit.add_argument("--bin-ratio", type=float, default=1.1)
    fit.add_argument("--a-target", type=float, default=1.5)
    fit.add_argument("--a-tol", type=float, default=0.1)
    fit.add_argument("--x-pmin", type=float, default=None,
                     help="override the start of the Pareto region")
    fit.add_argument("--bootstrap", type=int, default=1000,
                     help="bootstrap resamples (0 disables, errors fall back to OLS)")
    fit.add_argument("--bootstrap-cap", type=int, default=1_000_000,
                     help="max entries per bootstrap resample")
    fit.add_argument("--seed", type=int, default=None)
    fit.add_argument("--out", default=".", help="output directory")
    fit.add_argument("--label", default="", help="free-form label echoed in the report")

    sim = sub.add_parser("simulate", help="sample a two-class model to CSV")
    sim.add_argument("--a", type=float, required=True, help="Gompertz intercept A")
    sim.add_argument("--b", type=float, required=True, help="Gompertz slope B")
    sim.add_argument("--alpha", type=float, required=True, help="Pareto index")
    sim.add_argument("--x-t", type=float, required=True, help="transition income")
    sim.add_argument("--count", type=int, required=True)
    sim.add_argument("--seed", type=int, default=None)
    sim.add_argument("--out", required=True, help="output CSV path")

    lor = sub.add_parser("lorenz", help="Lorenz curve and Gini only")
    _add_common_input(lor)
    lor.add_argument("--out", default=".", help="directory for lorenz.csv")

    bins = sub.add_parser("bins", help="print the logarithmic bin grid")
    bins.add_argument("--x-min", type=float, default=0.01)
    bins.add_argument("--bin-ratio", type=float, default=1.1)
    bins.add_argument("--x-max", type=float, required=True)
    return parser


def _cmd_fit(args) -> int:
    config = PipelineConfig(
        input_path=args.input,
        input_format=args.format,
        x_min=args.x_min,
        bin_ratio=args.bin_ratio,
        a_target=args.a_target,
        a_tol=args.a_tol,
        x_pmin_override=args.x_pmin,
        bootstrap_resamples=args.bootstrap,
        bootstrap_max_resample_size=args.bootstrap_cap,
        seed=args.seed,
        output_dir=args.out,
        label=args.label,
    )
    result = run_pipeline(config)
    write_outputs(result, args.out)
    return 0


def _cmd_simulate(args) -> int:
    seed = args.seed
    if seed is None:
        seed = int(np.random.SeedSequence().entropy % (2**63))
    model = TwoClassModel.from_continuity(
        GompertzParams(A=args.a, B=args.b), alpha=args.alpha, x_t=args.x_t
    )
    sample = sample_model(model, args.count, seed)
    frame = pd.DataFrame({"income": sample.x, "multiplicity": sample.multiplicity})
    try:
        _atomic_write_csv(args.out, frame)
    except OSError as exc:
        raise StageError("output", exc) from exc
    print(json.dumps({"count": args.count, "seed": seed, "out": args.out}))
    return 0


def _cmd_lorenz(args) -> int:
    try:
        sample = load_sample(args.input, args.format)
        curve = lorenz_curve(sample)
        g = gini(curve)
    except Exception as exc:
        raise StageError("inequality", exc) from exc
    result = AnalysisReport(
        report={}, files={"lorenz.csv": pd.DataFrame({"p": curve.p, "L": curve.L})}
    )
    import os

    os.makedirs(args.out, exist_ok=True)
    _atomic_write_csv(os.path.join(args.out, "lorenz.csv"), result.files["lorenz.csv"])
    print(json.dumps({"gini": g}))
    return 0


def _cmd_bins(args) -> int:
    try:
        grid = build_log_bins(args.x_min, args.bin_ratio, args.x_max)
    except ValueError as exc:
        raise StageError("binning", exc) from exc
    for value in grid.abscissae:
        print(repr(float(value)))
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    handler = {
        "fit": _cmd_fit,
        "simulate": _cmd_simulate,
        "lorenz": _cmd_lorenz,
        "bins": _cmd_bins,
    }[args.command]
    try:
        return handler(args)
    except StageError as exc:
        print(f"error {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
