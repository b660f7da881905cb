"""End-to-end analysis pipeline and report assembly.

Order of stages: ingest -> normalize -> bin -> Gompertz fit -> transition ->
Pareto LSF + MLE -> bootstrap errors -> shares -> Lorenz/Gini -> report.
All outputs (one JSON report plus four plot-data CSVs) are written
atomically after every stage has succeeded.
"""

import json
import math
import os
from dataclasses import dataclass, field

import numpy as np
import pandas as pd

from . import __version__
from .binning import default_grid, empirical_ccdf
from .bootstrap import bootstrap_fit
from .gompertz import DEFAULT_F_FLOOR, fit_gompertz, gompertz_ccdf
from .inequality import gini, lorenz_curve
from .ingest import NormalizedSample, load_sample
from .model import (
    TwoClassModel,
    continuity_residual,
    income_shares,
    mean_income,
    population_shares,
    transition_income,
)
from .pareto import fit_pareto_lsf, fit_pareto_mle, pareto_ccdf


class StageError(Exception):
    """Pipeline failure tagged with the stage that caused it."""

    STAGE_EXIT_CODES = {
        "config": 2,
        "ingest": 3,
        "binning": 4,
        "gompertz": 5,
        "pareto": 6,
        "model": 7,
        "inequality": 8,
        "bootstrap": 9,
        "output": 10,
    }

    def __init__(self, stage, cause):
        self.stage = stage
        self.cause = cause
        super().__init__(f"[{stage}] {cause}")

    @property
    def exit_code(self):
        return self.STAGE_EXIT_CODES.get(self.stage, 1)


@dataclass
class PipelineConfig:
    input_path: str
    input_format: str = "household"  # household | aggregated
    x_min: float = 0.01
    bin_ratio: float = 1.1
    a_target: float = 1.5
    a_tol: float = 0.1
    x_pmin_override: float = None
    bootstrap_resamples: int = 1000
    bootstrap_max_resample_size: int = 1_000_000
    seed: int = None
    output_dir: str = "."
    label: str = ""

    def echo(self):
        return {
            "input_path": str(self.input_path),
            "input_format": self.input_format,
            "x_min": self.x_min,
            "bin_ratio": self.bin_ratio,
            "a_target": self.a_target,
            "a_tol": self.a_tol,
            "x_pmin_override": self.x_pmin_override,
            "bootstrap_resamples": self.bootstrap_resamples,
            "bootstrap_max_resample_size": self.bootstrap_max_resample_size,
            "label": self.label,
        }


@dataclass
class AnalysisReport:
    report: dict
    files: dict = field(default_factory=dict)  # name -> DataFrame

    def to_json(self) -> str:
        return json.dumps(self.report, indent=2, sort_keys=True) + "\n"


def _atomic_write_text(path, text):
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _atomic_write_csv(path, frame):
    parent = os.path.dirname(path)
    if parent:
        os.makedirs(parent, exist_ok=True)
    tmp = path + ".tmp"
    frame.to_csv(tmp, index=False, lineterminator="\n")
    os.replace(tmp, path)


def _stage(stage, fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except StageError:
        raise
    except Exception as exc:
        raise StageError(stage, exc) from exc


def _bootstrap_errors(sample, config, x_pmin_override, seed):
    """Bootstrap std of (A, B, alpha_lsf, beta_lsf) by refitting resamples."""

    def fitter(resample: NormalizedSample):
        ccdf = empirical_ccdf(
            resample, default_grid(resample, config.x_min, config.bin_ratio)
        )
        gfit = fit_gompertz(ccdf, config.a_target, config.a_tol)
        x_pmin = x_pmin_override if x_pmin_override is not None else gfit.x_gmax
        lsf = fit_pareto_lsf(ccdf, x_pmin)
        return [gfit.params.A, gfit.params.B, lsf.alpha, lsf.beta]

    return bootstrap_fit(
        sample,
        fitter,
        resamples=config.bootstrap_resamples,
        seed=seed,
        max_resample_size=config.bootstrap_max_resample_size,
    )


def run_pipeline(config: PipelineConfig) -> AnalysisReport:
    """Run the full analysis and return the report plus plot-data tables.

    Raises StageError on any failure; nothing is written by this function
    (see write_outputs).
    """
    if config.input_format not in ("household", "aggregated"):
        raise StageError("config", f"unknown input format {config.input_format!r}")
    seed = config.seed
    if seed is None:
        seed = int(np.random.SeedSequence().entropy % (2**63))

    sample = _stage("ingest", load_sample, config.input_path, config.input_format)
    grid = _stage("binning", default_grid, sample, config.x_min, config.bin_ratio)
    ccdf = _stage("binning", empirical_ccdf, sample, grid)

    gfit = _stage("gompertz", fit_gompertz, ccdf, config.a_target, config.a_tol)
    x_pmin = (
        config.x_pmin_override
        if config.x_pmin_override is not None
        else gfit.x_gmax
    )
    x_t, delta_x_t = _stage("model", transition_income, gfit.x_gmax, x_pmin)

    lsf = _stage("pareto", fit_pareto_lsf, ccdf, x_pmin)
    tail_mask = sample.x >= x_t
    mle = _stage(
        "pareto",
        fit_pareto_mle,
        sample.x[tail_mask],
        sample.multiplicity[tail_mask],
        x_t,
        gfit.params,
        delta_x_t,
    )

    if config.bootstrap_resamples > 0:
        boot = _stage("bootstrap", _bootstrap_errors, sample, config, config.x_pmin_override, seed)
        a_err, b_err, lsf_alpha_err, lsf_beta_err = (float(v) for v in boot.std)
        boot_failures = boot.failures
        gomp_err_method = lsf_err_method = "bootstrap"
    else:
        a_err, b_err = gfit.param_errors
        lsf_alpha_err, lsf_beta_err = lsf.alpha_err, lsf.beta_err
        boot_failures = 0
        gomp_err_method = lsf_err_method = "ols"

    two_class = _stage(
        "model", TwoClassModel.from_continuity, gfit.params, mle.alpha, x_t, delta_x_t
    )
    residual = _stage("model", continuity_residual, two_class)
    model_mean = _stage("model", mean_income, two_class) if mle.alpha > 1 else None
    pop_shares = _stage("model", population_shares, sample, x_t)
    inc_shares = _stage("model", income_shares, sample, x_t)

    curve = _stage("inequality", lorenz_curve, sample)
    gini_value = _stage("inequality", gini, curve)

    report = {
        "label": config.label,
        "tool_version": __version__,
        "seed": seed,
        "config": config.echo(),
        "sample": {
            "total_population": sample.total_population,
            "zero_income_population": sample.zero_income_population,
            "mean_income_raw": sample.mean_income_raw,
            "grid_points": len(grid),
        },
        "gompertz": {
            "A": gfit.params.A,
            "A_err": a_err,
            "B": gfit.params.B,
            "B_err": b_err,
            "error_method": gomp_err_method,
            "x_gmax": gfit.x_gmax,
            "correlation": gfit.correlation,
            "population_percent": gfit.population_fraction,
        },
        "pareto": {
            "x_pmin": x_pmin,
            "x_t": x_t,
            "delta_x_t": delta_x_t,
            "tail_count": mle.tail_count,
            "population_percent": pop_shares[1],
            "lsf": {
                "alpha": lsf.alpha,
                "alpha_err": lsf_alpha_err,
                "beta": lsf.beta,
                "beta_err": lsf_beta_err,
                "error_method": lsf_err_method,
                "correlation": lsf.correlation,
            },
            "mle": {
                "alpha": mle.alpha,
                "alpha_err": mle.alpha_err,
                "alpha_err_method": "likelihood-width",
                "beta": mle.beta,
                "beta_err": mle.beta_err,
                "beta_err_method": "propagation",
                "diverging_mean": mle.diverging_mean,
            },
        },
        "model": {
            "continuity_residual": residual,
            "mean_income": model_mean,
        },
        "shares": {
            "population": {"gompertz_percent": pop_shares[0], "pareto_percent": pop_shares[1]},
            "income": {"gompertz_percent": inc_shares[0], "pareto_percent": inc_shares[1]},
        },
        "inequality": {"gini": gini_value},
        "bootstrap": {
            "resamples": config.bootstrap_resamples,
            "failures": boot_failures,
        },
    }

    usable = (ccdf.x > 0) & (ccdf.F > DEFAULT_F_FLOOR) & (ccdf.x <= gfit.x_gmax)
    lin = pd.DataFrame(
        {
            "x": ccdf.x[usable],
            "lnlnF": np.log(np.log(ccdf.F[usable])),
            "fitted": gfit.params.A - gfit.params.B * ccdf.x[usable],
        }
    )
    tail = (ccdf.x >= x_pmin) & (ccdf.F > 0)
    tail_frame = pd.DataFrame(
        {
            "lnx": np.log(ccdf.x[tail]),
            "lnF": np.log(ccdf.F[tail]),
            "fitted_lsf": math.log(lsf.beta) - lsf.alpha * np.log(ccdf.x[tail]),
            "fitted_mle": math.log(mle.beta) - mle.alpha * np.log(ccdf.x[tail]),
        }
    )
    files = {
        "ccdf.csv": pd.DataFrame({"x": ccdf.x, "F_percent": ccdf.F}),
        "gompertz_linearized.csv": lin,
        "pareto_tail.csv": tail_frame,
        "lorenz.csv": pd.DataFrame({"p": curve.p, "L": curve.L}),
    }
    return AnalysisReport(report=report, files=files)


def write_outputs(result: AnalysisReport, output_dir: str):
    """Atomically write report.json and the plot-data CSVs."""
    try:
        os.makedirs(output_dir, exist_ok=True)
        _atomic_write_text(os.path.join(output_dir, "report.json"), result.to_json())
        for name, frame in result.files.items():
            _atomic_write_csv(os.path.join(output_dir, name), frame)
    except OSError as exc:
        raise StageError("output", exc) from exc
