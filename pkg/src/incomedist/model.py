"""Two-class income distribution model and synthetic sampling.

The complementary cumulative distribution is pieced together from a
Gompertz bulk G(x) for 0 <= x < x_t and a Pareto tail P(x) for x >= x_t.
Continuity (G(x_t) = P(x_t)) fixes beta once (A, B, alpha, x_t) are known,
and the model mean follows from a quadrature over the bulk plus the
closed-form tail integral, which converges only when alpha > 1.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .errors import DegenerateSampleError, MeanDivergenceError
from .gompertz import GompertzParams, gompertz_ccdf, gompertz_density
from .ingest import NormalizedSample
from .pareto import (
    ParetoParams,
    beta_from_continuity,
    pareto_ccdf,
    pareto_density,
)


@dataclass(frozen=True)
class TwoClassModel:
    gomp: GompertzParams
    par: ParetoParams
    x_t: float
    delta_x_t: float = 0.0

    def __post_init__(self):
        if self.x_t <= 0:
            raise ValueError("x_t must be positive")
        if self.delta_x_t < 0:
            raise ValueError("delta_x_t must be nonnegative")

    @classmethod
    def from_continuity(cls, gomp: GompertzParams, alpha: float, x_t: float, delta_x_t: float = 0.0):
        """Build the model with beta set by the continuity constraint."""
        beta = beta_from_continuity(alpha, x_t, gomp)
        return cls(gomp=gomp, par=ParetoParams(alpha=alpha, beta=beta), x_t=x_t, delta_x_t=delta_x_t)

    @property
    def tail_probability(self) -> float:
        """Percent of the population in the Pareto region: P(x_t)."""
        return pareto_ccdf(self.par, self.x_t)


def transition_income(x_gmax: float, x_pmin: float) -> tuple[float, float]:
    """Midpoint and half-width between the end of the Gompertz region and
    the start of the Pareto region; both collapse to x_pmin when equal."""
    if x_pmin < x_gmax:
        raise ValueError("x_pmin must be >= x_gmax")
    return 0.5 * (x_pmin + x_gmax), 0.5 * (x_pmin - x_gmax)


def model_ccdf(model: TwoClassModel, x):
    """Piecewise F(x): Gompertz below x_t, Pareto from x_t up."""
    x = np.asarray(x, dtype=float)
    out = np.where(
        x < model.x_t,
        gompertz_ccdf(model.gomp, x),
        pareto_ccdf(model.par, np.maximum(x, model.x_t)),
    )
    return out if out.ndim else float(out)


def model_density(model: TwoClassModel, x):
    """Piecewise f(x) = -dF/dx."""
    x = np.asarray(x, dtype=float)
    out = np.where(
        x < model.x_t,
        gompertz_density(model.gomp, x),
        pareto_density(model.par, np.maximum(x, model.x_t)),
    )
    return out if out.ndim else float(out)


def continuity_residual(model: TwoClassModel) -> float:
    """(G(x_t) - P(x_t)) / P(x_t); zero when beta obeys the constraint."""
    g = gompertz_ccdf(model.gomp, model.x_t)
    p = pareto_ccdf(model.par, model.x_t)
    return (g - p) / p


def bulk_mean_integral(gomp: GompertzParams, x_t: float) -> float:
    """Integral of w*g(w) over [0, x_t], by adaptive quadrature."""
    value, _ = quad(
        lambda w: w * gompertz_density(gomp, w),
        0.0,
        x_t,
        epsabs=1e-10,
        epsrel=0.0,
        limit=200,
    )
    return value


def mean_income(model: TwoClassModel) -> float:
    """Model mean: (bulk quadrature + closed-form Pareto tail term) / 100."""
    alpha, beta = model.par.alpha, model.par.beta
    if alpha <= 1.0:
        raise MeanDivergenceError(
            f"mean diverges for alpha = {alpha} (needs alpha > 1)"
        )
    tail = alpha * beta / (alpha - 1.0) * model.x_t ** (1.0 - alpha)
    return (bulk_mean_integral(model.gomp, model.x_t) + tail) / 100.0


def population_shares(sample: NormalizedSample, x_t: float) -> tuple[float, float]:
    """Weighted percent of individuals below x_t and at/above x_t."""
    total = sample.total_population
    tail = float(sample.multiplicity[sample.x >= x_t].sum())
    pareto_pct = 100.0 * tail / total
    return 100.0 - pareto_pct, pareto_pct


def income_shares(sample: NormalizedSample, x_t: float) -> tuple[float, float]:
    """Percent of total income held below x_t and at/above x_t."""
    weighted = sample.x * sample.multiplicity
    total = float(weighted.sum())
    if total <= 0:
        raise DegenerateSampleError("sample has zero total income")
    tail = float(weighted[sample.x >= x_t].sum())
    pareto_pct = 100.0 * tail / total
    return 100.0 - pareto_pct, pareto_pct


def sample_model(model: TwoClassModel, count: int, seed: int) -> NormalizedSample:
    """Draw incomes from the model by inverting the piecewise CCDF.

    u is uniform on (0, 100]; draws with u above the branch point
    F = G(x_t) = P(x_t) land in the Gompertz bulk and invert
    x = (A - ln ln u)/B, the rest invert the Pareto tail x = (beta/u)^(1/alpha).
    Ties at the branch point go to the tail.  Deterministic per (seed, count);
    parallel callers must partition the index range and spawn per-partition
    substreams from numpy.random.SeedSequence(seed).
    """
    if count < 1:
        raise ValueError("count must be at least 1")
    rng = np.random.default_rng(seed)
    u = 100.0 * (1.0 - rng.random(count))  # uniform on (0, 100]
    branch = gompertz_ccdf(model.gomp, model.x_t)
    bulk = u > branch
    x = np.empty(count, dtype=float)
    # When A < ln(ln 100), G(0) < 100 and the topmost u would invert to
    # negative incomes; that boundary-condition mismatch mass sits at x = 0.
    x[bulk] = np.maximum((model.gomp.A - np.log(np.log(u[bulk]))) / model.gomp.B, 0.0)
    x[~bulk] = (model.par.beta / u[~bulk]) ** (1.0 / model.par.alpha)
    return NormalizedSample(
        x=x,
        multiplicity=np.ones(count),
        mean_income_raw=1.0,
    )
