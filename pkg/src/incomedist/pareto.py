"""Pareto tail: evaluation, log-log least squares, and maximum likelihood.

The top of the distribution follows P(x) = beta * x^(-alpha) (percent).
Two estimators are provided: ordinary least squares on the log-log binned
CCDF, and the closed-form maximum likelihood exponent
alpha = n / sum(ln(x_j / x_t)) over raw tail observations, with its
uncertainty taken from the width of the likelihood in alpha and beta fixed
by continuity with the Gompertz part: beta = x_t^alpha * exp(exp(A - B x_t)).
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq

from .binning import BinnedCCDF
from .errors import DomainError, InsufficientDataError
from .gompertz import GompertzParams, _linear_fit


@dataclass(frozen=True)
class ParetoParams:
    alpha: float
    beta: float

    def __post_init__(self):
        if self.alpha <= 0 or self.beta <= 0:
            raise ValueError("alpha and beta must be positive")


@dataclass(frozen=True)
class ParetoLsfFit:
    alpha: float
    beta: float
    correlation: float
    alpha_err: float = 0.0  # filled by bootstrap when requested
    beta_err: float = 0.0
    n_points: int = 0


@dataclass(frozen=True)
class ParetoMleFit:
    alpha: float
    alpha_err: float
    beta: float
    beta_err: float
    tail_count: float  # effective number of observations used
    diverging_mean: bool  # alpha <= 1: model mean does not converge


@dataclass(frozen=True)
class ParetoFit:
    """Combined tail fit: both estimators plus the region bookkeeping."""

    lsf: ParetoLsfFit
    mle: ParetoMleFit
    x_pmin: float
    tail_count: float
    tail_fraction: float  # percent of the population in the tail


def pareto_ccdf(params: ParetoParams, x):
    """P(x) = beta * x^(-alpha), percent; x must be positive."""
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise DomainError("pareto_ccdf requires x > 0")
    out = params.beta * x ** (-params.alpha)
    return out if out.ndim else float(out)


def pareto_density(params: ParetoParams, x):
    """p(x) = alpha * beta * x^-(1+alpha) = -dP/dx."""
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise DomainError("pareto_density requires x > 0")
    out = params.alpha * params.beta * x ** (-(1.0 + params.alpha))
    return out if out.ndim else float(out)


def fit_pareto_lsf(ccdf: BinnedCCDF, x_pmin: float) -> ParetoLsfFit:
    """OLS on (ln x, ln F) over points with x >= x_pmin; slope gives -alpha."""
    keep = (ccdf.x >= x_pmin) & (ccdf.F > 0)
    if np.count_nonzero(keep) < 3:
        raise InsufficientDataError(
            f"need at least 3 tail points at x >= {x_pmin}, "
            f"got {np.count_nonzero(keep)}"
        )
    lx = np.log(ccdf.x[keep])
    lf = np.log(ccdf.F[keep])
    slope, intercept, r, se_slope, se_intercept = _linear_fit(lx, lf)
    return ParetoLsfFit(
        alpha=float(-slope),
        beta=float(math.exp(intercept)),
        correlation=float(r),
        alpha_err=float(se_slope),
        beta_err=float(math.exp(intercept) * se_intercept),
        n_points=int(np.count_nonzero(keep)),
    )


def beta_from_continuity(alpha: float, x_t: float, gomp: GompertzParams) -> float:
    """beta = x_t^alpha * exp(exp(A - B*x_t)): ties the tail to the bulk."""
    return x_t**alpha * math.exp(math.exp(gomp.A - gomp.B * x_t))


def _alpha_moments(n: float, s: float, max_moment: int = 2):
    """Posterior-style moments of alpha from the likelihood width.

    The likelihood in alpha is proportional to alpha^n * exp(-s*alpha) with
    s = sum(m_j * ln(x_j / x_t)); all other factors (including the
    exp(n*e^(A-Bx_t)) normalization constant) cancel in the moment ratios.
    Integrated over alpha in [1, inf) with the integrand shifted by its
    log-peak so it never underflows.
    """
    a_hat = n / s

    def log_kernel(a):
        return n * math.log(a) - s * a

    log_peak = log_kernel(max(a_hat, 1.0))

    def kernel(a, k):
        return math.exp(k * math.log(a) + log_kernel(a) - log_peak)

    # upper cutoff: where the base kernel drops 60 nats below its peak
    def deficit(a):
        return log_kernel(a) - log_peak + 60.0

    hi = max(a_hat, 1.0) * 2.0
    while deficit(hi) > 0:
        hi *= 2.0
    hi = brentq(deficit, max(a_hat, 1.0), hi)

    norm = quad(kernel, 1.0, hi, args=(0,), epsrel=1e-8, epsabs=0.0, limit=200)[0]
    moments = []
    for k in range(1, max_moment + 1):
        mk = quad(kernel, 1.0, hi, args=(k,), epsrel=1e-8, epsabs=0.0, limit=200)[0]
        moments.append(mk / norm)
    return moments


def fit_pareto_mle(
    x,
    multiplicity,
    x_t: float,
    gomp: GompertzParams,
    delta_x_t: float = 0.0,
) -> ParetoMleFit:
    """Closed-form MLE for alpha on raw tail values, with likelihood-width error.

    Multiplicities act as replication counts, so the unit-weight case is the
    plain sum over observations.  beta comes from the continuity requirement,
    and its error from first-order propagation through delta-alpha (plus the
    x_t term, in quadrature, when delta_x_t > 0).
    """
    x = np.asarray(x, dtype=float)
    m = (
        np.ones_like(x)
        if multiplicity is None
        else np.asarray(multiplicity, dtype=float)
    )
    if x_t <= 0:
        raise DomainError("x_t must be positive")
    if np.any(x < x_t):
        raise DomainError("all tail values must satisfy x >= x_t")
    n = float(m.sum())
    if n < 2:
        raise InsufficientDataError("effective tail size must be at least 2")
    s = float(np.sum(m * np.log(x / x_t)))
    if s == 0.0:
        raise DomainError("all tail values equal x_t: alpha is unbounded")
    alpha = n / s
    m1, m2 = _alpha_moments(n, s)
    alpha_err = math.sqrt(max(m2 - m1 * m1, 0.0))
    beta = beta_from_continuity(alpha, x_t, gomp)
    dbeta_dalpha = beta * math.log(x_t)
    beta_err_sq = (dbeta_dalpha * alpha_err) ** 2
    if delta_x_t > 0:
        dbeta_dxt = beta * (
            alpha / x_t - gomp.B * math.exp(gomp.A - gomp.B * x_t)
        )
        beta_err_sq += (dbeta_dxt * delta_x_t) ** 2
    return ParetoMleFit(
        alpha=alpha,
        alpha_err=alpha_err,
        beta=beta,
        beta_err=math.sqrt(beta_err_sq),
        tail_count=n,
        diverging_mean=alpha <= 1.0,
    )


def pareto_log_likelihood(alpha: float, x, multiplicity, x_t: float, gomp: GompertzParams) -> float:
    """Log-likelihood of the tail data for a given alpha (continuity beta).

    Provided so the closed-form estimate can be checked against a direct
    numerical maximization.
    """
    x = np.asarray(x, dtype=float)
    m = (
        np.ones_like(x)
        if multiplicity is None
        else np.asarray(multiplicity, dtype=float)
    )
    n = float(m.sum())
    e_t = math.exp(gomp.A - gomp.B * x_t)
    return (
        n * math.log(alpha)
        + n * alpha * math.log(x_t)
        + n * e_t
        - (1.0 + alpha) * float(np.sum(m * np.log(x)))
    )
