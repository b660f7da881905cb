"""Logarithmic bin grid and empirical complementary cumulative distribution.

The grid follows the geometric rule x_j = ratio^(j-1) * x_min (default
ratio 1.1), which damps tail fluctuations before least-squares fitting.
The CCDF is expressed in percent: F(x) is the share of individuals whose
income is >= x, so F(0) = 100 and F decreases to 0.
"""

from dataclasses import dataclass

import numpy as np

from .ingest import NormalizedSample


@dataclass(frozen=True)
class LogBinGrid:
    x_min: float
    ratio: float
    abscissae: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "abscissae", np.asarray(self.abscissae, dtype=float))

    def __len__(self):
        return len(self.abscissae)


@dataclass(frozen=True)
class BinnedCCDF:
    """CCDF evaluated on ordered abscissae; F in percent, non-increasing."""

    x: np.ndarray
    F: np.ndarray
    population: float

    def __post_init__(self):
        object.__setattr__(self, "x", np.asarray(self.x, dtype=float))
        object.__setattr__(self, "F", np.asarray(self.F, dtype=float))
        if self.x.shape != self.F.shape:
            raise ValueError("x and F must be parallel arrays")

    def cumulative(self) -> np.ndarray:
        """The complement 100 - F (share with income below x)."""
        return 100.0 - self.F


def build_log_bins(x_min: float, ratio: float = 1.1, x_max: float = None) -> LogBinGrid:
    """Geometric abscissae from x_min up to the first point >= x_max."""
    if x_min <= 0:
        raise ValueError("x_min must be positive")
    if ratio <= 1:
        raise ValueError("ratio must exceed 1")
    if x_max is None or x_max <= x_min:
        raise ValueError("x_max must exceed x_min")
    # smallest n with x_min * ratio^(n-1) >= x_max
    n = int(np.ceil(np.log(x_max / x_min) / np.log(ratio))) + 1
    abscissae = x_min * ratio ** np.arange(n)
    while abscissae[-1] < x_max:  # guard against log round-off
        abscissae = np.append(abscissae, abscissae[-1] * ratio)
    while n > 1 and abscissae[-2] >= x_max:
        abscissae = abscissae[:-1]
        n -= 1
    return LogBinGrid(x_min=x_min, ratio=ratio, abscissae=abscissae)


def empirical_ccdf(sample: NormalizedSample, grid: LogBinGrid) -> BinnedCCDF:
    """Weighted share (percent) of individuals with income >= each abscissa.

    Uses exact weighted counts at the grid points; the grid only chooses
    where the CCDF is evaluated, it introduces no binning approximation.
    """
    if len(grid) == 0:
        raise ValueError("empty grid")
    if len(sample.x) == 0:
        raise ValueError("empty sample")
    order = np.argsort(sample.x)
    xs = sample.x[order]
    ms = sample.multiplicity[order]
    below = np.concatenate(([0.0], np.cumsum(ms)))  # mass strictly before index
    idx = np.searchsorted(xs, grid.abscissae, side="left")
    tail_mass = below[-1] - below[idx]
    F = 100.0 * tail_mass / sample.total_population
    return BinnedCCDF(x=grid.abscissae.copy(), F=F, population=sample.total_population)


def default_grid(sample: NormalizedSample, x_min: float = 0.01, ratio: float = 1.1) -> LogBinGrid:
    """Grid spanning from x_min to the sample maximum."""
    x_max = float(sample.x.max())
    if x_max <= x_min:
        raise ValueError("sample maximum does not exceed x_min")
    return build_log_bins(x_min, ratio, x_max)
