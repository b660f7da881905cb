"""Lorenz curves and Gini coefficients for weighted samples."""

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateSampleError
from .ingest import NormalizedSample


@dataclass(frozen=True)
class LorenzCurve:
    """Piecewise-linear Lorenz curve vertices: population share p vs
    income share L, both in [0, 1], starting at (0, 0) and ending at (1, 1)."""

    p: np.ndarray
    L: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "p", np.asarray(self.p, dtype=float))
        object.__setattr__(self, "L", np.asarray(self.L, dtype=float))


def lorenz_curve(sample: NormalizedSample) -> LorenzCurve:
    """Cumulate population and income shares with entries sorted by income.

    Zero-income entries stay in the population count and produce the flat
    initial stretch of the curve.
    """
    order = np.argsort(sample.x, kind="stable")
    x = sample.x[order]
    m = sample.multiplicity[order]
    total_pop = m.sum()
    total_inc = float(np.sum(x * m))
    if total_inc <= 0:
        raise DegenerateSampleError("sample has zero total income")
    p = np.concatenate(([0.0], np.cumsum(m) / total_pop))
    L = np.concatenate(([0.0], np.cumsum(x * m) / total_inc))
    p[-1] = 1.0
    L[-1] = 1.0
    return LorenzCurve(p=p, L=L)


def gini(curve: LorenzCurve) -> float:
    """1 minus twice the trapezoid-rule area below the Lorenz curve.

    The curve is exactly piecewise linear between its vertices, so the
    trapezoid rule introduces no discretization error.
    """
    area = float(np.trapezoid(curve.L, curve.p))
    return 1.0 - 2.0 * area


def gini_of_sample(sample: NormalizedSample) -> float:
    return gini(lorenz_curve(sample))
