"""Bootstrap resampling for fit-parameter uncertainties.

Resamples raw weighted observations with replacement (probability
proportional to multiplicity), applies an arbitrary fitter to each
resample, and reports per-parameter mean and standard deviation.
Resample i always uses the i-th child of SeedSequence(seed), so results
are reproducible and independent of any parallelism in the caller.
"""

from dataclasses import dataclass

import numpy as np

from .errors import BootstrapFailureError
from .ingest import NormalizedSample


@dataclass(frozen=True)
class BootstrapResult:
    estimates: np.ndarray  # shape (successes, n_params)
    mean: np.ndarray
    std: np.ndarray
    resamples: int
    seed: int
    failures: int


def bootstrap_fit(
    sample: NormalizedSample,
    fitter,
    resamples: int = 1000,
    seed: int = 0,
    max_resample_size: int = 1_000_000,
) -> BootstrapResult:
    """Resample the sample and collect fitter outputs.

    Each resample has unit multiplicities and size equal to the rounded
    total population, capped at max_resample_size to bound runtime.
    The fitter maps a NormalizedSample to a parameter vector; resamples on
    which it raises are counted as failures and excluded, and more than 50%
    failures abort the run.
    """
    if len(sample.x) == 0:
        raise ValueError("empty sample")
    if resamples < 1:
        raise ValueError("resamples must be at least 1")
    size = int(min(round(sample.total_population), max_resample_size))
    size = max(size, 1)
    prob = sample.multiplicity / sample.multiplicity.sum()
    uniform = np.allclose(prob, prob[0])
    children = np.random.SeedSequence(seed).spawn(resamples)

    estimates = []
    failures = 0
    for child in children:
        rng = np.random.default_rng(child)
        if uniform:
            idx = rng.integers(0, len(sample.x), size=size)
        else:
            idx = rng.choice(len(sample.x), size=size, p=prob)
        resample = NormalizedSample(
            x=sample.x[idx],
            multiplicity=np.ones(size),
            mean_income_raw=sample.mean_income_raw,
        )
        try:
            estimates.append(np.atleast_1d(np.asarray(fitter(resample), dtype=float)))
        except Exception:
            failures += 1
    if failures > resamples // 2:
        raise BootstrapFailureError(
            f"fitter failed on {failures} of {resamples} resamples"
        )
    stacked = np.vstack(estimates)
    return BootstrapResult(
        estimates=stacked,
        mean=stacked.mean(axis=0),
        std=stacked.std(axis=0, ddof=1) if len(stacked) > 1 else np.zeros(stacked.shape[1]),
        resamples=resamples,
        seed=seed,
        failures=failures,
    )
