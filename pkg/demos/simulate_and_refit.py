"""Estimator validation by round trip: sample a known model, refit it.

Run:  python3 demos/simulate_and_refit.py
"""

import numpy as np

import incomedist as idist

TRUE_A, TRUE_B, TRUE_ALPHA, TRUE_XT = 1.54, 0.39, 2.75, 6.5


def main():
    model = idist.TwoClassModel.from_continuity(
        idist.GompertzParams(A=TRUE_A, B=TRUE_B), alpha=TRUE_ALPHA, x_t=TRUE_XT
    )
    print(
        f"truth: A={TRUE_A} B={TRUE_B} alpha={TRUE_ALPHA} x_t={TRUE_XT} "
        f"(tail {model.tail_probability:.2f}%)"
    )

    sample = idist.sample_model(model, 1_000_000, seed=42)
    # refitting normalizes to unit mean, which rescales x and hence B
    scale = float(sample.x.mean())
    normalized = idist.NormalizedSample(
        x=sample.x / scale,
        multiplicity=sample.multiplicity,
        mean_income_raw=scale,
    )
    print(f"sample mean {scale:.4f}; after normalization truth B -> {TRUE_B * scale:.4f}")

    ccdf = idist.empirical_ccdf(normalized, idist.default_grid(normalized))
    gfit = idist.fit_gompertz(ccdf)
    x_t = gfit.x_gmax
    in_tail = normalized.x >= x_t
    mle = idist.fit_pareto_mle(
        normalized.x[in_tail], normalized.multiplicity[in_tail], x_t, gfit.params
    )

    print(f"recovered A     = {gfit.params.A:.4f}   (truth {TRUE_A})")
    print(f"recovered B     = {gfit.params.B:.4f}   (truth {TRUE_B * scale:.4f})")
    print(f"recovered alpha = {mle.alpha:.4f} +/- {mle.alpha_err:.4f}   (truth {TRUE_ALPHA})")
    print(f"transition      = {x_t:.3f}   (truth {TRUE_XT / scale:.3f})")

    z = abs(mle.alpha - TRUE_ALPHA) / mle.alpha_err
    print(f"alpha recovered within {z:.2f} estimated standard errors")


if __name__ == "__main__":
    main()
