"""Lorenz curves and Gini coefficients, including the Pareto closed form.

For a pure Pareto distribution with exponent alpha the Gini coefficient
is exactly 1/(2*alpha - 1), a convenient oracle for the estimator.

Run:  python3 demos/inequality_demo.py
"""

import numpy as np

import incomedist as idist


def sample_of(values):
    values = np.asarray(values, dtype=float)
    return idist.NormalizedSample(
        x=values, multiplicity=np.ones_like(values), mean_income_raw=1.0
    )


def main():
    rng = np.random.default_rng(0)

    print("distribution                Gini")
    print("-" * 40)

    equal = sample_of(np.full(10_000, 1.0))
    print(f"perfect equality            {idist.gini_of_sample(equal):.4f}")

    expo = sample_of(rng.exponential(1.0, 1_000_000))
    print(f"exponential (theory 0.5)    {idist.gini_of_sample(expo):.4f}")

    for alpha in [1.5, 2.5, 4.0]:
        pareto = sample_of(rng.random(1_000_000) ** (-1.0 / alpha))
        theory = 1.0 / (2 * alpha - 1)
        print(
            f"Pareto alpha={alpha:<4}          "
            f"{idist.gini_of_sample(pareto):.4f}  (theory {theory:.4f})"
        )

    # a two-class model: mostly Gompertz bulk with a Pareto top end
    model = idist.TwoClassModel.from_continuity(
        idist.GompertzParams(A=1.54, B=0.39), alpha=2.75, x_t=7.8
    )
    mixed = idist.sample_model(model, 1_000_000, seed=3)
    curve = idist.lorenz_curve(mixed)
    print(f"two-class model             {idist.gini(curve):.4f}")

    # where the curve sits at the 90th population percentile
    idx = np.searchsorted(curve.p, 0.9)
    print(f"\nbottom 90% of the model population holds {100 * curve.L[idx]:.1f}% of income")


if __name__ == "__main__":
    main()
