"""Tests for the two-class model: continuity, normalization, means,
shares, and inverse-CDF sampling."""

import math

import numpy as np
import pytest
from scipy.integrate import quad

from incomedist import (
    BOUNDARY_INTERCEPT,
    GompertzParams,
    MeanDivergenceError,
    NormalizedSample,
    ParetoParams,
    TwoClassModel,
    bulk_mean_integral,
    continuity_residual,
    gompertz_ccdf,
    gompertz_density,
    income_shares,
    mean_income,
    model_ccdf,
    model_density,
    pareto_ccdf,
    pareto_density,
    population_shares,
    sample_model,
    transition_income,
)


GOMP = GompertzParams(A=1.54, B=0.39)


def test_transition_income_midpoint():
    x_t, delta = transition_income(7.0, 8.0)
    assert x_t == pytest.approx(7.5)
    assert delta == pytest.approx(0.5)


def test_transition_income_equal_inputs():
    x_t, delta = transition_income(7.4, 7.4)
    assert x_t == 7.4
    assert delta == 0.0


def test_transition_income_rejects_reversed_order():
    with pytest.raises(ValueError):
        transition_income(8.0, 7.0)


def test_continuity_residual_is_zero_by_construction():
    model = TwoClassModel.from_continuity(GOMP, alpha=2.75, x_t=7.8)
    assert abs(continuity_residual(model)) < 1e-12


def test_ccdf_continuous_at_transition():
    model = TwoClassModel.from_continuity(GOMP, alpha=2.75, x_t=7.8)
    eps = 1e-9
    below = model_ccdf(model, model.x_t - eps)
    at = model_ccdf(model, model.x_t)
    assert below == pytest.approx(at, rel=1e-6)


def test_ccdf_piecewise_branches():
    model = TwoClassModel.from_continuity(GOMP, alpha=2.75, x_t=7.8)
    assert model_ccdf(model, 3.0) == pytest.approx(gompertz_ccdf(GOMP, 3.0))
    assert model_ccdf(model, 9.0) == pytest.approx(pareto_ccdf(model.par, 9.0))
    xs = np.array([3.0, 7.8, 9.0])
    np.testing.assert_allclose(
        model_ccdf(model, xs),
        [gompertz_ccdf(GOMP, 3.0), model.tail_probability, pareto_ccdf(model.par, 9.0)],
    )


def test_density_piecewise_branches():
    model = TwoClassModel.from_continuity(GOMP, alpha=2.75, x_t=7.8)
    assert model_density(model, 2.0) == pytest.approx(gompertz_density(GOMP, 2.0))
    assert model_density(model, 10.0) == pytest.approx(pareto_density(model.par, 10.0))


def test_total_probability_is_100_at_boundary_intercept():
    # With A at the exact boundary value, G(0) = 100 and the bulk quadrature
    # plus the closed-form tail integral must exhaust all probability.
    gomp = GompertzParams(A=BOUNDARY_INTERCEPT, B=0.39)
    model = TwoClassModel.from_continuity(gomp, alpha=2.75, x_t=7.8)
    bulk, _ = quad(lambda w: gompertz_density(gomp, w), 0.0, model.x_t, limit=200)
    tail = model.par.beta * model.x_t ** (-model.par.alpha)
    assert bulk + tail == pytest.approx(100.0, abs=1e-6)


def test_gompertz_ccdf_floor_is_one():
    # The Gompertz branch alone never drops below 1 percent, which is what
    # leaves room for a tail of about one percent of the population.
    assert gompertz_ccdf(GOMP, 1e6) == pytest.approx(1.0)
    # strictly above 1 wherever the excess is representable in float64
    for x in [1.0, 10.0, 40.0, 80.0]:
        assert gompertz_ccdf(GOMP, x) > 1.0


def test_mean_income_near_unity_for_period_model():
    # Samples were normalized to unit mean, so a model fitted to them should
    # have mean close to 1.
    model = TwoClassModel.from_continuity(GOMP, alpha=2.75, x_t=7.8)
    assert mean_income(model) == pytest.approx(1.0, abs=0.15)


def test_mean_income_diverges_at_unit_alpha():
    model = TwoClassModel.from_continuity(GOMP, alpha=1.0, x_t=7.8)
    with pytest.raises(MeanDivergenceError):
        mean_income(model)


def test_bulk_mean_integral_matches_romberg_style_reference():
    # Cross-check the quadrature against a dense trapezoid evaluation.
    x_t = 7.8
    grid = np.linspace(0.0, x_t, 200_001)
    ref = np.trapezoid(grid * gompertz_density(GOMP, grid), grid)
    assert bulk_mean_integral(GOMP, x_t) == pytest.approx(ref, rel=1e-6)


def test_population_shares_hand_example():
    sample = NormalizedSample(
        x=np.array([1.0, 2.0, 8.0, 9.0]),
        multiplicity=np.array([3.0, 1.0, 1.0, 1.0]),
        mean_income_raw=1.0,
    )
    bulk, tail = population_shares(sample, x_t=8.0)
    assert tail == pytest.approx(100 * 2 / 6)
    assert bulk + tail == pytest.approx(100.0)


def test_income_shares_hand_example():
    sample = NormalizedSample(
        x=np.array([1.0, 2.0, 8.0, 9.0]),
        multiplicity=np.array([3.0, 1.0, 1.0, 1.0]),
        mean_income_raw=1.0,
    )
    bulk, tail = income_shares(sample, x_t=8.0)
    total = 3 * 1.0 + 2.0 + 8.0 + 9.0
    assert tail == pytest.approx(100 * 17.0 / total)
    assert bulk + tail == pytest.approx(100.0)


def test_sample_model_deterministic():
    model = TwoClassModel.from_continuity(GOMP, alpha=2.75, x_t=7.8)
    a = sample_model(model, 1000, seed=42)
    b = sample_model(model, 1000, seed=42)
    np.testing.assert_array_equal(a.x, b.x)
    c = sample_model(model, 1000, seed=43)
    assert not np.array_equal(a.x, c.x)


def test_sample_model_tail_fraction_matches_branch_probability():
    model = TwoClassModel.from_continuity(GOMP, alpha=2.75, x_t=7.8)
    sample = sample_model(model, 200_000, seed=7)
    observed = 100.0 * np.mean(sample.x >= model.x_t)
    expected = model.tail_probability
    # binomial three-sigma band
    sigma = math.sqrt(expected * (100 - expected) / 200_000)
    assert abs(observed - expected) <= 3 * sigma


def test_sample_model_values_nonnegative():
    model = TwoClassModel.from_continuity(GOMP, alpha=2.75, x_t=7.8)
    sample = sample_model(model, 50_000, seed=3)
    assert np.all(sample.x >= 0)


def test_sample_model_rejects_empty_request():
    model = TwoClassModel.from_continuity(GOMP, alpha=2.75, x_t=7.8)
    with pytest.raises(ValueError):
        sample_model(model, 0, seed=0)


def test_sample_model_bulk_quantiles():
    # Median of the model should match the inverse CCDF at F = 50.
    model = TwoClassModel.from_continuity(GOMP, alpha=2.75, x_t=7.8)
    sample = sample_model(model, 400_000, seed=11)
    median_model = (GOMP.A - math.log(math.log(50.0))) / GOMP.B
    assert np.median(sample.x) == pytest.approx(median_model, abs=0.02)


def test_model_rejects_nonpositive_transition():
    with pytest.raises(ValueError):
        TwoClassModel(gomp=GOMP, par=ParetoParams(alpha=2.75, beta=400.0), x_t=0.0)


def test_model_rejects_negative_width():
    with pytest.raises(ValueError):
        TwoClassModel(
            gomp=GOMP,
            par=ParetoParams(alpha=2.75, beta=400.0),
            x_t=7.8,
            delta_x_t=-0.1,
        )
