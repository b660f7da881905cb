import numpy as np
import pytest

from incomedist import (
    NormalizedSample,
    build_log_bins,
    default_grid,
    empirical_ccdf,
)


def make_sample(x, m=None):
    x = np.asarray(x, dtype=float)
    m = np.ones_like(x) if m is None else np.asarray(m, dtype=float)
    return NormalizedSample(x=x, multiplicity=m, mean_income_raw=1.0)


def test_grid_first_element():
    grid = build_log_bins(0.01, 1.1, 1.0)
    assert grid.abscissae[0] == 0.01


def test_grid_second_element():
    grid = build_log_bins(0.01, 1.1, 1.0)
    assert grid.abscissae[1] == pytest.approx(0.011, rel=1e-12)


def test_grid_25th_element():
    # independent evaluation by repeated multiplication
    value = 0.01
    for _ in range(24):
        value *= 1.1
    grid = build_log_bins(0.01, 1.1, 1.0)
    assert grid.abscissae[24] == pytest.approx(value, rel=1e-12)
    assert grid.abscissae[24] == pytest.approx(0.0984973, rel=1e-5)


def test_grid_ratio_exact():
    grid = build_log_bins(0.01, 1.1, 100.0)
    ratios = grid.abscissae[1:] / grid.abscissae[:-1]
    assert np.allclose(ratios, 1.1, rtol=1e-12)


def test_grid_covers_x_max_minimally():
    grid = build_log_bins(0.01, 1.1, 100.0)
    assert grid.abscissae[-1] >= 100.0
    assert grid.abscissae[-2] < 100.0


def test_grid_has_about_100_points_at_defaults():
    grid = build_log_bins(0.01, 1.1, 100.0)
    assert 90 <= len(grid) <= 105


@pytest.mark.parametrize(
    "args", [(0.0, 1.1, 1.0), (-1.0, 1.1, 1.0), (0.01, 1.0, 1.0), (0.01, 0.9, 1.0), (0.01, 1.1, 0.005)]
)
def test_grid_argument_errors(args):
    with pytest.raises(ValueError):
        build_log_bins(*args)


def test_ccdf_direct_count():
    sample = make_sample([1.0, 2.0, 3.0])
    grid = build_log_bins(0.5, 1.1, 3.0)
    ccdf = empirical_ccdf(sample, grid)
    assert ccdf.F[0] == pytest.approx(100.0)
    # a grid starting exactly at 2 counts the two observations >= 2
    ccdf2 = empirical_ccdf(sample, build_log_bins(2.0, 1.1, 3.0))
    assert ccdf2.F[0] == pytest.approx(100 * 2 / 3)


def test_ccdf_boundaries():
    sample = make_sample([1.0, 2.0, 3.0])
    grid = build_log_bins(1e-6, 2.0, 10.0)
    ccdf = empirical_ccdf(sample, grid)
    assert ccdf.F[0] == 100.0
    assert ccdf.F[ccdf.x > 3.0][-1] == 0.0


def test_ccdf_monotone_and_bounded():
    rng = np.random.default_rng(3)
    sample = make_sample(rng.lognormal(0, 1, 500), rng.uniform(0.5, 5, 500))
    ccdf = empirical_ccdf(sample, default_grid(sample))
    assert np.all(np.diff(ccdf.F) <= 0)
    assert np.all((ccdf.F >= 0) & (ccdf.F <= 100))


def test_ccdf_matches_bruteforce():
    rng = np.random.default_rng(4)
    x = rng.lognormal(0, 1, 200)
    m = rng.uniform(0.5, 5, 200)
    sample = make_sample(x, m)
    ccdf = empirical_ccdf(sample, default_grid(sample))
    for xi, fi in zip(ccdf.x, ccdf.F):
        brute = 100.0 * m[x >= xi].sum() / m.sum()
        assert fi == pytest.approx(brute, abs=1e-12)


def test_complement_identity_exact():
    rng = np.random.default_rng(5)
    sample = make_sample(rng.lognormal(0, 1, 100))
    ccdf = empirical_ccdf(sample, default_grid(sample))
    assert np.all(ccdf.cumulative() + ccdf.F == 100.0)


def test_empty_grid_rejected():
    sample = make_sample([1.0])
    from incomedist.binning import LogBinGrid

    with pytest.raises(ValueError):
        empirical_ccdf(sample, LogBinGrid(0.01, 1.1, np.array([])))
