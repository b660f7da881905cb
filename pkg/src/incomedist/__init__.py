"""Two-class income distribution analysis.

Fits weighted survey microdata with a Gompertz bulk plus Pareto tail,
computes inequality metrics, and generates synthetic samples for
estimator validation.
"""

__version__ = "0.1.0"

from .binning import BinnedCCDF, LogBinGrid, build_log_bins, default_grid, empirical_ccdf
from .errors import (
    BootstrapFailureError,
    DegenerateSampleError,
    DomainError,
    EmptyInputError,
    IncomeDistError,
    InsufficientDataError,
    MeanDivergenceError,
    RegionDetectionError,
    RowError,
    SchemaError,
)
from .bootstrap import BootstrapResult, bootstrap_fit
from .gompertz import (
    BOUNDARY_INTERCEPT,
    DENSITY_AT_ZERO_OVER_B,
    ExponentialFit,
    GompertzFit,
    GompertzParams,
    fit_exponential,
    fit_gompertz,
    gompertz_ccdf,
    gompertz_density,
)
from .inequality import LorenzCurve, gini, gini_of_sample, lorenz_curve
from .ingest import (
    HouseholdRecord,
    NormalizedSample,
    WeightedIncome,
    equivalize_and_expand,
    load_sample,
    normalize_incomes,
    parse_aggregated_records,
    parse_household_records,
)
from .model import (
    TwoClassModel,
    bulk_mean_integral,
    continuity_residual,
    income_shares,
    mean_income,
    model_ccdf,
    model_density,
    population_shares,
    sample_model,
    transition_income,
)
from .pareto import (
    ParetoFit,
    ParetoLsfFit,
    ParetoMleFit,
    ParetoParams,
    beta_from_continuity,
    fit_pareto_lsf,
    fit_pareto_mle,
    pareto_ccdf,
    pareto_density,
    pareto_log_likelihood,
)
from .pipeline import AnalysisReport, PipelineConfig, StageError, run_pipeline, write_outputs
