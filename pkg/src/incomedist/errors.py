"""Exception types shared across the package."""


class IncomeDistError(Exception):
    """Base class for all package-specific errors."""


class SchemaError(IncomeDistError):
    """Input table is missing a required column."""


class RowError(IncomeDistError):
    """One or more data rows failed validation.

    Carries (line_number, message) pairs for every offending row.
    """

    def __init__(self, bad_rows):
        self.bad_rows = list(bad_rows)
        lines = "; ".join(f"line {ln}: {msg}" for ln, msg in self.bad_rows[:10])
        extra = "" if len(self.bad_rows) <= 10 else f" (+{len(self.bad_rows) - 10} more)"
        super().__init__(f"{len(self.bad_rows)} invalid row(s): {lines}{extra}")


class EmptyInputError(IncomeDistError):
    """Input file contains no data rows."""


class DegenerateSampleError(IncomeDistError):
    """Sample cannot be normalized or measured (e.g. all incomes zero)."""


class InsufficientDataError(IncomeDistError):
    """Too few usable points for the requested fit."""


class RegionDetectionError(IncomeDistError):
    """No prefix of the CCDF satisfies the intercept criterion."""

    def __init__(self, message, best_intercept=None):
        super().__init__(message)
        self.best_intercept = best_intercept


class DomainError(IncomeDistError):
    """Argument outside the mathematical domain of the operation."""


class MeanDivergenceError(IncomeDistError):
    """Model mean does not converge (Pareto index not above one)."""


class BootstrapFailureError(IncomeDistError):
    """The fitter failed on more than half of the bootstrap resamples."""
