"""Survey microdata ingestion.

Reads household survey tables, applies the equal-split equivalence scale
(total household income divided evenly among occupants), expands each
household by its sampling weight, and rescales incomes to unit mean.

Two input layouts are accepted, both UTF-8 delimited text with a header:

* household format, columns ``total_income,occupants,weight``
* pre-aggregated format, columns ``income,multiplicity`` (used mainly for
  synthetic samples)
"""

from dataclasses import dataclass, field

import numpy as np
import pandas as pd

from .errors import (
    DegenerateSampleError,
    EmptyInputError,
    RowError,
    SchemaError,
)

HOUSEHOLD_COLUMNS = ("total_income", "occupants", "weight")
AGGREGATED_COLUMNS = ("income", "multiplicity")


@dataclass(frozen=True)
class HouseholdRecord:
    """One survey row: household income, occupant count, expansion weight."""

    total_income: float
    occupants: int
    weight: float

    def __post_init__(self):
        if self.total_income < 0:
            raise ValueError("total_income must be nonnegative")
        if self.occupants < 1:
            raise ValueError("occupants must be >= 1")
        if self.weight <= 0:
            raise ValueError("weight must be positive")


@dataclass(frozen=True)
class WeightedIncome:
    """Per-capita income with the person count it represents."""

    income: float
    multiplicity: float

    def __post_init__(self):
        if self.income < 0:
            raise ValueError("income must be nonnegative")
        if self.multiplicity <= 0:
            raise ValueError("multiplicity must be positive")


@dataclass(frozen=True)
class NormalizedSample:
    """Weighted multiset of dimensionless incomes with (nominally) unit mean.

    ``x`` and ``multiplicity`` are parallel arrays.  ``mean_income_raw`` is
    the weighted mean of the raw per-capita incomes used as the divisor.
    Samples built by :func:`normalize_incomes` have weighted mean 1; derived
    samples (bootstrap resamples, model draws) may deviate slightly and are
    not re-normalized.
    """

    x: np.ndarray
    multiplicity: np.ndarray
    mean_income_raw: float
    total_population: float = field(default=0.0)

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        m = np.asarray(self.multiplicity, dtype=float)
        if x.shape != m.shape or x.ndim != 1:
            raise ValueError("x and multiplicity must be parallel 1-d arrays")
        if np.any(x < 0) or np.any(m <= 0):
            raise ValueError("incomes must be >= 0 and multiplicities > 0")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "multiplicity", m)
        if self.total_population == 0.0:
            object.__setattr__(self, "total_population", float(m.sum()))

    @property
    def weighted_mean(self) -> float:
        return float(np.sum(self.x * self.multiplicity) / np.sum(self.multiplicity))

    @property
    def zero_income_population(self) -> float:
        """Person count carrying exactly zero income (retained, flagged)."""
        return float(self.multiplicity[self.x == 0].sum())

    def positive_part(self) -> tuple[np.ndarray, np.ndarray]:
        """(x, multiplicity) restricted to strictly positive incomes."""
        keep = self.x > 0
        return self.x[keep], self.multiplicity[keep]


def _read_table(source, columns):
    """Read a delimited table, returning a DataFrame with exactly `columns`."""
    try:
        df = pd.read_csv(source, skipinitialspace=True)
        if len(df.columns) == 1 and "\t" in str(df.columns[0]):
            if hasattr(source, "seek"):
                source.seek(0)
            df = pd.read_csv(source, sep="\t", skipinitialspace=True)
    except pd.errors.EmptyDataError:
        raise EmptyInputError("input contains no data") from None
    df.columns = [str(c).strip() for c in df.columns]
    missing = [c for c in columns if c not in df.columns]
    if missing:
        raise SchemaError(f"missing required column(s): {', '.join(missing)}")
    if len(df) == 0:
        raise EmptyInputError("input contains a header but no data rows")
    return df[list(columns)]


def _numeric_or_bad(series, bad, message):
    values = pd.to_numeric(series, errors="coerce").to_numpy(dtype=float)
    nan = ~np.isfinite(values)
    for i in np.flatnonzero(nan):
        bad.setdefault(i, message)
    return values


def parse_household_records(source) -> list[HouseholdRecord]:
    """Parse the household CSV format into validated records.

    Rows failing validation are collected and reported together with their
    1-based line numbers (header is line 1).
    """
    df = _read_table(source, HOUSEHOLD_COLUMNS)
    bad: dict[int, str] = {}
    income = _numeric_or_bad(df["total_income"], bad, "non-numeric total_income")
    occupants = _numeric_or_bad(df["occupants"], bad, "non-numeric occupants")
    weight = _numeric_or_bad(df["weight"], bad, "non-numeric weight")

    with np.errstate(invalid="ignore"):
        for i in np.flatnonzero(income < 0):
            bad.setdefault(i, "total_income must be nonnegative")
        for i in np.flatnonzero((occupants < 1) | (occupants != np.floor(occupants))):
            bad.setdefault(i, "occupants must be a positive integer")
        for i in np.flatnonzero(weight <= 0):
            bad.setdefault(i, "weight must be positive")
    if bad:
        raise RowError((i + 2, msg) for i, msg in sorted(bad.items()))
    return [
        HouseholdRecord(float(t), int(o), float(w))
        for t, o, w in zip(income, occupants, weight)
    ]


def parse_aggregated_records(source) -> list[WeightedIncome]:
    """Parse the pre-aggregated ``income,multiplicity`` CSV format."""
    df = _read_table(source, AGGREGATED_COLUMNS)
    bad: dict[int, str] = {}
    income = _numeric_or_bad(df["income"], bad, "non-numeric income")
    mult = _numeric_or_bad(df["multiplicity"], bad, "non-numeric multiplicity")
    with np.errstate(invalid="ignore"):
        for i in np.flatnonzero(income < 0):
            bad.setdefault(i, "income must be nonnegative")
        for i in np.flatnonzero(mult <= 0):
            bad.setdefault(i, "multiplicity must be positive")
    if bad:
        raise RowError((i + 2, msg) for i, msg in sorted(bad.items()))
    return [WeightedIncome(float(v), float(m)) for v, m in zip(income, mult)]


def equivalize_and_expand(records: list[HouseholdRecord]) -> list[WeightedIncome]:
    """Equal-split equivalence scale plus weight expansion.

    Each household contributes one entry with per-capita income
    ``total_income / occupants`` counted ``occupants * weight`` times.
    Fractional multiplicities are kept as-is.
    """
    if not records:
        raise EmptyInputError("no household records")
    return [
        WeightedIncome(r.total_income / r.occupants, r.occupants * r.weight)
        for r in records
    ]


def normalize_incomes(incomes: list[WeightedIncome]) -> NormalizedSample:
    """Divide every income by the weighted mean, producing unit-mean values.

    Zero incomes are retained (they stay at x = 0 and keep their population
    count) but carry no probability in downstream fitting.
    """
    if not incomes:
        raise EmptyInputError("no incomes to normalize")
    value = np.array([w.income for w in incomes], dtype=float)
    mult = np.array([w.multiplicity for w in incomes], dtype=float)
    mean_raw = float(np.sum(value * mult) / np.sum(mult))
    if mean_raw <= 0:
        raise DegenerateSampleError("all incomes are zero; cannot normalize")
    return NormalizedSample(
        x=value / mean_raw,
        multiplicity=mult,
        mean_income_raw=mean_raw,
    )


def load_sample(source, fmt: str = "household") -> NormalizedSample:
    """Read a file in either supported format and normalize it."""
    if fmt == "household":
        return normalize_incomes(equivalize_and_expand(parse_household_records(source)))
    if fmt == "aggregated":
        return normalize_incomes(parse_aggregated_records(source))
    raise ValueError(f"unknown input format: {fmt!r}")
