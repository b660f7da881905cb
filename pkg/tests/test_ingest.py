import io

import numpy as np
import pytest

from incomedist import (
    HouseholdRecord,
    WeightedIncome,
    equivalize_and_expand,
    load_sample,
    normalize_incomes,
    parse_aggregated_records,
    parse_household_records,
)
from incomedist.errors import (
    DegenerateSampleError,
    EmptyInputError,
    RowError,
    SchemaError,
)

HEADER = "total_income,occupants,weight\n"


def test_parse_simple_row():
    records = parse_household_records(io.StringIO(HEADER + "1000,4,250\n"))
    assert records == [HouseholdRecord(1000.0, 4, 250.0)]


def test_parse_rejects_zero_occupants_with_line_number():
    with pytest.raises(RowError) as exc:
        parse_household_records(io.StringIO(HEADER + "1000,4,250\n1000,0,250\n"))
    assert exc.value.bad_rows[0][0] == 3


def test_parse_rejects_non_numeric():
    with pytest.raises(RowError):
        parse_household_records(io.StringIO(HEADER + "abc,4,250\n"))


def test_parse_rejects_negative_income():
    with pytest.raises(RowError):
        parse_household_records(io.StringIO(HEADER + "-5,4,250\n"))


def test_header_only_is_empty_input():
    with pytest.raises(EmptyInputError):
        parse_household_records(io.StringIO(HEADER))


def test_no_content_is_empty_input():
    with pytest.raises(EmptyInputError):
        parse_household_records(io.StringIO(""))


def test_missing_column_is_schema_error():
    with pytest.raises(SchemaError):
        parse_household_records(io.StringIO("total_income,weight\n100,1\n"))


def test_tab_delimited_accepted():
    records = parse_household_records(io.StringIO("total_income\toccupants\tweight\n600\t2\t3\n"))
    assert records == [HouseholdRecord(600.0, 2, 3.0)]


def test_aggregated_format():
    entries = parse_aggregated_records(io.StringIO("income,multiplicity\n2.5,10\n"))
    assert entries == [WeightedIncome(2.5, 10.0)]


def test_aggregated_rejects_zero_multiplicity():
    with pytest.raises(RowError):
        parse_aggregated_records(io.StringIO("income,multiplicity\n2.5,0\n"))


def test_equivalize_basic():
    out = equivalize_and_expand([HouseholdRecord(1000, 4, 250)])
    assert out == [WeightedIncome(250.0, 1000.0)]


def test_equivalize_zero_income_preserved():
    out = equivalize_and_expand([HouseholdRecord(0, 2, 10)])
    assert out == [WeightedIncome(0.0, 20.0)]


def test_equivalize_two_rows():
    out = equivalize_and_expand(
        [HouseholdRecord(300, 3, 1), HouseholdRecord(600, 2, 2)]
    )
    assert out == [WeightedIncome(100.0, 3.0), WeightedIncome(300.0, 4.0)]


def test_normalize_two_point_mean():
    sample = normalize_incomes([WeightedIncome(100, 1), WeightedIncome(300, 1)])
    assert sample.mean_income_raw == 200.0
    assert np.allclose(sample.x, [0.5, 1.5])


def test_normalize_weighted_mean():
    sample = normalize_incomes([WeightedIncome(100, 3), WeightedIncome(500, 1)])
    assert sample.mean_income_raw == 200.0
    assert np.allclose(sample.x, [0.5, 2.5])


def test_normalization_identity():
    rng = np.random.default_rng(1)
    entries = [
        WeightedIncome(v, m)
        for v, m in zip(rng.exponential(500, 200), rng.uniform(0.5, 900, 200))
    ]
    sample = normalize_incomes(entries)
    assert sample.weighted_mean == pytest.approx(1.0, rel=1e-9)


def test_all_zero_incomes_degenerate():
    with pytest.raises(DegenerateSampleError):
        normalize_incomes([WeightedIncome(0, 1), WeightedIncome(0, 2)])


def test_population_conservation():
    records = [HouseholdRecord(300, 3, 1.5), HouseholdRecord(600, 2, 2.25)]
    expanded = equivalize_and_expand(records)
    total = sum(w.multiplicity for w in expanded)
    sample = normalize_incomes(expanded)
    assert sample.total_population == pytest.approx(total)
    assert total == pytest.approx(3 * 1.5 + 2 * 2.25)


def test_scale_invariance():
    rng = np.random.default_rng(2)
    values = rng.exponential(100, 50)
    mult = rng.uniform(1, 10, 50)
    base = normalize_incomes([WeightedIncome(v, m) for v, m in zip(values, mult)])
    scaled = normalize_incomes(
        [WeightedIncome(7.3 * v, m) for v, m in zip(values, mult)]
    )
    assert np.allclose(base.x, scaled.x, rtol=1e-12)


def test_zero_income_population_flagged():
    sample = normalize_incomes([WeightedIncome(0, 5), WeightedIncome(10, 5)])
    assert sample.zero_income_population == 5.0
    x, m = sample.positive_part()
    assert len(x) == 1 and m[0] == 5.0


def test_load_sample_household(tmp_path):
    path = tmp_path / "h.csv"
    path.write_text(HEADER + "300,3,1\n600,2,2\n")
    sample = load_sample(str(path), "household")
    assert sample.total_population == pytest.approx(7.0)
