from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from smcard import MetricValue, normalize_metric
from smcard.errors import PercentageOutOfRange, UnitFamilyMismatch, UnknownUnitError
from smcard.units import (
    CANONICAL,
    UNITS,
    Family,
    convert,
    family_of,
    normalize_percentage,
    step_unit,
)

# Independent oracle: exact rational scaling by the ladder position.
_EXPONENT = {unit: 3 * index for ladder in UNITS.values() for index, unit in enumerate(ladder)}


def exact_convert(value: float, src: str, dst: str) -> Fraction:
    return Fraction(str(value)) * Fraction(10) ** (_EXPONENT[src] - _EXPONENT[dst])


# results must stay clear of the subnormal range, where relative precision is lost
normal_values = st.just(0.0) | st.floats(min_value=1e-290, max_value=1e290)

PAIRS = [(a, b) for ladder in UNITS.values() for a in ladder for b in ladder]


@pytest.mark.parametrize(
    "value, src, dst, expected",
    [
        (25.0, "kWh", "Wh", 25000.0),
        (14.25, "kgCO2eq", "kgCO2eq", 14.25),
        (7.12, "gCO2eq", "kgCO2eq", 0.00712),
        (1.5, "m3", "mL", 1_500_000.0),
        (0.0123, "kWh", "Wh", 12.3),
    ],
)
def test_convert_examples(value, src, dst, expected):
    assert convert(value, src, dst) == pytest.approx(expected, rel=1e-9)
    assert convert(value, src, dst) == float(exact_convert(value, src, dst))


def test_convert_rejects_cross_family():
    with pytest.raises(UnitFamilyMismatch):
        convert(1.0, "kWh", "L")


def test_convert_rejects_unknown_unit():
    with pytest.raises(UnknownUnitError):
        convert(1.0, "Liters", "L")
    with pytest.raises(UnknownUnitError):
        family_of("kcal")


def test_adjacent_units_differ_by_1000():
    for ladder in UNITS.values():
        for small, large in zip(ladder, ladder[1:]):
            assert convert(1.0, large, small) == 1000.0


def test_step_unit():
    assert step_unit("Wh", 1) == "kWh"
    assert step_unit("tCO2eq", -2) == "gCO2eq"
    with pytest.raises(UnknownUnitError):
        step_unit("MWh", 1)


@given(st.floats(min_value=0, max_value=1e300, allow_nan=False), st.sampled_from(PAIRS))
def test_convert_matches_exact_oracle(value, pair):
    src, dst = pair
    assert convert(value, src, dst) == float(exact_convert(value, src, dst))


@given(normal_values, st.sampled_from(PAIRS))
def test_convert_round_trip(value, pair):
    src, dst = pair
    back = convert(convert(value, src, dst), dst, src)
    assert back == pytest.approx(value, rel=1e-12, abs=0)


@pytest.mark.parametrize(
    "metric, expected",
    [
        (MetricValue(25.0, "kWh"), MetricValue(25000.0, "Wh")),
        (MetricValue(12.3, "Wh"), MetricValue(12.3, "Wh")),
        (MetricValue(57.5, "L"), MetricValue(57.5, "L")),
        (MetricValue(14.25, "kgCO2eq"), MetricValue(14250.0, "gCO2eq")),
        (MetricValue(2.0, "mL"), MetricValue(0.002, "L")),
    ],
)
def test_normalize_metric(metric, expected):
    assert normalize_metric(metric) == expected


@given(st.floats(min_value=0, max_value=1e200, allow_nan=False), st.sampled_from(sorted(_EXPONENT)))
def test_normalize_metric_idempotent(value, unit):
    once = normalize_metric(MetricValue(value, unit))
    assert once.unit == CANONICAL[family_of(unit)]
    assert normalize_metric(once) == once


@given(
    st.floats(min_value=0, max_value=1e100, allow_nan=False),
    st.floats(min_value=0, max_value=1e100, allow_nan=False),
    st.sampled_from(list(Family)),
    st.data(),
)
def test_comparison_invariant_under_reexpression(a, b, family, data):
    ladder = UNITS[family]
    unit_a, unit_b = data.draw(st.sampled_from(ladder)), data.draw(st.sampled_from(ladder))
    base = MetricValue(a, ladder[0]).normalized().value < MetricValue(b, ladder[0]).normalized().value
    moved_a = MetricValue(convert(a, ladder[0], unit_a), unit_a).normalized().value
    moved_b = MetricValue(convert(b, ladder[0], unit_b), unit_b).normalized().value
    # re-expression may round once each way; compare away from exact ties
    if abs(a - b) > 1e-9 * max(a, b):
        assert (moved_a < moved_b) == base


@pytest.mark.parametrize("value, expected", [(100.0, 1.0), (0.0, 0.0), (37.5, 0.375)])
def test_normalize_percentage(value, expected):
    assert normalize_percentage(value) == expected


@pytest.mark.parametrize("value", [-0.1, 100.5, 150.0])
def test_normalize_percentage_out_of_range(value):
    with pytest.raises(PercentageOutOfRange):
        normalize_percentage(value)
