import json

import pytest
from conftest import mutate
from mutations import CHECK_CODES, MUTATIONS

from smcard import Diagnostic, load_text, severity_summary, validate
from smcard.diagnostics import CODES, Severity


def error_codes(diags):
    return sorted(d.code for d in diags if d.is_error)


def test_golden_has_no_errors(card):
    assert [d for d in validate(card) if d.is_error] == []


@pytest.mark.parametrize("code", sorted(MUTATIONS))
def test_mutation_triggers_its_code(code):
    text, path = MUTATIONS[code]
    loaded = load_text(text)
    hits = [d for d in loaded.diagnostics if d.code == code]
    assert len(hits) == 1, loaded.diagnostics
    assert hits[0].path == path
    expected_errors = [code] if code.startswith("E") else []
    assert error_codes(loaded.diagnostics) == expected_errors


@pytest.mark.parametrize("check, code", sorted(CHECK_CODES.items()))
def test_each_check_isolated(check, code):
    loaded = load_text(MUTATIONS[code][0])
    assert error_codes(loaded.diagnostics) == [code], check


def test_liters_on_energy_exactly_one_e004():
    loaded = load_text(mutate("unit: kWh", "unit: Liters"))
    e004 = [d for d in loaded.diagnostics if d.code == "E004"]
    assert len(e004) == 1
    assert e004[0].related_value == "Liters"


def test_offset_percentage_150_exactly_one_e007():
    loaded = load_text(mutate("value: 100.0", "value: 150.0"))
    assert error_codes(loaded.diagnostics) == ["E007"]


def test_mix_ratio_out_of_range():
    loaded = load_text(mutate("ratio: 100.0", "ratio: 120.0"))
    assert error_codes(loaded.diagnostics) == ["E007"]
    assert "W101" in [d.code for d in loaded.diagnostics]


def test_offset_unit_must_be_percentage_or_kg():
    loaded = load_text(mutate("unit: PERCENTAGE", "unit: kWh"))
    assert error_codes(loaded.diagnostics) == ["E004"]


def test_absolute_offset_may_exceed_100():
    loaded = load_text(mutate("value: 100.0\n          unit: PERCENTAGE", "value: 250.0\n          unit: kgCO2eq"))
    assert error_codes(loaded.diagnostics) == []


def test_negative_duration():
    loaded = load_text(mutate("hour_duration: 100.0", "hour_duration: -1.0"))
    assert error_codes(loaded.diagnostics) == ["E011"]


def test_missing_intensity_unit():
    loaded = load_text(mutate("co2_per_kWh: 0.57\n        unit: kgCO2eq\n", "co2_per_kWh: 0.57\n"))
    assert error_codes(loaded.diagnostics) == ["E003"]


def test_energy_unit_on_intensity_rejected():
    loaded = load_text(mutate("co2_per_kWh: 0.57\n        unit: kgCO2eq\n", "co2_per_kWh: 0.57\n        unit: kWh\n"))
    assert error_codes(loaded.diagnostics) == ["E004"]


def test_timestamp_with_offset_needs_no_note():
    text = mutate("timestamp: 2025-01-02T09:00:00", "timestamp: 2025-01-02T09:00:00+01:00")
    text = mutate("timestamp: 2025-01-21T09:00:00", "timestamp: 2025-01-21T09:00:00Z", text)
    loaded = load_text(text)
    assert loaded.diagnostics == []


def test_ordering_is_document_order():
    text = mutate("type: Fossil", "type: Coal")
    text = mutate("value: 57.5", "value: -57.5", text)
    text = mutate("inference_type: TextGeneration", "inference_type: Telepathy", text)
    diags = load_text(text).diagnostics
    lines = [d.line for d in diags]
    assert lines == sorted(lines)
    assert [d.code for d in diags if d.is_error] == ["E006", "E011", "E005"]


def test_deterministic(card):
    assert validate(card) == validate(card)


def test_validate_is_total_on_broken_cards():
    text = mutate("    model_type: LLM\n", "")
    text = mutate("value: 25.0", "value: [1]", text)
    text = mutate("ratio: 100.0", "ratio: x", text)
    text = mutate("co2_per_kWh: 0.57", "co2_per_kWh: {}", text)
    loaded = load_text(text)
    assert loaded.card is not None
    assert not loaded.valid


class TestDiagnostic:
    def test_code_determines_severity(self):
        for code in CODES:
            d = Diagnostic(code, ("a",), "message")
            assert d.severity is (Severity.ERROR if code[0] == "E" else Severity.WARNING)

    def test_rejects_unknown_code_and_empty_message(self):
        with pytest.raises(ValueError):
            Diagnostic("E999", (), "x")
        with pytest.raises(ValueError):
            Diagnostic("E001", (), "")

    def test_json_shape(self):
        d = Diagnostic("E004", ("a", 0, "unit"), "bad unit", "Liters", 3, 5)
        data = json.loads(json.dumps(d.to_dict()))
        assert data["code"] == "E004"
        assert data["severity"] == "Error"
        assert data["path"] == "a/0/unit"
        assert data["message"] == "bad unit"


@pytest.mark.parametrize(
    "diags, expected",
    [
        ([], (0, 0, True)),
        ([Diagnostic("E004", (), "x")], (1, 0, False)),
        ([Diagnostic("E004", (), "x"), Diagnostic("W101", (), "y"), Diagnostic("W101", (), "z")], (1, 2, False)),
        ([Diagnostic("W103", (), "x")], (0, 1, True)),
    ],
)
def test_severity_summary(diags, expected):
    summary = severity_summary(diags)
    assert (summary.errors, summary.warnings, summary.valid) == expected
