"""Single-field mutations of the golden fixture and the code each must raise."""

from conftest import golden_text, mutate

ROOT = "sustainability_model_card"


def _duplicate_energy_source() -> str:
    text = golden_text()
    start = text.index("    - energy_source:")
    end = text.index("  training:")
    return text[:end] + text[start:end] + text[end:]


# code -> (mutated text, path of the expected diagnostic)
MUTATIONS = {
    "E003": (
        mutate("      value: 25.0\n      unit: kWh\n", "      value: 25.0\n"),
        (ROOT, "training", "energy_consumption"),
    ),
    "E004": (
        mutate("unit: kWh", "unit: Liters"),
        (ROOT, "training", "energy_consumption", "unit"),
    ),
    "E005": (
        mutate("inference_type: TextGeneration", "inference_type: Telepathy"),
        (ROOT, "inference", 0, "task", "inference_type"),
    ),
    "E006": (
        mutate("type: Fossil", "type: Coal"),
        (ROOT, "energy_sources", 0, "energy_source", "type"),
    ),
    "E007": (
        mutate("value: 100.0", "value: 150.0"),
        (ROOT, "platforms", 0, "platform", "carbon_offset_credit", "value"),
    ),
    "E008": (
        mutate(
            "        inference_type: TextGeneration\n        platform: Infrastructure\n",
            "        inference_type: TextGeneration\n        platform: Cluster-X\n",
        ),
        (ROOT, "inference", 0, "task", "platform"),
    ),
    "E009": (
        mutate("timestamp: 2025-01-02T09:00:00", "timestamp: early January"),
        (ROOT, "training", "timestamp"),
    ),
    "E010": (
        _duplicate_energy_source(),
        (ROOT, "energy_sources", 1, "energy_source", "name"),
    ),
    "E011": (
        mutate("value: 57.5", "value: -57.5"),
        (ROOT, "training", "water_consumption", "value"),
    ),
    "W101": (
        mutate("ratio: 100.0", "ratio: 80.0"),
        (ROOT, "platforms", 0, "platform", "energy_mix"),
    ),
    "W103": (
        mutate("    license: CC0\n", "    license: CC0\n    homepage: https://example.org\n"),
        (ROOT, "meta_data", "homepage"),
    ),
}

# the paper's four checks, each with one mutation that isolates it
CHECK_CODES = {
    "unit presence": "E003",
    "unit correspondence": "E004",
    "inference type": "E005",
    "energy type": "E006",
    "percentage bounds": "E007",
}
