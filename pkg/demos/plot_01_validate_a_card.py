"""
Reading and validating a card
=============================

Load a card file, look at the diagnostics it produces, then break it on
purpose to see how problems are reported.
"""

from pathlib import Path

from smcard import load_file, load_text

CARDS = Path(__file__).parent / "cards"

# load_file parses, builds and validates in one go
result = load_file(CARDS / "model_name.yaml")
print("valid:", result.valid, result.summary.to_dict())
for diag in result.diagnostics:
    print(" ", diag)

# the parsed card is a tree of frozen dataclasses
card = result.card
print(card.meta_data.name, card.meta_data.version)
print("training energy:", card.training.energy_consumption)
print("first task:", card.inference[0].inference_type, card.inference[0].energy_consumption)

###############################################################################
# Problems are collected, not raised. Every diagnostic carries a stable code,
# the path of the offending node and its line/column.

text = (CARDS / "model_name.yaml").read_text()
broken = (
    text.replace("unit: kWh", "unit: Liters")
    .replace("type: Fossil", "type: Coal")
    .replace("value: 100.0", "value: 150.0")
)
for diag in load_text(broken, "broken.yaml").diagnostics:
    print(diag.code, diag.severity.value, "/".join(map(str, diag.path)), "-", diag.message)
