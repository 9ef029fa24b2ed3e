"""
Exporting a card
================

A validated card can be written back in canonical YAML, as JSON, as a
Markdown document, or as a ``co2_eq_emissions`` block for the header of an
existing model card.
"""

from pathlib import Path

from smcard import (
    ExportFormat,
    RenderOptions,
    load_file,
    load_text,
    render,
    to_canonical_yaml,
    to_hf_frontmatter,
)

CARDS = Path(__file__).parent / "cards"
loaded = load_file(CARDS / "compact_llm.yaml")
card = loaded.card

print(to_canonical_yaml(card)[:400], "...\n")
print(render(card, RenderOptions(ExportFormat.MARKDOWN)))
print(to_hf_frontmatter(card))

# canonical YAML re-reads to the same card
assert load_text(to_canonical_yaml(card)).card == card
