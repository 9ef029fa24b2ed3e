"""
Choosing the lowest-impact model
================================

Rank several cards on one criterion. Scores are compared in canonical units
(Wh, gCO2eq, L), so cards written in kWh, MWh or Wh rank correctly together.
"""

from pathlib import Path

from smcard import EmptyComparison, compare_cards, load_file, parse_criterion

CARDS = Path(__file__).parent / "cards"
cards = [load_file(path).card for path in sorted(CARDS.glob("*.yaml"))]

for name, task in [
    ("training-carbon", None),
    ("training-water", None),
    ("inference-energy", "TextGeneration"),
    ("inference-energy", "ImageClassification"),
]:
    criterion = parse_criterion(name, task)
    try:
        ranking = compare_cards(cards, criterion)
    except EmptyComparison as exc:
        print(exc)
        continue
    print(f"\n{criterion.label}")
    for rank, entry in enumerate(ranking, 1):
        print(f"  {rank}. {entry.card_name:<18} {entry.score:>12.6g} {entry.unit}")
    for card in ranking.excluded:
        print(f"     (not reported by {card.meta_data.name})")
