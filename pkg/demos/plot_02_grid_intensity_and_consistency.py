"""
Grid intensity and consistency checks
=====================================

A platform's energy mix gives a carbon intensity (gCO2eq per kWh). Multiplying
a computation's energy by that intensity gives the carbon it *should* have
emitted; comparing with the declared figure catches unit slips and typos.
"""

from pathlib import Path

from smcard import check_consistency, load_file, mix_intensity

CARDS = Path(__file__).parent / "cards"

for path in sorted(CARDS.glob("*.yaml")):
    card = load_file(path).card
    print(f"\n{card.meta_data.name}")
    for platform in card.platforms:
        print(f"  {platform.name}: {mix_intensity(platform, card.energy_sources):.1f} gCO2eq/kWh")

    reports, warnings = check_consistency(card)
    for report in reports:
        print(
            f"  {report.subject:<14} declared {report.declared_carbon.value:>12.6g} g"
            f"  implied {report.implied_carbon.value:>12.6g} g"
            f"  deviation {report.relative_deviation:6.2%}"
        )
    for warning in warnings:
        print("  ", warning.code, warning.message)

###############################################################################
# The tolerance is a parameter. At 1% the small gap in the first card's
# inference figure is flagged as well.

card = load_file(CARDS / "model_name.yaml").card
_, warnings = check_consistency(card, tolerance=0.01)
print([w.code for w in warnings])
