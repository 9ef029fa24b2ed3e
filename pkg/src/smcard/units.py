"""Unit families for energy, carbon and water quantities.

Each family is an ordered ladder of symbols where neighbouring rungs differ
by a factor of exactly 1000. Conversions shift the decimal exponent of the
shortest decimal representation of the value instead of multiplying binary
floats, so ``0.0123 kWh`` and ``12.3 Wh`` normalize to the same float.
"""

from __future__ import annotations

import enum
from decimal import Decimal

from .errors import PercentageOutOfRange, UnitFamilyMismatch, UnknownUnitError

__all__ = [
    "Family",
    "UNITS",
    "CANONICAL",
    "PERCENTAGE",
    "family_of",
    "is_unit",
    "convert",
    "normalize_percentage",
    "step_unit",
]


class Family(str, enum.Enum):
    ENERGY = "energy"
    CARBON = "carbon"
    WATER = "water"


#: Ladder per family, smallest unit first.
UNITS: dict[Family, tuple[str, ...]] = {
    Family.ENERGY: ("Wh", "kWh", "MWh"),
    Family.CARBON: ("gCO2eq", "kgCO2eq", "tCO2eq"),
    Family.WATER: ("mL", "L", "m3"),
}

CANONICAL: dict[Family, str] = {
    Family.ENERGY: "Wh",
    Family.CARBON: "gCO2eq",
    Family.WATER: "L",
}

PERCENTAGE = "PERCENTAGE"

_RUNG: dict[str, tuple[Family, int]] = {
    symbol: (family, index)
    for family, ladder in UNITS.items()
    for index, symbol in enumerate(ladder)
}


def is_unit(symbol: object, family: Family | None = None) -> bool:
    """Return True if *symbol* is a known unit (of *family*, when given)."""
    if not isinstance(symbol, str) or symbol not in _RUNG:
        return False
    return family is None or _RUNG[symbol][0] is family


def family_of(symbol: str) -> Family:
    try:
        return _RUNG[symbol][0]
    except KeyError:
        raise UnknownUnitError(f"unknown unit {symbol!r}") from None


def _rung(symbol: str) -> tuple[Family, int]:
    try:
        return _RUNG[symbol]
    except KeyError:
        raise UnknownUnitError(f"unknown unit {symbol!r}") from None


def convert(value: float, from_unit: str, to_unit: str) -> float:
    """Re-express *value* given in *from_unit* in *to_unit*.

    Both units must belong to the same family. The scaling is an exact shift
    of the decimal exponent, followed by a single rounding back to float.

    >>> convert(25.0, "kWh", "Wh")
    25000.0
    >>> convert(7.12, "gCO2eq", "kgCO2eq")
    0.00712
    """
    src_family, src_index = _rung(from_unit)
    dst_family, dst_index = _rung(to_unit)
    if src_family is not dst_family:
        raise UnitFamilyMismatch(
            f"cannot convert {from_unit} ({src_family.value}) to {to_unit} ({dst_family.value})"
        )
    shift = 3 * (src_index - dst_index)
    if shift == 0:
        return float(value)
    if value != value or value in (float("inf"), float("-inf")):
        return float(value)
    return float(Decimal(repr(float(value))).scaleb(shift))


def step_unit(symbol: str, steps: int) -> str:
    """Move *steps* rungs up (positive) or down (negative) the family ladder."""
    family, index = _rung(symbol)
    target = index + steps
    ladder = UNITS[family]
    if not 0 <= target < len(ladder):
        raise UnknownUnitError(f"no unit {steps:+d} steps from {symbol!r}")
    return ladder[target]


def normalize_percentage(value: float) -> float:
    """Map a value on the 0..100 percentage scale to a fraction in [0, 1]."""
    if not 0.0 <= value <= 100.0:
        raise PercentageOutOfRange(f"percentage {value!r} is outside [0, 100]")
    return value / 100.0
