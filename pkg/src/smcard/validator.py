"""Conformance checks over a built card.

Covered conditions: units present where required, units drawn from the
right family, inference and energy types drawn from their enumerations,
percentages within range, resolvable references, parseable timestamps,
non-negative quantities, and energy mixes that add up to 100%.
"""

from __future__ import annotations

from .diagnostics import Diagnostic, DiagnosticSink, in_document_order, severity_summary
from .model import (
    Computation,
    EnergyType,
    InferenceType,
    MetricValue,
    SustainabilityModelCard,
    parse_timestamp,
)
from .parser import resolve_references
from .units import PERCENTAGE, UNITS, Family

__all__ = ["validate", "severity_summary", "MIX_SUM_TOLERANCE", "OFFSET_UNITS"]

MIX_SUM_TOLERANCE = 1e-3

OFFSET_UNITS = (PERCENTAGE, "kgCO2eq")

_METRIC_FAMILY = {
    "energy_consumption": Family.ENERGY,
    "carbon_emissions": Family.CARBON,
    "water_consumption": Family.WATER,
}


def _choices(values) -> str:
    return ", ".join(values)


def _check_unit(sink: DiagnosticSink, path, unit: str | None, allowed: tuple[str, ...], what: str) -> bool:
    if unit is None:
        sink.emit("E003", path, f"{what} has no unit; expected one of {_choices(allowed)}")
        return False
    if unit not in allowed:
        sink.emit("E004", path + ("unit",), f"unit {unit!r} is not valid for {what}; expected one of {_choices(allowed)}", unit)
        return False
    return True


def _check_metric(sink: DiagnosticSink, key: str, metric: MetricValue) -> None:
    family = _METRIC_FAMILY[key]
    _check_unit(sink, metric.path, metric.unit, UNITS[family], key)
    if metric.value < 0:
        sink.emit("E011", metric.path + ("value",), f"{key} must not be negative", metric.value)


def _check_computation(sink: DiagnosticSink, computation: Computation) -> None:
    for key in ("carbon_emissions", "energy_consumption", "water_consumption"):
        metric = getattr(computation, key)
        if metric is not None:
            _check_metric(sink, key, metric)
    if computation.timestamp is not None and parse_timestamp(computation.timestamp) is None:
        sink.emit(
            "E009",
            computation.path + ("timestamp",),
            f"timestamp {computation.timestamp!r} is not an ISO-8601 date-time",
            computation.timestamp,
        )


def validate(card: SustainabilityModelCard) -> list[Diagnostic]:
    """Return every semantic diagnostic for *card*, in document order."""
    sink = DiagnosticSink(card.positions)

    for platform in card.platforms:
        credit = platform.carbon_offset_credit
        if credit is not None and _check_unit(sink, credit.path, credit.unit, OFFSET_UNITS, "carbon_offset_credit"):
            if credit.unit == PERCENTAGE:
                if not 0.0 <= credit.value <= 100.0:
                    sink.emit("E007", credit.path + ("value",), "offset percentage must lie within [0, 100]", credit.value)
            elif credit.value < 0:
                sink.emit("E011", credit.path + ("value",), "carbon_offset_credit must not be negative", credit.value)
        if platform.energy_mix is not None:
            for entry in platform.energy_mix:
                if not 0.0 <= entry.ratio <= 100.0:
                    sink.emit("E007", entry.path + ("ratio",), "energy mix ratio must lie within [0, 100]", entry.ratio)
            total = sum(entry.ratio for entry in platform.energy_mix) / 100.0
            if abs(total - 1.0) > MIX_SUM_TOLERANCE:
                sink.emit(
                    "W101",
                    platform.path + ("energy_mix",),
                    f"energy mix of platform {platform.name!r} sums to {total * 100:g}% instead of 100%",
                    f"{total * 100:g}",
                )

    for source in card.energy_sources:
        if source.type and EnergyType.lookup(source.type) is None:
            sink.emit(
                "E006",
                source.path + ("type",),
                f"unknown energy type {source.type!r}; expected one of {_choices(t.value for t in EnergyType)}",
                source.type,
            )
        if source.co2_per_kWh is not None:
            _check_unit(sink, source.path, source.unit, UNITS[Family.CARBON], "co2_per_kWh")
            if source.co2_per_kWh < 0:
                sink.emit("E011", source.path + ("co2_per_kWh",), "co2_per_kWh must not be negative", source.co2_per_kWh)

    if card.training is not None:
        _check_computation(sink, card.training)
        duration = card.training.hour_duration
        if duration is not None and duration < 0:
            sink.emit("E011", card.training.path + ("hour_duration",), "hour_duration must not be negative", duration)

    for task in card.inference:
        if task.inference_type and InferenceType.lookup(task.inference_type) is None:
            sink.emit(
                "E005",
                task.path + ("inference_type",),
                f"unknown inference type {task.inference_type!r}",
                task.inference_type,
            )
        _check_computation(sink, task)

    return in_document_order(sink.items + resolve_references(card))
