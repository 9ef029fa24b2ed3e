"""Derived quantities over cards: grid intensity, consistency and ranking."""

from __future__ import annotations

import math
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from typing import Any

from .diagnostics import Diagnostic, DiagnosticSink
from .errors import EmptyComparison, EmptyMix
from .model import (
    Computation,
    DocumentPath,
    EnergySource,
    InferenceType,
    MetricValue,
    Platform,
    SustainabilityModelCard,
    Task,
)
from .units import CANONICAL, Family, is_unit

__all__ = [
    "DEFAULT_TOLERANCE",
    "mix_intensity",
    "ConsistencyReport",
    "check_consistency",
    "Criterion",
    "CRITERIA",
    "parse_criterion",
    "RankingEntry",
    "Ranking",
    "compare_cards",
    "CardSummary",
    "card_summary",
]

DEFAULT_TOLERANCE = 0.02


def _source_index(sources: Mapping[str, EnergySource] | Iterable[EnergySource]) -> dict[str, EnergySource]:
    if isinstance(sources, Mapping):
        return dict(sources)
    index: dict[str, EnergySource] = {}
    for source in sources:
        index.setdefault(source.name, source)
    return index


def mix_intensity(platform: Platform, sources: Mapping[str, EnergySource] | Iterable[EnergySource]) -> float:
    """Carbon intensity of *platform*'s energy mix, in gCO2eq per kWh.

    Each source's intensity is weighted by its share of the mix. Ratios are
    renormalized by their actual total, so a mix declared as 60/60 behaves
    like 50/50.

    Raises :class:`EmptyMix` when the platform declares no mix (or only
    zero ratios) and :class:`KeyError` when a mix entry names an unknown
    energy source.
    """
    if not platform.energy_mix:
        raise EmptyMix(f"platform {platform.name!r} declares no energy mix")
    index = _source_index(sources)
    total = sum(entry.ratio for entry in platform.energy_mix) / 100.0
    if total <= 0:
        raise EmptyMix(f"energy mix of platform {platform.name!r} has no positive ratio")
    intensity = 0.0
    for entry in platform.energy_mix:
        try:
            source = index[entry.energy_source]
        except KeyError:
            raise KeyError(f"energy source {entry.energy_source!r} is not declared") from None
        intensity += (entry.ratio / 100.0) / total * source.grams_per_kwh
    return intensity


@dataclass(frozen=True)
class ConsistencyReport:
    """Declared carbon of one computation against energy x grid intensity."""

    subject: str
    inference_type: str | None
    declared_carbon: MetricValue
    implied_carbon: MetricValue
    relative_deviation: float
    within_tolerance: bool
    tolerance: float
    path: DocumentPath = field(default=(), compare=False, repr=False)

    def to_dict(self) -> dict[str, Any]:
        return {
            "subject": self.subject,
            "inference_type": self.inference_type,
            "declared_carbon_gCO2eq": self.declared_carbon.value,
            "implied_carbon_gCO2eq": self.implied_carbon.value,
            "relative_deviation": self.relative_deviation,
            "within_tolerance": self.within_tolerance,
            "tolerance": self.tolerance,
        }


def _relative_deviation(declared: float, implied: float) -> float:
    if implied > 0:
        return abs(declared - implied) / implied
    return 0.0 if declared == 0 else math.inf


def _computations(card: SustainabilityModelCard) -> list[tuple[str, Computation]]:
    found: list[tuple[str, Computation]] = []
    if card.training is not None:
        found.append(("training", card.training))
    for index, task in enumerate(card.inference):
        found.append((f"inference[{index}]", task))
    return found


def _implied_carbon(card: SustainabilityModelCard, computation: Computation) -> float | None:
    energy = computation.energy_consumption
    if energy is None or not is_unit(energy.unit, Family.ENERGY):
        return None
    platform = card.platform(computation.platform)
    if platform is None or not platform.energy_mix:
        return None
    try:
        intensity = mix_intensity(platform, card.energy_sources)
    except (EmptyMix, KeyError, ValueError):
        return None
    return energy.to("kWh") * intensity


def check_consistency(
    card: SustainabilityModelCard, tolerance: float = DEFAULT_TOLERANCE
) -> tuple[list[ConsistencyReport], list[Diagnostic]]:
    """Compare each declared carbon figure with energy x mix intensity.

    A report is produced for the training phase and for every task that
    declares both energy and carbon and runs on a platform with a usable
    energy mix; others are skipped silently. A W102 diagnostic accompanies
    every report whose deviation exceeds *tolerance*.
    """
    sink = DiagnosticSink(card.positions)
    reports: list[ConsistencyReport] = []
    carbon_unit = CANONICAL[Family.CARBON]
    for subject, computation in _computations(card):
        declared = computation.carbon_emissions
        if declared is None or not is_unit(declared.unit, Family.CARBON):
            continue
        implied = _implied_carbon(card, computation)
        if implied is None:
            continue
        declared_g = declared.normalized()
        deviation = _relative_deviation(declared_g.value, implied)
        ok = deviation <= tolerance
        inference_type = computation.inference_type if isinstance(computation, Task) else None
        reports.append(
            ConsistencyReport(
                subject=subject,
                inference_type=inference_type,
                declared_carbon=declared_g,
                implied_carbon=MetricValue(implied, carbon_unit),
                relative_deviation=deviation,
                within_tolerance=ok,
                tolerance=tolerance,
                path=computation.path,
            )
        )
        if not ok:
            sink.emit(
                "W102",
                declared.path,
                f"{subject} declares {declared_g.value:.12g} gCO2eq but energy x grid intensity gives "
                f"{implied:.12g} gCO2eq ({deviation:.2%} off, tolerance {tolerance:.2%})",
                f"{deviation:.6g}",
            )
    return reports, sink.items


@dataclass(frozen=True)
class Criterion:
    phase: str  # "training" or "inference"
    family: Family
    inference_type: str | None = None

    @property
    def name(self) -> str:
        return f"{self.phase}-{self.family.value}"

    @property
    def label(self) -> str:
        return f"{self.name}({self.inference_type})" if self.inference_type else self.name

    @property
    def unit(self) -> str:
        return CANONICAL[self.family]

    def metric(self, card: SustainabilityModelCard) -> MetricValue | None:
        if self.phase == "training":
            computations: list[Computation] = [card.training] if card.training else []
        else:
            computations = card.tasks_of(self.inference_type or "")
        for computation in computations:
            metric = computation.metrics().get(self.family)
            if metric is not None and is_unit(metric.unit, self.family):
                return metric
        return None


CRITERIA = {
    f"{phase}-{family.value}": (phase, family)
    for phase in ("training", "inference")
    for family in (Family.ENERGY, Family.CARBON, Family.WATER)
}


def parse_criterion(name: str, inference_type: str | None = None) -> Criterion:
    """Build a criterion from a name such as ``inference-energy``."""
    try:
        phase, family = CRITERIA[name]
    except KeyError:
        raise ValueError(f"unknown criterion {name!r}; expected one of {', '.join(CRITERIA)}") from None
    if phase == "inference":
        if not inference_type:
            raise ValueError(f"criterion {name!r} needs an inference type")
        if InferenceType.lookup(inference_type) is None:
            raise ValueError(f"unknown inference type {inference_type!r}")
        return Criterion(phase, family, inference_type)
    return Criterion(phase, family)


@dataclass(frozen=True)
class RankingEntry:
    card_name: str
    card_version: str
    criterion: str
    score: float
    unit: str

    def to_dict(self) -> dict[str, Any]:
        return {
            "card_name": self.card_name,
            "card_version": self.card_version,
            "criterion": self.criterion,
            "score": self.score,
            "unit": self.unit,
        }


@dataclass(frozen=True)
class Ranking(Sequence):
    """Ranked entries (lowest impact first) plus the cards left out."""

    criterion: Criterion
    entries: tuple[RankingEntry, ...]
    excluded: tuple[SustainabilityModelCard, ...] = ()

    def __getitem__(self, index):
        return self.entries[index]

    def __len__(self) -> int:
        return len(self.entries)

    def to_dict(self) -> dict[str, Any]:
        return {
            "criterion": self.criterion.label,
            "unit": self.criterion.unit,
            "ranking": [entry.to_dict() for entry in self.entries],
            "excluded": [
                {"card_name": card.meta_data.name, "card_version": card.meta_data.version}
                for card in self.excluded
            ],
        }


def compare_cards(cards: Iterable[SustainabilityModelCard], criterion: Criterion) -> Ranking:
    """Rank *cards* by ascending impact on *criterion*, in canonical units.

    Ties are broken by card name, then version. Cards that do not report
    the criterion are listed in ``excluded``. Raises
    :class:`EmptyComparison` when no card reports it.
    """
    entries: list[RankingEntry] = []
    excluded: list[SustainabilityModelCard] = []
    for card in cards:
        metric = criterion.metric(card)
        if metric is None:
            excluded.append(card)
            continue
        normalized = metric.normalized()
        entries.append(
            RankingEntry(
                card_name=card.meta_data.name,
                card_version=card.meta_data.version,
                criterion=criterion.label,
                score=normalized.value,
                unit=normalized.unit,
            )
        )
    if not entries:
        raise EmptyComparison(f"no card reports {criterion.label}")
    entries.sort(key=lambda e: (e.score, e.card_name, e.card_version))
    excluded.sort(key=lambda c: (c.meta_data.name, c.meta_data.version))
    return Ranking(criterion, tuple(entries), tuple(excluded))


@dataclass(frozen=True)
class ComputationSummary:
    platform: str
    energy_Wh: float | None
    carbon_gCO2eq: float | None
    water_L: float | None
    timestamp: str | None
    inference_type: str | None = None
    hours: float | None = None

    def to_dict(self) -> dict[str, Any]:
        data = {
            "platform": self.platform,
            "energy_Wh": self.energy_Wh,
            "carbon_gCO2eq": self.carbon_gCO2eq,
            "water_L": self.water_L,
            "timestamp": self.timestamp,
        }
        if self.inference_type is not None:
            data = {"inference_type": self.inference_type, **data}
        else:
            data["hour_duration"] = self.hours
        return data


@dataclass(frozen=True)
class PlatformSummary:
    name: str
    hardware: str
    provider: str
    region: str
    intensity_gCO2eq_per_kWh: float | None
    offset_fraction: float | None
    offset_kgCO2eq: float | None
    mix: tuple[tuple[str, float], ...]

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "hardware": self.hardware,
            "provider": self.provider,
            "region": self.region,
            "intensity_gCO2eq_per_kWh": self.intensity_gCO2eq_per_kWh,
            "offset_fraction": self.offset_fraction,
            "offset_kgCO2eq": self.offset_kgCO2eq,
            "energy_mix": [{"energy_source": name, "fraction": share} for name, share in self.mix],
        }


@dataclass(frozen=True)
class CardSummary:
    name: str
    version: str
    model_type: str
    provider: str
    license: str
    training: ComputationSummary | None
    inference: tuple[ComputationSummary, ...]
    platforms: tuple[PlatformSummary, ...]

    def to_dict(self) -> dict[str, Any]:
        return {
            "meta_data": {
                "name": self.name,
                "version": self.version,
                "model_type": self.model_type,
                "provider": self.provider,
                "license": self.license,
            },
            "training": None if self.training is None else self.training.to_dict(),
            "inference": [task.to_dict() for task in self.inference],
            "platforms": [platform.to_dict() for platform in self.platforms],
        }


def _canonical(metric: MetricValue | None) -> float | None:
    if metric is None or metric.family is None:
        return None
    return metric.normalized().value


def _summarize(computation: Computation) -> ComputationSummary:
    return ComputationSummary(
        platform=computation.platform,
        energy_Wh=_canonical(computation.energy_consumption),
        carbon_gCO2eq=_canonical(computation.carbon_emissions),
        water_L=_canonical(computation.water_consumption),
        timestamp=computation.timestamp,
        inference_type=computation.inference_type if isinstance(computation, Task) else None,
        hours=getattr(computation, "hour_duration", None),
    )


def card_summary(card: SustainabilityModelCard) -> CardSummary:
    """Canonicalized view of a valid card, as shown by ``inspect``."""
    platforms = []
    for platform in card.platforms:
        try:
            intensity = mix_intensity(platform, card.energy_sources)
        except (EmptyMix, KeyError, ValueError):
            intensity = None
        credit = platform.carbon_offset_credit
        fraction = kg = None
        if credit is not None:
            if credit.is_percentage:
                fraction = credit.fraction
            else:
                kg = credit.value
        total = sum(entry.ratio for entry in platform.energy_mix or ()) or 1.0
        mix = tuple((entry.energy_source, entry.ratio / total) for entry in platform.energy_mix or ())
        platforms.append(
            PlatformSummary(
                name=platform.name,
                hardware=platform.hardware,
                provider=platform.provider,
                region=platform.region,
                intensity_gCO2eq_per_kWh=intensity,
                offset_fraction=fraction,
                offset_kgCO2eq=kg,
                mix=mix,
            )
        )
    meta = card.meta_data
    return CardSummary(
        name=meta.name,
        version=meta.version,
        model_type=meta.model_type,
        provider=meta.provider,
        license=meta.license,
        training=None if card.training is None else _summarize(card.training),
        inference=tuple(_summarize(task) for task in card.inference),
        platforms=tuple(platforms),
    )
