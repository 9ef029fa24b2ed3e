"""In-memory representation of a Sustainability Model Card.

Objects built by the parser may carry raw, not-yet-validated strings (an
unknown unit, an unknown inference type) so that the validator can report
them. A card is only guaranteed to satisfy the documented invariants once
``validate`` returns no error-severity diagnostic for it.

Every object remembers the document path of the mapping it was read from.
Paths never take part in equality.
"""

from __future__ import annotations

import enum
from collections.abc import Mapping
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone

from . import units
from .units import Family

__all__ = [
    "DocumentPath",
    "format_path",
    "InferenceType",
    "EnergyType",
    "MetricValue",
    "CarbonOffsetCredit",
    "EnergyMixEntry",
    "EnergySource",
    "Platform",
    "MetaData",
    "Computation",
    "Training",
    "Task",
    "SustainabilityModelCard",
    "parse_timestamp",
    "normalize_metric",
]

DocumentPath = tuple  # tuple[str | int, ...]


def format_path(path: DocumentPath) -> str:
    return "/".join(str(segment) for segment in path)


class InferenceType(str, enum.Enum):
    TEXT_GENERATION = "TextGeneration"
    IMAGE_GENERATION = "ImageGeneration"
    TEXT_CLASSIFICATION = "TextClassification"
    IMAGE_CLASSIFICATION = "ImageClassification"
    IMAGE_CAPTIONING = "ImageCaptioning"
    SUMMARIZATION = "Summarization"
    AUTOMATIC_SPEECH_RECOGNITION = "AutomaticSpeechRecognition"
    OBJECT_DETECTION = "ObjectDetection"
    SENTENCE_SIMILARITY = "SentenceSimilarity"
    EXTRACTIVE_QUESTION_ANSWERING = "ExtractiveQuestionAnswering"

    @classmethod
    def lookup(cls, spelling: str) -> InferenceType | None:
        return _INFERENCE_BY_NAME.get(spelling)


class EnergyType(str, enum.Enum):
    FOSSIL = "Fossil"
    RENEWABLE = "Renewable"
    NUCLEAR = "Nuclear"
    MIXED = "Mixed"

    @classmethod
    def lookup(cls, spelling: str) -> EnergyType | None:
        return _ENERGY_BY_NAME.get(spelling)


_INFERENCE_BY_NAME = {member.value: member for member in InferenceType}
_ENERGY_BY_NAME = {member.value: member for member in EnergyType}


def parse_timestamp(text: str) -> datetime | None:
    """Parse an ISO-8601 date-time; return None when *text* is not one.

    Offset-free values are returned naive, exactly as written.
    """
    candidate = text.strip()
    if candidate.endswith(("Z", "z")):
        candidate = candidate[:-1] + "+00:00"
    try:
        return datetime.fromisoformat(candidate)
    except ValueError:
        return None


@dataclass(frozen=True)
class MetricValue:
    """A non-negative magnitude with the unit it was declared in.

    ``unit`` is None when the document omitted it.
    """

    value: float
    unit: str | None
    path: DocumentPath = field(default=(), compare=False, repr=False)

    @property
    def family(self) -> Family | None:
        return units.family_of(self.unit) if units.is_unit(self.unit) else None

    def to(self, unit: str) -> float:
        if self.unit is None:
            raise units.UnknownUnitError("metric has no unit")
        return units.convert(self.value, self.unit, unit)

    def normalized(self) -> MetricValue:
        """Return the metric in its family's canonical unit (Wh, gCO2eq, L)."""
        family = self.family
        if family is None:
            return self
        canonical = units.CANONICAL[family]
        return replace(self, value=self.to(canonical), unit=canonical)

    def __str__(self) -> str:
        return f"{self.value:g} {self.unit}"


def normalize_metric(metric: MetricValue) -> MetricValue:
    return metric.normalized()


@dataclass(frozen=True)
class CarbonOffsetCredit:
    value: float
    unit: str | None
    path: DocumentPath = field(default=(), compare=False, repr=False)

    @property
    def is_percentage(self) -> bool:
        return self.unit == units.PERCENTAGE

    @property
    def fraction(self) -> float | None:
        """Offset as a fraction of emissions, for percentage-scale credits."""
        return units.normalize_percentage(self.value) if self.is_percentage else None


@dataclass(frozen=True)
class EnergyMixEntry:
    ratio: float
    energy_source: str
    path: DocumentPath = field(default=(), compare=False, repr=False)

    @property
    def fraction(self) -> float:
        return units.normalize_percentage(self.ratio)


@dataclass(frozen=True)
class EnergySource:
    name: str
    type: str
    co2_per_kWh: float | None
    unit: str | None
    path: DocumentPath = field(default=(), compare=False, repr=False)

    @property
    def energy_type(self) -> EnergyType | None:
        return EnergyType.lookup(self.type)

    @property
    def grams_per_kwh(self) -> float:
        """Carbon intensity in gCO2eq per kWh."""
        if self.co2_per_kWh is None or self.unit is None:
            raise ValueError(f"energy source {self.name!r} has no usable intensity")
        return units.convert(self.co2_per_kWh, self.unit, units.CANONICAL[Family.CARBON])


@dataclass(frozen=True)
class Platform:
    name: str
    hardware: str = ""
    provider: str = ""
    region: str = ""
    carbon_offset_credit: CarbonOffsetCredit | None = None
    energy_mix: tuple[EnergyMixEntry, ...] | None = None
    path: DocumentPath = field(default=(), compare=False, repr=False)


@dataclass(frozen=True)
class MetaData:
    name: str
    version: str
    model_type: str
    provider: str
    license: str
    path: DocumentPath = field(default=(), compare=False, repr=False)


@dataclass(frozen=True)
class Computation:
    """Shared shape of the training phase and of every inference task."""

    platform: str
    energy_consumption: MetricValue | None = None
    carbon_emissions: MetricValue | None = None
    water_consumption: MetricValue | None = None
    timestamp: str | None = None
    path: DocumentPath = field(default=(), compare=False, repr=False)

    def metrics(self) -> dict[Family, MetricValue]:
        found = {
            Family.ENERGY: self.energy_consumption,
            Family.CARBON: self.carbon_emissions,
            Family.WATER: self.water_consumption,
        }
        return {family: metric for family, metric in found.items() if metric is not None}

    @property
    def measured_at(self) -> datetime | None:
        """Timestamp as an aware instant; offset-free values are taken as UTC."""
        if self.timestamp is None:
            return None
        moment = parse_timestamp(self.timestamp)
        if moment is None:
            return None
        if moment.tzinfo is None:
            moment = moment.replace(tzinfo=timezone.utc)
        return moment

    def _normalized(self):
        return replace(
            self,
            energy_consumption=_norm(self.energy_consumption),
            carbon_emissions=_norm(self.carbon_emissions),
            water_consumption=_norm(self.water_consumption),
        )


def _norm(metric: MetricValue | None) -> MetricValue | None:
    return None if metric is None else metric.normalized()


@dataclass(frozen=True)
class Training(Computation):
    hour_duration: float | None = None


@dataclass(frozen=True)
class Task(Computation):
    inference_type: str = ""

    @property
    def kind(self) -> InferenceType | None:
        return InferenceType.lookup(self.inference_type)


@dataclass(frozen=True)
class SustainabilityModelCard:
    meta_data: MetaData
    platforms: tuple[Platform, ...] = ()
    energy_sources: tuple[EnergySource, ...] = ()
    training: Training | None = None
    inference: tuple[Task, ...] = ()
    path: DocumentPath = field(default=(), compare=False, repr=False)
    # document path -> (line, column), both 1-based
    positions: Mapping[DocumentPath, tuple[int, int]] = field(
        default_factory=dict, compare=False, repr=False
    )

    def platform(self, name: str) -> Platform | None:
        for platform in self.platforms:
            if platform.name == name:
                return platform
        return None

    def energy_source(self, name: str) -> EnergySource | None:
        for source in self.energy_sources:
            if source.name == name:
                return source
        return None

    def tasks_of(self, inference_type: str) -> list[Task]:
        return [task for task in self.inference if task.inference_type == inference_type]

    def normalized(self) -> SustainabilityModelCard:
        """Copy with every metric expressed in its canonical unit."""
        return replace(
            self,
            training=None if self.training is None else self.training._normalized(),
            inference=tuple(task._normalized() for task in self.inference),
        )
