"""Parse, validate, analyze and export Sustainability Model Cards.

A card documents the energy, carbon and water footprint of an ML model's
training and inference, together with the platforms they ran on.

>>> from smcard import load_text
>>> result = load_text(open("card.yaml").read())  # doctest: +SKIP
>>> result.valid, result.card.meta_data.name  # doctest: +SKIP
"""

__version__ = "0.1.0"

from .analysis import (
    DEFAULT_TOLERANCE,
    CardSummary,
    ConsistencyReport,
    Criterion,
    Ranking,
    RankingEntry,
    card_summary,
    check_consistency,
    compare_cards,
    mix_intensity,
    parse_criterion,
)
from .diagnostics import CODES, Diagnostic, Severity, SeveritySummary, severity_summary
from .errors import (
    CardError,
    CardSyntaxError,
    DuplicateKeyError,
    EmptyComparison,
    EmptyDocumentError,
    EmptyMix,
    FatalStructure,
    MissingTraining,
    PercentageOutOfRange,
    UnitFamilyMismatch,
    UnknownUnitError,
)
from .export import (
    ExportFormat,
    RenderOptions,
    card_to_dict,
    render,
    to_canonical_yaml,
    to_hf_frontmatter,
    to_json,
    to_markdown,
)
from .loading import LoadedCard, load_file, load_text
from .model import (
    CarbonOffsetCredit,
    Computation,
    EnergyMixEntry,
    EnergySource,
    EnergyType,
    InferenceType,
    MetaData,
    MetricValue,
    Platform,
    SustainabilityModelCard,
    Task,
    Training,
    format_path,
    normalize_metric,
)
from .parser import build_card, parse_document, resolve_references
from .units import CANONICAL, UNITS, Family, convert, normalize_percentage
from .validator import validate

__all__ = [
    "DEFAULT_TOLERANCE",
    "CardSummary",
    "ConsistencyReport",
    "Criterion",
    "Ranking",
    "RankingEntry",
    "card_summary",
    "check_consistency",
    "compare_cards",
    "mix_intensity",
    "parse_criterion",
    "CODES",
    "Diagnostic",
    "Severity",
    "SeveritySummary",
    "severity_summary",
    "CardError",
    "CardSyntaxError",
    "DuplicateKeyError",
    "EmptyComparison",
    "EmptyDocumentError",
    "EmptyMix",
    "FatalStructure",
    "MissingTraining",
    "PercentageOutOfRange",
    "UnitFamilyMismatch",
    "UnknownUnitError",
    "ExportFormat",
    "RenderOptions",
    "card_to_dict",
    "render",
    "to_canonical_yaml",
    "to_hf_frontmatter",
    "to_json",
    "to_markdown",
    "LoadedCard",
    "load_file",
    "load_text",
    "CarbonOffsetCredit",
    "Computation",
    "EnergyMixEntry",
    "EnergySource",
    "EnergyType",
    "InferenceType",
    "MetaData",
    "MetricValue",
    "Platform",
    "SustainabilityModelCard",
    "Task",
    "Training",
    "format_path",
    "normalize_metric",
    "build_card",
    "parse_document",
    "resolve_references",
    "CANONICAL",
    "UNITS",
    "Family",
    "convert",
    "normalize_percentage",
    "validate",
]
