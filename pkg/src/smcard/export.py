"""Render cards as canonical YAML, JSON, Markdown or model-card frontmatter."""

from __future__ import annotations

import enum
import json
from collections.abc import Iterable
from dataclasses import dataclass
from typing import Any

import yaml

from .analysis import CardSummary, card_summary
from .diagnostics import Diagnostic
from .errors import MissingTraining
from .model import Computation, MetricValue, SustainabilityModelCard, Task
from .parser import ROOT_KEY

__all__ = [
    "ExportFormat",
    "RenderOptions",
    "card_to_dict",
    "to_canonical_yaml",
    "to_json",
    "to_markdown",
    "to_hf_frontmatter",
    "render",
]


class ExportFormat(str, enum.Enum):
    CANONICAL_YAML = "yaml"
    JSON = "json"
    MARKDOWN = "markdown"
    HF_FRONTMATTER = "frontmatter"


@dataclass(frozen=True)
class RenderOptions:
    format: ExportFormat = ExportFormat.CANONICAL_YAML
    include_warnings: bool = False
    # Markdown only: drop declared units and show canonical ones alone
    canonical_only: bool = False


class _Number(str):
    """A float already rendered as its shortest round-tripping literal."""


def _number(value: float) -> _Number:
    return _Number(repr(float(value)))


def _metric(metric: MetricValue, number) -> dict:
    return {"value": number(metric.value), "unit": metric.unit}


def _computation(computation: Computation, number) -> dict:
    data: dict[str, Any] = {}
    if isinstance(computation, Task):
        data["inference_type"] = computation.inference_type
    else:
        data["hour_duration"] = None if computation.hour_duration is None else number(computation.hour_duration)
    data["platform"] = computation.platform
    for key in ("carbon_emissions", "energy_consumption", "water_consumption"):
        metric = getattr(computation, key)
        if metric is not None:
            data[key] = _metric(metric, number)
    if computation.timestamp is not None:
        data["timestamp"] = computation.timestamp
    return data


def card_to_dict(card: SustainabilityModelCard, number=float) -> dict:
    """The concrete-syntax structure of *card* as plain dicts and lists.

    Sections and keys follow the canonical order. *number* formats every
    numeric field.
    """
    meta = card.meta_data
    body: dict[str, Any] = {
        "meta_data": {
            "name": meta.name,
            "version": meta.version,
            "model_type": meta.model_type,
            "provider": meta.provider,
            "license": meta.license,
        }
    }
    if card.platforms:
        platforms = []
        for platform in card.platforms:
            item: dict[str, Any] = {
                "name": platform.name,
                "hardware": platform.hardware,
                "provider": platform.provider,
                "region": platform.region,
            }
            if platform.carbon_offset_credit is not None:
                credit = platform.carbon_offset_credit
                item["carbon_offset_credit"] = {"value": number(credit.value), "unit": credit.unit}
            if platform.energy_mix is not None:
                item["energy_mix"] = [
                    {"energy_mix": {"ratio": number(entry.ratio), "energy_source": entry.energy_source}}
                    for entry in platform.energy_mix
                ]
            platforms.append({"platform": item})
        body["platforms"] = platforms
    if card.energy_sources:
        body["energy_sources"] = [
            {
                "energy_source": {
                    "name": source.name,
                    "type": source.type,
                    "co2_per_kWh": number(source.co2_per_kWh),
                    "unit": source.unit,
                }
            }
            for source in card.energy_sources
        ]
    if card.training is not None:
        body["training"] = _computation(card.training, number)
    if card.inference:
        body["inference"] = [{"task": _computation(task, number)} for task in card.inference]
    return {ROOT_KEY: body}


class _CardDumper(yaml.SafeDumper):
    """Block-style dumper that indents sequences under their key.

    Every string is emitted plain when the YAML syntax allows it; the card
    reader never resolves tags, so only null-looking strings need quotes.
    """

    def increase_indent(self, flow=False, indentless=False):
        return super().increase_indent(flow, False)

    def resolve(self, kind, value, implicit):
        tag = super().resolve(kind, value, implicit)
        if kind is yaml.ScalarNode and implicit[0] and tag != "tag:yaml.org,2002:null":
            return "tag:yaml.org,2002:str"
        return tag


_CardDumper.add_representer(_Number, lambda dumper, data: dumper.represent_str(str(data)))


def to_canonical_yaml(card: SustainabilityModelCard) -> str:
    """Emit *card* in the concrete syntax, in canonical section and key order."""
    return yaml.dump(
        card_to_dict(card, _number),
        Dumper=_CardDumper,
        sort_keys=False,
        default_flow_style=False,
        allow_unicode=True,
        width=10_000,
        indent=2,
    )


def to_json(card: SustainabilityModelCard, diagnostics: Iterable[Diagnostic] | None = None) -> str:
    data: dict[str, Any] = card_to_dict(card)
    if diagnostics is not None:
        data["diagnostics"] = [d.to_dict() for d in diagnostics]
    return json.dumps(data, indent=2, ensure_ascii=False)


def _fmt(value: float) -> str:
    return f"{value:.12g}"


def _cell(text: str) -> str:
    return text.replace("|", "\\|").replace("\n", " ")


def _quantity(metric: MetricValue, canonical_only: bool) -> str:
    canonical = metric.normalized()
    if canonical_only:
        return f"{_fmt(canonical.value)} {canonical.unit}"
    shown = f"{_fmt(metric.value)} {metric.unit}"
    if canonical.unit != metric.unit:
        shown += f" ({_fmt(canonical.value)} {canonical.unit})"
    return shown


def _impact_table(computation: Computation, options: RenderOptions) -> list[str]:
    rows = []
    hours = getattr(computation, "hour_duration", None)
    if hours is not None:
        rows.append(("Training duration", f"{_fmt(hours)} h"))
    labels = (
        ("energy_consumption", "Energy consumption"),
        ("carbon_emissions", "Carbon emissions"),
        ("water_consumption", "Water consumption"),
    )
    for key, label in labels:
        metric = getattr(computation, key)
        if metric is not None:
            rows.append((label, _quantity(metric, options.canonical_only)))
    rows.append(("Platform", _cell(computation.platform)))
    if computation.timestamp is not None:
        rows.append(("Measured at", _cell(computation.timestamp)))
    return ["| Metric | Value |", "| --- | --- |"] + [f"| {label} | {value} |" for label, value in rows]


def to_markdown(
    card: SustainabilityModelCard,
    summary: CardSummary | None = None,
    options: RenderOptions = RenderOptions(ExportFormat.MARKDOWN),
    diagnostics: Iterable[Diagnostic] = (),
) -> str:
    """Render a human-readable card document in Markdown."""
    summary = summary or card_summary(card)
    meta = card.meta_data
    lines = [f"# Sustainability Model Card: {meta.name}", ""]
    lines += ["| Field | Value |", "| --- | --- |"]
    for label, value in (
        ("Name", meta.name),
        ("Version", meta.version),
        ("Model type", meta.model_type),
        ("Provider", meta.provider),
        ("License", meta.license),
    ):
        lines.append(f"| {label} | {_cell(value)} |")

    if card.training is not None:
        lines += ["", "## Environmental Impact (Training)", ""]
        lines += _impact_table(card.training, options)

    for task in card.inference:
        lines += ["", f"## Environmental Impact (Inference: {task.inference_type})", ""]
        lines += _impact_table(task, options)

    if card.platforms:
        lines += ["", "## Platforms"]
        for platform, platform_summary in zip(card.platforms, summary.platforms):
            lines += ["", f"### {platform.name}", ""]
            lines.append(f"- Hardware: {platform.hardware}")
            lines.append(f"- Provider: {platform.provider}")
            lines.append(f"- Region: {platform.region}")
            credit = platform.carbon_offset_credit
            if credit is not None:
                if credit.is_percentage:
                    lines.append(f"- Carbon offset credit: {_fmt(credit.value)}%")
                else:
                    lines.append(f"- Carbon offset credit: {_fmt(credit.value)} {credit.unit}")
            if platform_summary.intensity_gCO2eq_per_kWh is not None:
                lines.append(f"- Carbon intensity: {_fmt(platform_summary.intensity_gCO2eq_per_kWh)} gCO2eq/kWh")
            if platform.energy_mix:
                lines += ["", "| Energy source | Type | Share | Intensity |", "| --- | --- | --- | --- |"]
                for entry in platform.energy_mix:
                    source = card.energy_source(entry.energy_source)
                    if source is None:
                        kind, intensity = "", ""
                    else:
                        kind = source.type
                        if options.canonical_only:
                            intensity = f"{_fmt(source.grams_per_kwh)} gCO2eq/kWh"
                        else:
                            intensity = f"{_fmt(source.co2_per_kWh)} {source.unit}/kWh"
                    lines.append(
                        f"| {_cell(entry.energy_source)} | {_cell(kind)} | {_fmt(entry.ratio)}% | {intensity} |"
                    )

    warnings = [d for d in diagnostics if not d.is_error]
    if options.include_warnings and warnings:
        lines += ["", "## Validation Notes", ""]
        lines += [f"- {d.code}: {_cell(d.message)}" for d in warnings]
    return "\n".join(lines) + "\n"


def _plain_number(value: float) -> int | float:
    return int(value) if float(value).is_integer() and abs(value) < 2**53 else value


def to_hf_frontmatter(card: SustainabilityModelCard) -> str:
    """Training emissions as a ``co2_eq_emissions`` model-card header fragment.

    ``emissions`` is in grams of CO2eq. Platform fields come from the
    platform the training section references.
    """
    training = card.training
    if training is None:
        raise MissingTraining(f"card {card.meta_data.name!r} has no training section")
    entry: dict[str, Any] = {}
    if training.carbon_emissions is not None:
        entry["emissions"] = _plain_number(training.carbon_emissions.normalized().value)
    entry["source"] = f"Sustainability Model Card: {card.meta_data.name} {card.meta_data.version}".rstrip()
    platform = card.platform(training.platform)
    if platform is not None:
        entry["geographical_location"] = platform.region
        entry["hardware_used"] = platform.hardware
        entry["cloud_provider"] = platform.provider
        credit = platform.carbon_offset_credit
        if credit is not None:
            if credit.is_percentage:
                entry["carbon_offset_percentage"] = _plain_number(credit.value)
            else:
                entry["carbon_offset_kgCO2eq"] = _plain_number(credit.value)
    if training.hour_duration is not None:
        entry["training_duration_hours"] = _plain_number(training.hour_duration)
    if training.energy_consumption is not None:
        entry["energy_consumed_Wh"] = _plain_number(training.energy_consumption.normalized().value)
    return yaml.safe_dump(
        {"co2_eq_emissions": entry}, sort_keys=False, default_flow_style=False, allow_unicode=True
    )


def render(
    card: SustainabilityModelCard,
    options: RenderOptions = RenderOptions(),
    diagnostics: Iterable[Diagnostic] = (),
) -> str:
    fmt = ExportFormat(options.format)
    if fmt is ExportFormat.CANONICAL_YAML:
        return to_canonical_yaml(card)
    if fmt is ExportFormat.JSON:
        return to_json(card, list(diagnostics) if options.include_warnings else None) + "\n"
    if fmt is ExportFormat.MARKDOWN:
        return to_markdown(card, card_summary(card), options, diagnostics)
    return to_hf_frontmatter(card)
