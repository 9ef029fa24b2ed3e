"""Read card documents written in the YAML concrete syntax.

Parsing happens in two stages. :func:`parse_document` turns text into a
position-carrying tree of scalars, sequences and mappings using PyYAML's
composer (no tag resolution, so ``version: 1.0`` stays the text ``"1.0"``).
:func:`build_card` then walks that tree following the card encoding:

* a class instance is a mapping under its snake_case class name;
* attributes are scalar entries of that mapping;
* composed objects are nested mappings;
* multi-valued parts are sequences whose items are wrapped in their class
  key (``- platform:``, ``- energy_source:``, ``- task:``, ``- energy_mix:``);
* references to platforms and energy sources are given by name.

Platforms and energy sources live in lists directly under the card, and the
``inference`` section is the task sequence itself.
"""

from __future__ import annotations

import re
from collections.abc import Callable
from dataclasses import dataclass, field

import yaml

from .diagnostics import Diagnostic, DiagnosticSink, in_document_order
from .errors import (
    CardSyntaxError,
    DuplicateKeyError,
    EmptyDocumentError,
    FatalStructure,
)
from .model import (
    CarbonOffsetCredit,
    Computation,
    DocumentPath,
    EnergyMixEntry,
    EnergySource,
    MetaData,
    MetricValue,
    Platform,
    SustainabilityModelCard,
    Task,
    Training,
    parse_timestamp,
)

__all__ = [
    "ROOT_KEY",
    "Node",
    "ScalarNode",
    "SequenceNode",
    "MappingNode",
    "parse_document",
    "build_card",
    "resolve_references",
]

ROOT_KEY = "sustainability_model_card"

_NULL_TAG = "tag:yaml.org,2002:null"
_Loader = getattr(yaml, "CSafeLoader", yaml.SafeLoader)
_DECIMAL = re.compile(r"[-+]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][-+]?\d+)?")


@dataclass
class Node:
    line: int
    column: int

    kind = "node"


@dataclass
class ScalarNode(Node):
    value: str = ""
    quoted: bool = False
    null: bool = False

    kind = "scalar"


@dataclass
class SequenceNode(Node):
    items: list[Node] = field(default_factory=list)

    kind = "sequence"


@dataclass
class MappingNode(Node):
    entries: dict[str, Node] = field(default_factory=dict)

    kind = "mapping"


def parse_document(text: str | bytes) -> Node:
    """Parse one YAML document into a :class:`Node` tree.

    Raises :class:`CardSyntaxError` for malformed input,
    :class:`EmptyDocumentError` when there is no content and
    :class:`DuplicateKeyError` when a mapping repeats a key.
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise CardSyntaxError(f"input is not UTF-8: {exc.reason}") from None
    try:
        root = yaml.compose(text, Loader=_Loader)
    except yaml.MarkedYAMLError as exc:
        mark = exc.problem_mark or exc.context_mark
        # at end of input, point at the construct left open instead
        if exc.context_mark is not None and mark is not None and mark.index >= len(text.rstrip()):
            mark = exc.context_mark
        reason = exc.problem or exc.context or "malformed YAML"
        if exc.context and exc.problem:
            reason = f"{reason} ({exc.context})"
        if mark is None:
            raise CardSyntaxError(reason) from None
        raise CardSyntaxError(reason, mark.line + 1, mark.column + 1) from None
    except yaml.YAMLError as exc:
        raise CardSyntaxError(str(exc)) from None
    if root is None:
        raise EmptyDocumentError("document is empty")
    try:
        return _convert(root)
    except RecursionError:
        raise CardSyntaxError("document nests too deeply or contains a recursive alias") from None


def _convert(node: yaml.Node) -> Node:
    line, column = node.start_mark.line + 1, node.start_mark.column + 1
    if isinstance(node, yaml.ScalarNode):
        quoted = node.style in ("'", '"')
        return ScalarNode(
            line,
            column,
            value=node.value,
            quoted=quoted,
            null=not quoted and node.tag == _NULL_TAG,
        )
    if isinstance(node, yaml.SequenceNode):
        return SequenceNode(line, column, items=[_convert(item) for item in node.value])
    entries: dict[str, Node] = {}
    for key_node, value_node in node.value:
        key_line, key_column = key_node.start_mark.line + 1, key_node.start_mark.column + 1
        if not isinstance(key_node, yaml.ScalarNode):
            raise CardSyntaxError("mapping keys must be scalars", key_line, key_column)
        key = key_node.value
        if key in entries:
            raise DuplicateKeyError(f"duplicate key {key!r}", key_line, key_column)
        entries[key] = _convert(value_node)
    return MappingNode(line, column, entries=entries)


def _positions(node: Node, path: DocumentPath, out: dict) -> None:
    out[path] = (node.line, node.column)
    if isinstance(node, MappingNode):
        for key, child in node.entries.items():
            _positions(child, path + (key,), out)
    elif isinstance(node, SequenceNode):
        for index, child in enumerate(node.items):
            _positions(child, path + (index,), out)


class _Builder:
    def __init__(self, positions: dict):
        self.sink = DiagnosticSink(positions)

    # -- node access -------------------------------------------------------

    def mapping(self, node: Node, path: DocumentPath, what: str) -> MappingNode | None:
        if isinstance(node, MappingNode):
            return node
        self.sink.emit("E002", path, f"{what} must be a mapping, found a {node.kind}")
        return None

    def sequence(self, node: Node, path: DocumentPath, what: str) -> list[Node]:
        if isinstance(node, SequenceNode):
            return node.items
        if isinstance(node, ScalarNode) and node.null:
            return []
        self.sink.emit("E002", path, f"{what} must be a sequence, found a {node.kind}")
        return []

    def known_keys(self, mapping: MappingNode, path: DocumentPath, allowed: tuple[str, ...]) -> None:
        for key in mapping.entries:
            if key not in allowed:
                self.sink.emit("W103", path + (key,), f"unknown key {key!r} ignored", key)

    def text(self, mapping: MappingNode, key: str, path: DocumentPath, required: bool = True) -> str:
        node = mapping.entries.get(key)
        if node is None:
            if required:
                self.sink.emit("E001", path, f"missing required key {key!r}", key)
            return ""
        if not isinstance(node, ScalarNode):
            self.sink.emit("E002", path + (key,), f"{key!r} must be a scalar, found a {node.kind}")
            return ""
        if node.null:
            if required:
                self.sink.emit("E001", path + (key,), f"key {key!r} has no value", key)
            return ""
        return node.value

    def number(self, mapping: MappingNode, key: str, path: DocumentPath, required: bool = True) -> float | None:
        node = mapping.entries.get(key)
        if node is None:
            if required:
                self.sink.emit("E001", path, f"missing required key {key!r}", key)
            return None
        where = path + (key,)
        if not isinstance(node, ScalarNode):
            self.sink.emit("E002", where, f"{key!r} must be a number, found a {node.kind}")
            return None
        if node.null:
            if required:
                self.sink.emit("E001", where, f"key {key!r} has no value", key)
            return None
        raw = node.value.strip()
        if not _DECIMAL.fullmatch(raw):
            self.sink.emit("E002", where, f"{key!r} must be a decimal number", node.value)
            return None
        if node.quoted:
            self.sink.emit("W105", where, f"quoted number {node.value!r} read as a number", node.value)
        return float(raw)

    def wrapped_items(self, node: Node, path: DocumentPath, what: str, wrapper: str):
        """Yield (inner mapping, inner path) for each ``- wrapper:`` item."""
        for index, item in enumerate(self.sequence(node, path, what)):
            item_path = path + (index,)
            if not isinstance(item, MappingNode) or wrapper not in item.entries:
                self.sink.emit(
                    "E002",
                    item_path,
                    f"each item of {what} must be wrapped as '- {wrapper}:'",
                )
                continue
            self.known_keys(item, item_path, (wrapper,))
            inner_path = item_path + (wrapper,)
            inner = self.mapping(item.entries[wrapper], inner_path, wrapper)
            if inner is not None:
                yield inner, inner_path

    # -- metamodel classes -------------------------------------------------

    def card(self, node: MappingNode, path: DocumentPath) -> SustainabilityModelCard:
        self.known_keys(
            node, path, ("meta_data", "platforms", "energy_sources", "training", "inference")
        )
        if "meta_data" in node.entries:
            meta_data = self.meta_data(node.entries["meta_data"], path + ("meta_data",))
        else:
            self.sink.emit("E001", path, "missing required key 'meta_data'", "meta_data")
            meta_data = None
        if meta_data is None:
            meta_data = MetaData("", "", "", "", "", path=path + ("meta_data",))

        platforms = []
        if "platforms" in node.entries:
            for inner, inner_path in self.wrapped_items(
                node.entries["platforms"], path + ("platforms",), "platforms", "platform"
            ):
                platforms.append(self.platform(inner, inner_path))

        sources = []
        if "energy_sources" in node.entries:
            for inner, inner_path in self.wrapped_items(
                node.entries["energy_sources"], path + ("energy_sources",), "energy_sources", "energy_source"
            ):
                sources.append(self.energy_source(inner, inner_path))

        training = None
        training_node = node.entries.get("training")
        if training_node is not None and not (isinstance(training_node, ScalarNode) and training_node.null):
            mapping = self.mapping(training_node, path + ("training",), "training")
            if mapping is not None:
                training = self.computation(mapping, path + ("training",), Training)

        tasks = []
        if "inference" in node.entries:
            for inner, inner_path in self.wrapped_items(
                node.entries["inference"], path + ("inference",), "inference", "task"
            ):
                tasks.append(self.computation(inner, inner_path, Task))

        return SustainabilityModelCard(
            meta_data=meta_data,
            platforms=tuple(platforms),
            energy_sources=tuple(sources),
            training=training,
            inference=tuple(tasks),
            path=path,
            positions=self.sink.positions,
        )

    def meta_data(self, node: Node, path: DocumentPath) -> MetaData | None:
        mapping = self.mapping(node, path, "meta_data")
        if mapping is None:
            return None
        keys = ("name", "version", "model_type", "provider", "license")
        self.known_keys(mapping, path, keys)
        values = {key: self.text(mapping, key, path) for key in keys}
        return MetaData(**values, path=path)

    def platform(self, node: MappingNode, path: DocumentPath) -> Platform:
        self.known_keys(
            node,
            path,
            ("name", "hardware", "provider", "region", "carbon_offset_credit", "energy_mix"),
        )
        credit = None
        if "carbon_offset_credit" in node.entries:
            credit_path = path + ("carbon_offset_credit",)
            mapping = self.mapping(node.entries["carbon_offset_credit"], credit_path, "carbon_offset_credit")
            if mapping is not None:
                self.known_keys(mapping, credit_path, ("value", "unit"))
                value = self.number(mapping, "value", credit_path)
                if value is not None:
                    unit = self.text(mapping, "unit", credit_path, required=False) or None
                    credit = CarbonOffsetCredit(value, unit, path=credit_path)

        mix = None
        if "energy_mix" in node.entries:
            mix = []
            for inner, inner_path in self.wrapped_items(
                node.entries["energy_mix"], path + ("energy_mix",), "energy_mix", "energy_mix"
            ):
                self.known_keys(inner, inner_path, ("ratio", "energy_source"))
                ratio = self.number(inner, "ratio", inner_path)
                source = self.text(inner, "energy_source", inner_path)
                if ratio is not None:
                    mix.append(EnergyMixEntry(ratio, source, path=inner_path))
            mix = tuple(mix)

        return Platform(
            name=self.text(node, "name", path),
            hardware=self.text(node, "hardware", path, required=False),
            provider=self.text(node, "provider", path, required=False),
            region=self.text(node, "region", path, required=False),
            carbon_offset_credit=credit,
            energy_mix=mix,
            path=path,
        )

    def energy_source(self, node: MappingNode, path: DocumentPath) -> EnergySource:
        self.known_keys(node, path, ("name", "type", "co2_per_kWh", "unit"))
        return EnergySource(
            name=self.text(node, "name", path),
            type=self.text(node, "type", path),
            co2_per_kWh=self.number(node, "co2_per_kWh", path),
            unit=self.text(node, "unit", path, required=False) or None,
            path=path,
        )

    def metric(self, node: MappingNode, key: str, path: DocumentPath) -> MetricValue | None:
        if key not in node.entries:
            return None
        metric_path = path + (key,)
        mapping = self.mapping(node.entries[key], metric_path, key)
        if mapping is None:
            return None
        self.known_keys(mapping, metric_path, ("value", "unit"))
        value = self.number(mapping, "value", metric_path)
        if value is None:
            return None
        unit = self.text(mapping, "unit", metric_path, required=False) or None
        return MetricValue(value, unit, path=metric_path)

    def computation(self, node: MappingNode, path: DocumentPath, cls: Callable[..., Computation]):
        common = ("platform", "carbon_emissions", "energy_consumption", "water_consumption", "timestamp")
        extra = ("hour_duration",) if cls is Training else ("inference_type",)
        self.known_keys(node, path, extra + common)
        fields = dict(
            platform=self.text(node, "platform", path),
            energy_consumption=self.metric(node, "energy_consumption", path),
            carbon_emissions=self.metric(node, "carbon_emissions", path),
            water_consumption=self.metric(node, "water_consumption", path),
            timestamp=self.text(node, "timestamp", path, required=False) or None,
            path=path,
        )
        if cls is Training:
            fields["hour_duration"] = self.number(node, "hour_duration", path)
        else:
            fields["inference_type"] = self.text(node, "inference_type", path)
        return cls(**fields)

    def note_offset_free_timestamps(self, card: SustainabilityModelCard) -> None:
        computations = ([card.training] if card.training else []) + list(card.inference)
        naive = []
        for computation in computations:
            if computation.timestamp is None:
                continue
            moment = parse_timestamp(computation.timestamp)
            if moment is not None and moment.tzinfo is None:
                naive.append(computation.path + ("timestamp",))
        if naive:
            count = len(naive)
            self.sink.emit(
                "W104",
                naive[0],
                f"{count} timestamp{'s' if count > 1 else ''} without UTC offset read as UTC",
            )


def build_card(tree: Node) -> tuple[SustainabilityModelCard, list[Diagnostic]]:
    """Build a card from a parsed tree, collecting structural diagnostics.

    The returned card is populated as far as the document allows; references
    and value ranges are not checked here (see :func:`smcard.validate`).
    Raises :class:`FatalStructure` when the root is not a mapping holding
    the ``sustainability_model_card`` key.
    """
    if not isinstance(tree, MappingNode):
        raise FatalStructure(f"document root must be a mapping, found a {tree.kind}")
    if ROOT_KEY not in tree.entries:
        raise FatalStructure(f"document has no {ROOT_KEY!r} key", "E001")
    positions: dict = {}
    _positions(tree, (), positions)
    builder = _Builder(positions)
    builder.known_keys(tree, (), (ROOT_KEY,))
    path = (ROOT_KEY,)
    body = tree.entries[ROOT_KEY]
    if not isinstance(body, MappingNode):
        raise FatalStructure(f"{ROOT_KEY!r} must be a mapping, found a {body.kind}")
    card = builder.card(body, path)
    builder.note_offset_free_timestamps(card)
    return card, in_document_order(builder.sink.items)


def resolve_references(card: SustainabilityModelCard) -> list[Diagnostic]:
    """Check every platform and energy-source reference against declarations.

    Emits E010 for each repeated declaration name and E008 for each name
    that matches no declaration.
    """
    sink = DiagnosticSink(card.positions)

    def declared(objects, what: str) -> set[str]:
        seen: set[str] = set()
        for obj in objects:
            if not obj.name:
                continue
            if obj.name in seen:
                sink.emit("E010", obj.path + ("name",), f"{what} name {obj.name!r} is declared more than once", obj.name)
            seen.add(obj.name)
        return seen

    platform_names = declared(card.platforms, "platform")
    source_names = declared(card.energy_sources, "energy source")

    for platform in card.platforms:
        for entry in platform.energy_mix or ():
            if entry.energy_source and entry.energy_source not in source_names:
                sink.emit(
                    "E008",
                    entry.path + ("energy_source",),
                    f"energy source {entry.energy_source!r} is not declared",
                    entry.energy_source,
                )
    computations = ([card.training] if card.training else []) + list(card.inference)
    for computation in computations:
        if computation.platform and computation.platform not in platform_names:
            sink.emit(
                "E008",
                computation.path + ("platform",),
                f"platform {computation.platform!r} is not declared",
                computation.platform,
            )
    return in_document_order(sink.items)
