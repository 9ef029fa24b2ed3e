"""One-call entry points: text or file in, card plus all diagnostics out."""

from __future__ import annotations

import os
from dataclasses import dataclass, field

from .diagnostics import (
    Diagnostic,
    SeveritySummary,
    in_document_order,
    severity_summary,
)
from .errors import CardSyntaxError, FatalStructure
from .model import SustainabilityModelCard
from .parser import build_card, parse_document
from .validator import validate

__all__ = ["LoadedCard", "load_text", "load_file"]


@dataclass(frozen=True)
class LoadedCard:
    """Outcome of reading one document.

    ``card`` is None only when the document could not be read as a card at
    all; the reason is then among ``diagnostics``.
    """

    card: SustainabilityModelCard | None
    diagnostics: list[Diagnostic] = field(default_factory=list)
    source: str = "<string>"

    @property
    def summary(self) -> SeveritySummary:
        return severity_summary(self.diagnostics)

    @property
    def valid(self) -> bool:
        return self.card is not None and self.summary.valid

    @property
    def errors(self) -> list[Diagnostic]:
        return [d for d in self.diagnostics if d.is_error]


def load_text(text: str | bytes, source: str = "<string>") -> LoadedCard:
    """Parse, build and validate *text* in one pass."""
    try:
        tree = parse_document(text)
    except CardSyntaxError as exc:
        return LoadedCard(None, [Diagnostic("E000", (), exc.reason, None, exc.line, exc.column)], source)
    try:
        card, structural = build_card(tree)
    except FatalStructure as exc:
        return LoadedCard(None, [Diagnostic(exc.code, (), str(exc), None, tree.line, tree.column)], source)
    return LoadedCard(card, in_document_order(structural + validate(card)), source)


def load_file(path: str | os.PathLike) -> LoadedCard:
    """Read a UTF-8 card file. I/O errors propagate as :class:`OSError`."""
    with open(path, "rb") as handle:
        data = handle.read()
    return load_text(data, os.fspath(path))
