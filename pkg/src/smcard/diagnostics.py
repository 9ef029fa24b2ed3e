"""Diagnostic records shared by the parser, the validator and the analyses."""

from __future__ import annotations

import enum
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from typing import Any

from .model import DocumentPath, format_path


class Severity(str, enum.Enum):
    ERROR = "Error"
    WARNING = "Warning"


# code -> short title
CODES: dict[str, str] = {
    "E000": "malformed document",
    "E001": "missing key",
    "E002": "wrong node kind",
    "E003": "missing unit",
    "E004": "unknown unit",
    "E005": "unknown inference type",
    "E006": "unknown energy type",
    "E007": "percentage out of range",
    "E008": "unresolved reference",
    "E009": "bad timestamp",
    "E010": "duplicate name",
    "E011": "negative value",
    "W101": "energy mix does not sum to 100%",
    "W102": "declared carbon deviates from implied carbon",
    "W103": "unknown key",
    "W104": "timestamp without UTC offset",
    "W105": "quoted number coerced",
}


def severity_of(code: str) -> Severity:
    return Severity.ERROR if code.startswith("E") else Severity.WARNING


@dataclass(frozen=True)
class Diagnostic:
    code: str
    path: DocumentPath
    message: str
    related_value: str | None = None
    line: int | None = None
    column: int | None = None

    def __post_init__(self):
        if self.code not in CODES:
            raise ValueError(f"unknown diagnostic code {self.code!r}")
        if not self.message:
            raise ValueError("diagnostic message must not be empty")

    @property
    def severity(self) -> Severity:
        return severity_of(self.code)

    @property
    def is_error(self) -> bool:
        return self.severity is Severity.ERROR

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {
            "code": self.code,
            "severity": self.severity.value,
            "path": format_path(self.path),
            "message": self.message,
        }
        if self.related_value is not None:
            data["related_value"] = self.related_value
        if self.line is not None:
            data["line"] = self.line
            data["column"] = self.column
        return data

    def __str__(self) -> str:
        where = f"{self.line}:{self.column}: " if self.line is not None else ""
        return f"{where}{self.code} {self.severity.value.lower()}: {self.message} [{format_path(self.path) or '<root>'}]"


class DiagnosticSink:
    """Collects diagnostics and stamps them with source positions."""

    def __init__(self, positions: Mapping[DocumentPath, tuple[int, int]] | None = None):
        self.positions = positions if positions is not None else {}
        self.items: list[Diagnostic] = []

    def emit(self, code: str, path: DocumentPath, message: str, related_value: object = None) -> None:
        line, column = self.locate(path)
        self.items.append(
            Diagnostic(
                code,
                tuple(path),
                message,
                None if related_value is None else str(related_value),
                line,
                column,
            )
        )

    def locate(self, path: DocumentPath) -> tuple[int | None, int | None]:
        path = tuple(path)
        while path:
            if path in self.positions:
                return self.positions[path]
            path = path[:-1]
        return None, None


def in_document_order(diags: Iterable[Diagnostic]) -> list[Diagnostic]:
    """Stable sort by source position; unpositioned diagnostics come first."""

    def key(diag: Diagnostic):
        if diag.line is None:
            return (0, 0)
        return (diag.line, diag.column or 0)

    return sorted(diags, key=key)


@dataclass(frozen=True)
class SeveritySummary:
    errors: int
    warnings: int

    @property
    def valid(self) -> bool:
        return self.errors == 0

    def to_dict(self) -> dict[str, Any]:
        return {"errors": self.errors, "warnings": self.warnings, "valid": self.valid}


def severity_summary(diags: Iterable[Diagnostic]) -> SeveritySummary:
    diags = list(diags)
    errors = sum(1 for d in diags if d.is_error)
    return SeveritySummary(errors=errors, warnings=len(diags) - errors)
