"""Exception hierarchy for card processing."""

from __future__ import annotations


class CardError(Exception):
    """Base class for every error raised by smcard."""


class UnknownUnitError(CardError, ValueError):
    """A unit symbol is not part of any known unit family."""


class UnitFamilyMismatch(CardError, ValueError):
    """Two units were combined that measure different quantities."""


class PercentageOutOfRange(CardError, ValueError):
    """A percentage-scale value lies outside [0, 100]."""


class CardSyntaxError(CardError):
    """The document is not well-formed YAML.

    ``line`` and ``column`` are 1-based; either may be ``None`` when the
    underlying parser does not report a position.
    """

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(f"{message}{where}")
        self.reason = message


class EmptyDocumentError(CardSyntaxError):
    """The document contains no YAML node at all."""


class DuplicateKeyError(CardSyntaxError):
    """A mapping repeats one of its keys."""


class FatalStructure(CardError):
    """The document root cannot be interpreted as a card.

    ``code`` is the diagnostic code the condition maps to: E001 when the
    root key is absent, E002 when a root node has the wrong kind.
    """

    def __init__(self, message: str, code: str = "E002"):
        super().__init__(message)
        self.code = code


class EmptyMix(CardError, ValueError):
    """A platform has no usable energy mix."""


class EmptyComparison(CardError, ValueError):
    """No card supplies the requested ranking criterion."""


class MissingTraining(CardError, ValueError):
    """An export needs a training section the card does not have."""
