"""Exception hierarchy.

Everything raised on purpose by this package derives from ``AlphaError`` so
callers (notably the CLI) can map failures onto exit codes.
"""

from __future__ import annotations


class AlphaError(ValueError):
    """Base class for all package errors."""


class InvalidMatrix(AlphaError):
    """Reliability matrix violates its shape or value invariants."""


class DataError(AlphaError):
    """Input data cannot support the requested computation."""


class NoPairableUnits(DataError):
    """Every unit has fewer than two present scores."""


class InsufficientScores(DataError):
    """Fewer than two present scores overall."""


class IncompleteData(DataError):
    """A computation that needs a complete matrix found a missing cell."""


class DegenerateData(AlphaError):
    """Expected disagreement is zero, so alpha is undefined."""


class DomainError(DataError):
    """A score lies outside the domain of the selected distance."""


class GroupTooSmall(AlphaError):
    """An MRPP group has fewer than two members."""


class EmptySample(AlphaError):
    """Quantile requested from an empty sample."""


class ResampleDegenerate(AlphaError):
    """A bootstrap replicate stayed unpairable after all permitted redraws."""


class EvalError(DataError):
    """A user distance expression produced an invalid value."""


class ParseError(AlphaError):
    """Malformed distance expression.

    ``position`` is a 0-based character offset into the source; it may equal
    ``len(source)`` when the input ends too early.
    """

    def __init__(self, message: str, position: int, expected: str | None = None):
        self.message = message
        self.position = position
        self.expected = expected
        text = f"{message} at offset {position}"
        if expected:
            text += f" (expected {expected})"
        super().__init__(text)


class UnknownIdentifier(ParseError):
    """Name other than x, y, pi or a supported function."""


class IngestError(DataError):
    """Problem reading a reliability matrix from delimited text."""


class EmptyFile(IngestError):
    pass


class RaggedRows(IngestError):
    def __init__(self, row: int, expected: int, found: int):
        self.row = row
        super().__init__(f"row {row} has {found} fields, expected {expected}")


class UnparseableCell(IngestError):
    def __init__(self, row: int, column: int, content: str):
        self.row = row
        self.column = column
        self.content = content
        super().__init__(f"row {row}, column {column}: cannot parse {content!r} as a number")
