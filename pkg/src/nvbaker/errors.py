"""Exception hierarchy for the nvbaker library.

Everything raised on purpose derives from NvError so CLI code can catch one
type and turn it into a diagnostic plus exit code 2.
"""

from __future__ import annotations


class NvError(Exception):
    """Base class for all nvbaker errors."""


class DimensionMismatchError(NvError):
    """Operands live in different dimensions."""


class ExponentLimitError(NvError):
    """A cell exponent exceeded the module-wide limit."""


class GeometryError(NvError):
    """Invalid cell or brick construction or query."""


class PartitionError(NvError):
    """A collection of bricks fails to partition the unit cube."""


class ElementError(NvError):
    """Invalid element construction or an operation on incompatible elements."""


class FactorizationError(NvError):
    """A factorization precondition failed or a guard was exceeded."""


class ParseError(NvError):
    """A text format failed to parse.

    Carries an optional (line, column) position, both 1-based; str() includes
    them when known.
    """

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        super().__init__(message)
        self.message = message
        self.line = line
        self.column = column

    def __str__(self) -> str:
        if self.line is not None and self.column is not None:
            return f"line {self.line}, column {self.column}: {self.message}"
        if self.line is not None:
            return f"line {self.line}: {self.message}"
        return self.message


class RenderError(NvError):
    """The renderer cannot draw the given element."""


class ResolutionError(NvError):
    """A grid check was requested at a resolution too coarse to be conclusive."""
