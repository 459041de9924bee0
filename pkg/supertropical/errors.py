"""Exception hierarchy shared by all engine layers."""

from __future__ import annotations

from typing import TYPE_CHECKING, Optional

if TYPE_CHECKING:
    from .digraph import CycleWitness


class SupertropicalError(Exception):
    """Base exception for the engine."""


class DimensionMismatch(SupertropicalError, ValueError):
    """Raised when two operands (or a document and its declared n) disagree on size."""

    def __init__(self, left: int, right: int, what: str = "matrix"):
        self.left = left
        self.right = right
        super().__init__(f"DimensionMismatch: {what} dimensions {left} and {right} differ")


class InvalidPermutation(SupertropicalError, ValueError):
    pass


class NotADAG(SupertropicalError):
    """Raised by operations that need an acyclic graph; carries the offending cycle."""

    def __init__(self, cycle: "CycleWitness"):
        self.cycle = cycle
        super().__init__(f"NotADAG: cycle {' -> '.join(map(str, cycle.vertices))}")


class ParseError(SupertropicalError, ValueError):
    """Malformed input document.

    JSON syntax errors carry ``line``/``column``; schema errors carry ``location``,
    a dotted path into the document (e.g. ``generators.0.entries.1``).
    """

    def __init__(
        self,
        message: str,
        line: Optional[int] = None,
        column: Optional[int] = None,
        location: Optional[str] = None,
    ):
        self.line = line
        self.column = column
        self.location = location
        where = ""
        if line is not None:
            where = f" (line {line}, column {column})"
        elif location:
            where = f" (at {location})"
        super().__init__(f"{type(self).__name__}: {message}{where}")


class BadScalar(ParseError):
    pass
