"""Exception hierarchy for the whole package.

Everything raised on purpose derives from QuiverRepError, so callers can
catch one type at the boundary.  Parse-stage errors carry a source
location; math-stage errors carry enough context to name the offending
arrow, vertex, or level.
"""

from __future__ import annotations


class QuiverRepError(Exception):
    """Base class for all errors raised by this package."""


class FieldMismatch(QuiverRepError):
    """Operands live over different fields."""


class ShapeMismatch(QuiverRepError):
    """A matrix has the wrong shape for its slot."""


class NoSolution(QuiverRepError):
    """A linear system c.X = d has no solution."""


class NotInjective(QuiverRepError):
    """Columns expected to be independent are dependent."""


class DependentColumns(QuiverRepError):
    """A subspace basis argument has dependent columns."""


class DuplicateId(QuiverRepError):
    """A vertex or arrow id is declared twice."""


class DanglingEndpoint(QuiverRepError):
    """An arrow references an undeclared vertex."""


class CyclicQuiver(QuiverRepError):
    """A directed cycle where an acyclic quiver is required."""


class NonCommutingSquare(QuiverRepError):
    """A morphism candidate breaks a commuting square.

    Attributes name the square (arrow id, or connector level and arrow
    pair) and the first deviating entry.
    """

    def __init__(self, where: str, entry: tuple[int, int], deviation):
        self.where = where
        self.entry = entry
        self.deviation = deviation
        super().__init__(
            f"square does not commute at {where}: "
            f"entry {entry} deviates by {deviation}"
        )


class QuiverMismatch(QuiverRepError):
    """Operands are attached to different quivers."""


class ComponentQuiverMismatch(QuiverRepError):
    """An n-representation component is not a representation of its slot's quiver."""


class EndpointMismatch(QuiverRepError):
    """Morphisms do not compose or do not share endpoints."""


class IndexOutOfRange(QuiverRepError, IndexError):
    """A level or component index is outside 1..n."""


class ZeroRep(QuiverRepError):
    """Indecomposability is undefined for the zero representation."""


class ZeroNRep(QuiverRepError):
    """Indecomposability is undefined for the zero n-representation."""


class TooLarge(QuiverRepError):
    """A brute-force enumeration would exceed its cap."""


class CandidateNotAnnihilating(QuiverRepError):
    """A universal-property candidate arrow does not compose with f to zero."""


class RationalsNotSupportedForExhaustive(QuiverRepError):
    """The exhaustive oracle needs a finite field."""


class ParseError(QuiverRepError):
    """Syntax error in the text format, with a source location."""

    def __init__(self, message: str, line: int, col: int):
        self.line = line
        self.col = col
        super().__init__(f"line {line}, col {col}: {message}")


class UnresolvedName(ParseError):
    """A referenced name is not declared (yet)."""
