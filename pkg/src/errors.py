"""Exception hierarchy shared by the engine, the CLI and the API."""
from typing import Optional


class CycleMateError(Exception):
    """Base class for every error raised on purpose by CycleMate."""


# ── Input / construction ─────────────────────────────────────────────────────

class InvalidFacet(CycleMateError, ValueError):
    pass


class InvalidLabel(CycleMateError, ValueError):
    pass


class EmptyComplex(CycleMateError, ValueError):
    pass


class UnknownVertex(CycleMateError, ValueError):
    pass


class InvalidField(CycleMateError, ValueError):
    pass


class ComplexParseError(CycleMateError, ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{message}")


class UnknownEntry(CycleMateError, ValueError):
    pass


# ── Structural preconditions ─────────────────────────────────────────────────

class NotPure(CycleMateError, ValueError):
    pass


class DimensionRange(CycleMateError, ValueError):
    pass


class ForeignFace(CycleMateError, ValueError):
    pass


class ChainMismatch(CycleMateError, ValueError):
    pass


class EmptySupport(CycleMateError, ValueError):
    pass


class TooFewVertices(CycleMateError, ValueError):
    pass


class VertexClash(CycleMateError, ValueError):
    pass


class IncompleteAssignment(CycleMateError, ValueError):
    pass


# ── Searches ─────────────────────────────────────────────────────────────────

class OracleTooLarge(CycleMateError):
    pass


class SearchBudgetExceeded(CycleMateError):
    pass


class SearchCancelled(CycleMateError):
    pass


class InvariantViolation(CycleMateError, AssertionError):
    """A postcondition the engine guarantees did not hold."""


class NotACycle(CycleMateError, ValueError):
    pass
