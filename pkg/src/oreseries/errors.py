"""Exception hierarchy."""


class OreSeriesError(Exception):
    """Base class for library errors."""


class NotAUnit(OreSeriesError, ArithmeticError):
    """Inverting a series with zero constant term (or a zero series)."""


class PrecisionError(OreSeriesError):
    """Precision mismatch, exhaustion, or a valuation below the configured bound."""


class ContextError(OreSeriesError):
    """Element used outside its ring context (e.g. a Laurent coefficient in S)."""


class NonUnitLeading(OreSeriesError):
    """S-context division by a polynomial whose leading coefficient is not a unit of R."""


class HypothesisFails(OreSeriesError):
    """Input does not satisfy the hypothesis of a constructive lemma."""

    def __init__(self, clause: str):
        super().__init__(clause)
        self.clause = clause


class ShapeError(OreSeriesError):
    """Input does not have the required taxonomy shape."""


class ParseError(OreSeriesError, ValueError):
    def __init__(self, message: str, position: int | None = None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position
