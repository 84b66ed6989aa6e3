"""Exact arithmetic in the skew power-series ring k[[X]][theta; alpha] with alpha(X) = qX."""

from .errors import (
    ContextError,
    HypothesisFails,
    NonUnitLeading,
    NotAUnit,
    OreSeriesError,
    ParseError,
    PrecisionError,
    ShapeError,
)
from .fields import PrimeField, RationalField, make_field
from .ore import S, T, OreRing, SkewPoly, gcrd, lclm, left_divmod, lift_to_S, right_divmod
from .series import Automorphism, LaurentSeries, PowerSeries, finite_order_check

__all__ = [
    "Automorphism",
    "ContextError",
    "HypothesisFails",
    "LaurentSeries",
    "NonUnitLeading",
    "NotAUnit",
    "OreRing",
    "OreSeriesError",
    "ParseError",
    "PowerSeries",
    "PrecisionError",
    "PrimeField",
    "RationalField",
    "S",
    "ShapeError",
    "SkewPoly",
    "T",
    "finite_order_check",
    "gcrd",
    "lclm",
    "left_divmod",
    "lift_to_S",
    "make_field",
    "right_divmod",
]
