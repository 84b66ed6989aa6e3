"""Normal forms and shape classification of elements of S.

An element is written as X^a * unit * core * theta^b, where ``unit`` is a
nonzero scalar of k making ``core mod X`` monic (or equal to 1).  The
shape of the core is one of the syntactic classes unit / A / B / C.
Shapes say nothing about irreducibility by themselves.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from enum import Enum

from .errors import ContextError
from .ore import S, SkewPoly


class Shape(str, Enum):
    UNIT = "unit"
    A_X = "A:X"
    A_THETA = "A:theta"
    B = "B"
    C = "C"


@dataclass
class NormalizationCertificate:
    x_exp: int
    theta_exp: int
    unit: object  # scalar of k
    core: SkewPoly
    shape: Shape
    core_shape: Shape
    f: list | None = None  # coefficients of core mod X when the core is type C
    atoms: list = dc_field(default_factory=list)

    @property
    def n(self) -> int | None:
        return None if self.f is None else len(self.f) - 1

    def reassemble(self) -> SkewPoly:
        """X^a * unit * core * theta^b."""
        ring = self.core.ring
        out = self.core.map_coeffs(lambda i, c: c.scale(self.unit)).shift_x(self.x_exp)
        return out * ring.theta**self.theta_exp

    def to_json(self) -> dict:
        F = self.core.ring.field
        d = {
            "x_exp": self.x_exp,
            "theta_exp": self.theta_exp,
            "unit": F.to_str(self.unit),
            "core": self.core.to_json(),
            "core_text": self.core.to_text(),
            "shape": self.shape.value,
            "core_shape": self.core_shape.value,
            "atoms": self.atoms,
        }
        if self.f is not None:
            d["f"] = [F.to_str(c) for c in self.f]
            d["n"] = self.n
        return d


def reduction_mod_x(z: SkewPoly) -> list:
    """Coefficients of z mod XS as a polynomial in k[theta] (index = degree)."""
    F = z.ring.field
    if z.is_zero():
        return []
    out = [F.zero] * (z.degree + 1)
    for i, c in z.coeffs.items():
        if c.val == 0:
            out[i] = c.coeffs[0]
    while out and not out[-1]:
        out.pop()
    return out


def _require_S(z: SkewPoly):
    if z.context != S:
        if z.min_valuation() is not None and z.min_valuation() < 0:
            raise ContextError("element is not in S")


def strip_and_classify(z: SkewPoly) -> NormalizationCertificate:
    """Strip X^a on the left and theta^b on the right, scale, and classify the core."""
    if z.is_zero():
        raise ValueError("zero has no normal form")
    _require_S(z)
    a = z.min_valuation()
    w = z.shift_x(-a).to_S() if a else z.to_S()
    b = min(w.coeffs)
    if b:
        w = SkewPoly(w.ring, {i - b: c for i, c in w.coeffs.items()}, S, w.prec)
    fbar = reduction_mod_x(w)
    unit = fbar[-1]
    core = w.map_coeffs(lambda i, c: c.scale(1 / unit))
    fbar = [c / unit for c in fbar]
    if core.degree == 0:
        core_shape = Shape.UNIT
    elif len(fbar) == 1:
        core_shape = Shape.B
    else:
        core_shape = Shape.C
    atoms = ["X"] * a + ["theta"] * b
    shape = core_shape
    if core_shape is Shape.UNIT and len(atoms) == 1:
        shape = Shape.A_X if a else Shape.A_THETA
    return NormalizationCertificate(
        x_exp=a,
        theta_exp=b,
        unit=unit,
        core=core,
        shape=shape,
        core_shape=core_shape,
        f=fbar if core_shape is Shape.C else None,
        atoms=atoms,
    )


@dataclass
class EisensteinCertificate:
    degree: int
    leading_valuation: int
    prec: int

    def to_json(self) -> dict:
        return {"certificate": "eisenstein", "degree": self.degree, "prec": self.prec}


@dataclass
class NotApplicable:
    reason: str

    def to_json(self) -> dict:
        return {"certificate": None, "reason": self.reason}


def eisenstein_irreducible(z: SkewPoly):
    """Irreducibility certificate when val z_0 = 0, X | z_i (i >= 1) and X^2 does not divide z_m.

    Never claims reducibility: returns :class:`NotApplicable` otherwise.
    """
    _require_S(z)
    m = z.degree
    if m is None or m < 1:
        return NotApplicable("degree < 1")
    if z.coeff(0).val != 0:
        return NotApplicable("X divides z_0")
    for i, c in z.coeffs.items():
        if i >= 1 and c.val == 0:
            return NotApplicable(f"X does not divide z_{i}")
    if z.prec < 2:
        return NotApplicable("precision too low to decide X^2 | z_m")
    if z.lead().val != 1:
        return NotApplicable("X^2 divides z_m")
    return EisensteinCertificate(degree=m, leading_valuation=1, prec=z.prec)


def condition_co(z: SkewPoly) -> bool:
    """S = XS + zS, i.e. z mod X is a nonzero constant of k[theta]."""
    if z.is_zero():
        return False
    _require_S(z)
    fbar = reduction_mod_x(z)
    return len(fbar) == 1


def extraction_index(z: SkewPoly) -> int | None:
    """Largest index n with a unit coefficient, if 1 <= n < deg z; else None.

    That is the index at which the converse-Eisenstein extraction applies.
    """
    m = z.degree
    if m is None:
        return None
    units = [i for i, c in z.coeffs.items() if c.val == 0]
    if not units:
        return None
    n = max(units)
    return n if 1 <= n < m else None
