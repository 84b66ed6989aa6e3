"""Skew polynomials over k[[X]] (the ring S) and k((X)) (the ring T).

Multiplication follows theta * r = alpha(r) * theta.  A :class:`SkewPoly`
stores its nonzero theta-coefficients as Laurent series sharing one
absolute precision ``prec``: every coefficient is known modulo X^prec.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ContextError, NonUnitLeading, NotAUnit, PrecisionError
from .fields import Field, make_field
from .series import Automorphism, LaurentSeries, PowerSeries

S = "S"
T = "T"


class OreRing:
    """Working context: base field, automorphism, precision N and valuation bound.

    Elements of S are known modulo X^N; Laurent coefficients of elements of
    T may have valuation down to ``-vmax``.
    """

    def __init__(self, field: Field | str | None = None, q=2, prec: int = 16, vmax: int = 32):
        if not isinstance(field, Field):
            field = make_field(field)
        if prec < 1:
            raise ValueError("precision must be positive")
        self.field = field
        self.prec = prec
        self.vmax = vmax
        inner = prec + vmax
        if isinstance(q, PowerSeries):
            qs = q
        elif isinstance(q, str):
            from .parsing import parse_series

            qs = parse_series(q, field, inner)
        elif isinstance(q, (list, tuple)):
            qs = PowerSeries(field, list(q), inner)
        else:
            qs = PowerSeries(field, [field.coerce(q)], inner)
        # q is taken to be exact (a polynomial), so padding is truthful
        qs = qs.extend(inner) if qs.prec < inner else qs.truncate(inner)
        if not qs.is_unit():
            raise NotAUnit("q must have nonzero constant term")
        self.alpha = Automorphism(qs)

    @property
    def q(self) -> PowerSeries:
        return self.alpha.q.truncate(self.prec)

    def __repr__(self):
        return f"OreRing({self.field}, q={self.q}, prec={self.prec})"

    # -- element constructors --------------------------------------------------

    def series(self, coeffs, start: int = 0, prec: int | None = None) -> LaurentSeries:
        prec = self.prec if prec is None else prec
        return LaurentSeries.from_dense(self.field, start, [self.field.coerce(c) for c in coeffs], prec)

    def const(self, c) -> LaurentSeries:
        return LaurentSeries.monomial(self.field, c, 0, self.prec)

    def element(self, coeffs, context: str = S, prec: int | None = None) -> SkewPoly:
        """Build an element from ``{i: coefficient}`` or a list indexed by theta-degree.

        Coefficients may be LaurentSeries, PowerSeries, field elements, ints, or
        lists of X-coefficients.
        """
        if isinstance(coeffs, (list, tuple)):
            coeffs = dict(enumerate(coeffs))
        out = {}
        for i, c in coeffs.items():
            if isinstance(c, LaurentSeries):
                out[i] = c
            elif isinstance(c, PowerSeries):
                out[i] = c.to_laurent()
            elif isinstance(c, (list, tuple)):
                out[i] = self.series(c)
            else:
                out[i] = self.const(c)
        return SkewPoly(self, out, context, prec)

    def zero(self, context: str = S) -> SkewPoly:
        return SkewPoly(self, {}, context)

    def one(self, context: str = S) -> SkewPoly:
        return self.element({0: 1}, context)

    @property
    def theta(self) -> SkewPoly:
        return self.element({1: 1})

    @property
    def X(self) -> SkewPoly:
        return self.element({0: [0, 1]})

    def X_power(self, k: int) -> SkewPoly:
        ctx = S if k >= 0 else T
        return SkewPoly(self, {0: LaurentSeries.monomial(self.field, 1, k, self.prec)}, ctx)

    def parse(self, src: str) -> SkewPoly:
        from .parsing import parse_element

        return parse_element(src, self)


class SkewPoly:
    """A finite sum of c_i theta^i with Laurent coefficients known mod X^prec."""

    __slots__ = ("ring", "coeffs", "context", "prec")

    def __init__(self, ring: OreRing, coeffs: dict, context: str = S, prec: int | None = None):
        if context not in (S, T):
            raise ContextError(f"unknown context {context!r}")
        p = ring.prec if prec is None else min(prec, ring.prec)
        for c in coeffs.values():
            p = min(p, c.prec)
        if p < -ring.vmax:
            raise PrecisionError(f"precision {p} exhausted (below -vmax={-ring.vmax})")
        kept = {}
        for i, c in coeffs.items():
            if i < 0:
                raise ValueError("negative theta exponent")
            c = c.truncate(p)
            if c.val is None:
                continue
            if c.val < -ring.vmax:
                raise PrecisionError(f"valuation {c.val} below -vmax={-ring.vmax}")
            if context == S and c.val < 0:
                raise ContextError("coefficient with negative valuation in context S")
            kept[i] = c
        self.ring = ring
        self.coeffs = dict(sorted(kept.items()))
        self.context = context
        self.prec = p

    # -- basic accessors ---------------------------------------------------------

    @property
    def degree(self) -> int | None:
        return max(self.coeffs) if self.coeffs else None

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int) -> LaurentSeries:
        c = self.coeffs.get(i)
        return c if c is not None else LaurentSeries.zero(self.ring.field, self.prec)

    def lead(self) -> LaurentSeries:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[self.degree]

    def min_valuation(self) -> int | None:
        vals = [c.val for c in self.coeffs.values()]
        return min(vals) if vals else None

    def is_monic(self) -> bool:
        if not self.coeffs:
            return False
        ld = self.lead()
        return ld.val == 0 and ld.coeffs[0] == self.ring.field.one and not any(ld.coeffs[1:])

    def with_context(self, context: str) -> SkewPoly:
        return SkewPoly(self.ring, self.coeffs, context, self.prec)

    def to_T(self) -> SkewPoly:
        return self if self.context == T else self.with_context(T)

    def to_S(self) -> SkewPoly:
        return self.with_context(S)

    def truncate(self, prec: int) -> SkewPoly:
        return SkewPoly(self.ring, self.coeffs, self.context, prec)

    # -- arithmetic --------------------------------------------------------------

    def _join(self, other) -> str:
        if not isinstance(other, SkewPoly):
            raise TypeError(f"cannot combine SkewPoly with {type(other).__name__}")
        if other.ring is not self.ring:
            raise ContextError("elements belong to different rings")
        return T if T in (self.context, other.context) else S

    def __add__(self, other):
        if not isinstance(other, SkewPoly):
            other = self.ring.element({0: other}, self.context)
        ctx = self._join(other)
        prec = min(self.prec, other.prec)
        zero = LaurentSeries.zero(self.ring.field, prec)
        out = {}
        for i in set(self.coeffs) | set(other.coeffs):
            out[i] = self.coeffs.get(i, zero) + other.coeffs.get(i, zero)
        return SkewPoly(self.ring, out, ctx, prec)

    __radd__ = __add__

    def __neg__(self):
        return SkewPoly(self.ring, {i: -c for i, c in self.coeffs.items()}, self.context, self.prec)

    def __sub__(self, other):
        if not isinstance(other, SkewPoly):
            other = self.ring.element({0: other}, self.context)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, SkewPoly):
            other = self.ring.element({0: other}, self.context)
        return skew_mul(self, other)

    def __rmul__(self, other):
        return skew_mul(self.ring.element({0: other}, self.context), self)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        out = self.ring.one(self.context)
        for _ in range(n):
            out = out * self
        return out

    def scale_left(self, c: LaurentSeries) -> SkewPoly:
        """c * self for a coefficient c."""
        ctx = T if (c.val is not None and c.val < 0) else self.context
        return skew_mul(SkewPoly(self.ring, {0: c}, ctx), self)

    def shift_x(self, k: int) -> SkewPoly:
        """X^k * self (coefficient-wise shift)."""
        ctx = self.context if k >= 0 else T
        return SkewPoly(self.ring, {i: c.shift(k) for i, c in self.coeffs.items()}, ctx, self.prec + k)

    def equals(self, other: SkewPoly, prec: int | None = None) -> bool:
        """Equality modulo X^min(prec of both, prec)."""
        diff = self - other
        if prec is not None:
            diff = diff.truncate(prec)
        return diff.is_zero()

    def __eq__(self, other):
        if not isinstance(other, SkewPoly):
            return NotImplemented
        return self.equals(other)

    __hash__ = None

    def map_coeffs(self, fn) -> SkewPoly:
        return SkewPoly(self.ring, {i: fn(i, c) for i, c in self.coeffs.items()}, self.context, self.prec)

    # -- output ------------------------------------------------------------------

    def to_text(self) -> str:
        """Parseable text; coefficients are written without the O(X^prec) tail."""
        from .series import format_series

        if not self.coeffs:
            return "0"
        parts = []
        for i, c in self.coeffs.items():
            body = format_series(self.ring.field, c.val, c.coeffs, c.prec, big_o=False)
            if i == 0:
                parts.append(f"({body})")
            elif i == 1:
                parts.append(f"({body})*theta")
            else:
                parts.append(f"({body})*theta^{i}")
        return " + ".join(parts)

    def __str__(self):
        return f"{self.to_text()}  [mod X^{self.prec}, {self.context}]"

    def __repr__(self):
        return f"SkewPoly({self})"

    def to_json(self) -> dict:
        return {
            "context": self.context,
            "prec": self.prec,
            "coeffs": {str(i): c.to_json() for i, c in self.coeffs.items()},
        }

    @classmethod
    def from_json(cls, ring: OreRing, data: dict) -> SkewPoly:
        coeffs = {int(i): LaurentSeries.from_json(ring.field, c) for i, c in data["coeffs"].items()}
        return cls(ring, coeffs, data.get("context", S), data.get("prec"))


# -- operations ----------------------------------------------------------------------


def skew_mul(a: SkewPoly, b: SkewPoly, strict: bool = True) -> SkewPoly:
    """Ore product with theta^i r = alpha^i(r) theta^i.

    With ``strict`` a product whose top coefficient is lost to truncation
    raises PrecisionError; otherwise the truncated product is returned.
    """
    ctx = a._join(b)
    ring = a.ring
    va, vb = a.min_valuation(), b.min_valuation()
    # unknown tails O(X^prec) of one factor meet the smallest valuation of the other
    prec = min(a.prec + (vb if vb is not None else b.prec), b.prec + (va if va is not None else a.prec))
    prec = min(prec, ring.prec)
    if a.is_zero() or b.is_zero():
        return SkewPoly(ring, {}, ctx, prec)
    alpha = ring.alpha
    out: dict[int, LaurentSeries] = {}
    twisted: dict[int, list] = {}
    for i, ai in a.coeffs.items():
        tw = twisted.get(i)
        if tw is None:
            tw = twisted[i] = [(j, alpha.apply(bj, i)) for j, bj in b.coeffs.items()]
        for j, bj in tw:
            term = ai * bj
            k = i + j
            out[k] = out[k] + term if k in out else term
    result = SkewPoly(ring, out, ctx, prec)
    if strict and result.degree != a.degree + b.degree:
        raise PrecisionError("leading coefficient of product vanishes at working precision")
    return result


@dataclass
class DivisionResult:
    quotient: SkewPoly
    remainder: SkewPoly
    side: str  # "right": z = q*d + r ; "left": z = d*q + r

    @property
    def prec(self) -> int:
        return min(self.quotient.prec, self.remainder.prec)


def _check_divisor(d: SkewPoly, ctx: str):
    if d.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if ctx == S and d.lead().val != 0:
        raise NonUnitLeading("leading coefficient of divisor is not a unit of R")


def right_divmod(z: SkewPoly, d: SkewPoly) -> DivisionResult:
    """z = quotient * d + remainder with deg remainder < deg d."""
    ctx = z._join(d)
    _check_divisor(d, ctx)
    ring = z.ring
    n = d.degree
    dn = d.lead()
    inv_cache: dict[int, LaurentSeries] = {}
    quot: dict[int, LaurentSeries] = {}
    r = z.with_context(ctx) if z.context != ctx else z
    while not r.is_zero() and r.degree >= n:
        m = r.degree
        k = m - n
        inv = inv_cache.get(k)
        if inv is None:
            inv = inv_cache[k] = ring.alpha.apply(dn, k).inverse()
        c = r.lead() * inv
        quot[k] = c
        step = skew_mul(SkewPoly(ring, {k: c}, ctx), d)
        r = r - step
        if m in r.coeffs:
            # the leading term cancels by construction
            r = SkewPoly(ring, {i: x for i, x in r.coeffs.items() if i != m}, ctx, r.prec)
    q = SkewPoly(ring, quot, ctx, r.prec if quot else None)
    return DivisionResult(q, r, "right")


def left_divmod(z: SkewPoly, d: SkewPoly) -> DivisionResult:
    """z = d * quotient + remainder with deg remainder < deg d."""
    ctx = z._join(d)
    _check_divisor(d, ctx)
    ring = z.ring
    n = d.degree
    dn_inv = d.lead().inverse()
    quot: dict[int, LaurentSeries] = {}
    r = z.with_context(ctx) if z.context != ctx else z
    while not r.is_zero() and r.degree >= n:
        m = r.degree
        k = m - n
        # d_n alpha^n(c) = lead(r)
        c = ring.alpha.apply(dn_inv * r.lead(), -n)
        quot[k] = c
        step = skew_mul(d, SkewPoly(ring, {k: c}, ctx))
        r = r - step
        if m in r.coeffs:
            r = SkewPoly(ring, {i: x for i, x in r.coeffs.items() if i != m}, ctx, r.prec)
    q = SkewPoly(ring, quot, ctx, r.prec if quot else None)
    return DivisionResult(q, r, "left")


def monic_normalize(a: SkewPoly) -> tuple[SkewPoly, LaurentSeries]:
    """Return (lead^{-1} * a, lead^{-1})."""
    inv = a.lead().inverse()
    ctx = T if inv.val < 0 else a.context
    return skew_mul(SkewPoly(a.ring, {0: inv}, ctx), a), inv


@dataclass
class GcrdResult:
    g: SkewPoly
    u: SkewPoly
    v: SkewPoly

    def __iter__(self):
        return iter((self.g, self.u, self.v))


def _euclid(a: SkewPoly, b: SkewPoly):
    """Right Euclidean algorithm in T with cofactors.

    Returns (g, u, v, s, t) with u*a + v*b = g and s*a + t*b = 0, where g
    is the last nonzero remainder.  Each remainder is rescaled on the left
    by a power of X so that its smallest valuation is 0; this changes
    neither the left ideals involved nor any relative precision, but keeps
    the uniform absolute precision from being eaten by negative valuations.
    """
    a, b = a.to_T(), b.to_T()
    ring = a.ring
    one, zero = ring.one(T), ring.zero(T)
    k0, k1 = -a.min_valuation(), -b.min_valuation()
    r0, r1 = a.shift_x(k0), b.shift_x(k1)
    u0, v0, u1, v1 = ring.X_power(k0).to_T(), zero, zero, ring.X_power(k1).to_T()
    while not r1.is_zero():
        dr = right_divmod(r0, r1)
        qk, rem = dr.quotient, dr.remainder
        k = 0 if rem.is_zero() else -rem.min_valuation()
        nu = (u0 - skew_mul(qk, u1, strict=False)).shift_x(k)
        nv = (v0 - skew_mul(qk, v1, strict=False)).shift_x(k)
        r0, r1 = r1, rem.shift_x(k)
        u0, u1 = u1, nu
        v0, v1 = v1, nv
    return r0, u0, v0, u1, v1


def gcrd(a: SkewPoly, b: SkewPoly) -> GcrdResult:
    """Monic generator g of Ta + Tb with u*a + v*b = g."""
    if a.is_zero() and b.is_zero():
        raise ValueError("gcrd of two zeros")
    if a.is_zero() or b.is_zero():
        c = b if a.is_zero() else a
        g, inv = monic_normalize(c.to_T())
        lead = SkewPoly(c.ring, {0: inv}, T)
        zero = c.ring.zero(T)
        return GcrdResult(g, zero, lead) if a.is_zero() else GcrdResult(g, lead, zero)
    g, u, v, _, _ = _euclid(a, b)
    g, inv = monic_normalize(g)
    lead = SkewPoly(a.ring, {0: inv}, T)
    return GcrdResult(g, lead * u, lead * v)


def lclm(a: SkewPoly, b: SkewPoly) -> SkewPoly:
    """Monic generator of Ta ∩ Tb (least common left multiple).

    Computed as s*a (equivalently -t*b) from the Euclidean cofactors; of the
    two products the one whose leading term survives truncation is used.
    """
    if a.is_zero() or b.is_zero():
        raise ValueError("lclm needs nonzero arguments")
    g, _, _, s, t = _euclid(a, b)
    want = a.degree + b.degree - g.degree
    for m in (skew_mul(s, a.to_T(), strict=False), skew_mul(t, b.to_T(), strict=False)):
        if not m.is_zero() and m.degree == want:
            return monic_normalize(m)[0]
    raise PrecisionError("lclm lost its leading coefficient at working precision")


def lift_to_S(t: SkewPoly) -> tuple[SkewPoly, int]:
    """Least n with X^n * t in S; returns (X^n * t, n), where X^n t is not in XS."""
    if t.is_zero():
        raise ValueError("cannot lift zero")
    n = -t.min_valuation()
    return t.shift_x(n).with_context(S), n
