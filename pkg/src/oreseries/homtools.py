"""Similarity and Bezout (Ext-vanishing) checks in T, qualified by precision and search bounds.

Similarity uses the left-module convention: a ~ b via u when deg a = deg b,
Tu + Tb = T and a*u lies in Tb.  Right multiplication by u then induces an
isomorphism T/Ta -> T/Tb.  Replacing u by its right remainder modulo b keeps
both conditions, so witnesses of degree < deg b always suffice.

Both searches linearize over k: an unknown with coefficients c_{j,e} X^e theta^j
(e in a finite window) maps to truncated coefficient vectors, and sympy's
exact linear algebra finds a kernel vector or a particular solution.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import PrecisionError
from .linalg import nullspace, solve
from .ore import T, SkewPoly, gcrd, right_divmod, skew_mul
from .series import LaurentSeries


@dataclass
class Verdict:
    verified: bool
    clause: str | None = None
    prec: int | None = None

    def __bool__(self):
        return self.verified

    def to_json(self) -> dict:
        return {"verified": self.verified, "clause": self.clause, "prec": self.prec}


@dataclass
class NotFoundUpTo:
    bound: object
    reason: str = "no witness within bounds"

    def to_json(self) -> dict:
        bound = self.bound.to_json() if hasattr(self.bound, "to_json") else self.bound
        return {"kind": "not_found", "bound": bound, "reason": self.reason}


@dataclass
class SimilarityWitness:
    a: SkewPoly
    b: SkewPoly
    u: SkewPoly
    prec: int
    bound: int

    def verify(self) -> Verdict:
        return verify_similarity(self.a, self.b, self.u, self.prec)

    def to_json(self) -> dict:
        au = self.a.to_T() * self.u
        rem = right_divmod(au, self.b.to_T()).remainder.truncate(self.prec)
        return {
            "kind": "similarity",
            "bound": self.bound,
            "prec": self.prec,
            "a": self.a.to_json(),
            "b": self.b.to_json(),
            "u": self.u.to_json(),
            "u_text": self.u.to_text(),
            "residual": rem.to_json(),
        }


@dataclass
class ExtBounds:
    slack: int = 0
    val_window: int = 2

    def to_json(self) -> dict:
        return {"slack": self.slack, "val_window": self.val_window}


@dataclass
class ExtWitness:
    a: SkewPoly
    b: SkewPoly
    u: SkewPoly
    v: SkewPoly
    prec: int
    bounds: ExtBounds

    def residual(self) -> SkewPoly:
        one = self.a.ring.one(T)
        return (self.u * self.a.to_T() + self.b.to_T() * self.v - one).truncate(self.prec)

    def verify(self) -> bool:
        return self.residual().is_zero()

    def to_json(self) -> dict:
        return {
            "kind": "ext",
            "bounds": self.bounds.to_json(),
            "prec": self.prec,
            "a": self.a.to_json(),
            "b": self.b.to_json(),
            "u": self.u.to_json(),
            "v": self.v.to_json(),
            "u_text": self.u.to_text(),
            "v_text": self.v.to_text(),
            "residual": self.residual().to_json(),
        }


# -- similarity --------------------------------------------------------------------------


def verify_similarity(a: SkewPoly, b: SkewPoly, u: SkewPoly, prec: int | None = None) -> Verdict:
    """Check that u witnesses a ~ b: equal degrees, gcrd(u, b) = 1 and a*u in Tb.

    In the PID T, deg lclm(u, b) = deg u + deg b - deg gcrd(u, b).  So once
    gcrd(u, b) = 1 and deg a = deg b, lclm(u, b) and a*u have equal degree,
    and a*u in Tu ∩ Tb makes it a unit multiple of the lclm.  ``prec``
    limits the X-adic precision of the membership check.
    """
    a, b, u = a.to_T(), b.to_T(), u.to_T()
    if a.is_zero() or b.is_zero() or u.is_zero():
        return Verdict(False, "zero argument")
    if a.degree != b.degree:
        return Verdict(False, "degree: similar elements have equal theta-degree")
    au = a * u
    rem = right_divmod(au, b).remainder
    check = rem.prec if prec is None else min(prec, rem.prec)
    if check <= au.min_valuation():
        return Verdict(False, "precision exhausted: a*u is not visible modulo X^prec", check)
    if not rem.truncate(check).is_zero():
        return Verdict(False, "a*u is not a left multiple of b, so lclm(u, b) does not divide it", check)
    if gcrd(u, b).g.degree != 0:
        return Verdict(False, "gcrd(u, b) is not a unit", check)
    return Verdict(True, None, check)


def _basis_columns(fn, degs: int, lo_e: int, hi_e: int, ring):
    """Images of the monomials X^e theta^j under fn, with their common precision."""
    field = ring.field
    images = []
    for j in range(degs):
        for e in range(lo_e, hi_e):
            mono = SkewPoly(ring, {j: LaurentSeries.monomial(field, 1, e, ring.prec)}, T)
            images.append(((j, e), fn(mono)))
    return images


def _matrix(images, nrows_deg: int, lo: int, hi: int):
    rows = []
    for i in range(nrows_deg):
        for lev in range(lo, hi):
            rows.append([img.coeff(i).coeff(lev) for _, img in images])
    return rows


def _levels(images, hi_e: int | None = None):
    """Row range [lo, top) of the truncated system.

    Monomials X^e with e >= hi_e are left out, and they would move images
    by as little as the smallest valuation shift, so rows from hi_e + shift
    on are not trustworthy and are dropped.
    """
    vals = [img.min_valuation() for _, img in images if not img.is_zero()]
    top = min(img.prec for _, img in images)
    lo = min(vals) if vals else top
    if hi_e is not None:
        shifts = [img.min_valuation() - e for (_, e), img in images if not img.is_zero()]
        top = min(top, hi_e + min(shifts + [0]))
    return lo, top


def _poly_from_vector(ring, keys, x, prec) -> SkewPoly:
    field = ring.field
    coeffs: dict[int, LaurentSeries] = {}
    for (j, e), c in zip(keys, x):
        if c:
            term = LaurentSeries.monomial(field, c, e, ring.prec)
            coeffs[j] = coeffs[j] + term if j in coeffs else term
    return SkewPoly(ring, coeffs, T, prec)


def _similarity_attempt(a: SkewPoly, b: SkewPoly, d: int, lo_e: int, rng: random.Random, tries: int):
    ring = a.ring

    def image(m):
        return right_divmod(skew_mul(a, m, strict=False), b).remainder

    # the lowest-valuation monomials fix the usable precision
    hi_e = max(lo_e + 1, _levels(_basis_columns(image, d, lo_e, lo_e + 1, ring))[1])
    images = _basis_columns(image, d, lo_e, hi_e, ring)
    lo, prec = _levels(images, hi_e)
    if prec <= lo:
        return None
    keys = [k for k, _ in images]
    kernel = nullspace(ring.field, _matrix(images, b.degree, lo, prec), len(keys))
    if not kernel:
        return None
    # prefer low degree, few terms, valuation near zero (u = 1 when it works)
    kernel.sort(key=lambda x: (max(k[0] for k, c in zip(keys, x) if c),
                               sum(1 for c in x if c),
                               min(abs(k[1]) for k, c in zip(keys, x) if c)))
    candidates = list(kernel)
    for _ in range(tries):
        combo = [ring.field.zero] * len(keys)
        for vec in kernel:
            c = ring.field.random_element(rng)
            combo = [s + c * t for s, t in zip(combo, vec)]
        candidates.append(combo)
    for x in candidates:
        if not any(x):
            continue
        first = next(c for c in x if c)
        u = _poly_from_vector(ring, keys, [c / first for c in x], hi_e)
        try:
            verdict = verify_similarity(a, b, u, prec)
        except (PrecisionError, ArithmeticError):
            continue
        if verdict:
            return SimilarityWitness(a, b, u, verdict.prec, d)
    return None


def search_similarity(a: SkewPoly, b: SkewPoly, deg_bound: int, val_window: int = 2, seed: int = 0,
                      tries: int = 20):
    """Look for u with deg u < deg_bound witnessing a ~ b.  Semidecision only.

    Degrees beyond deg b are never needed (u can be reduced modulo b), so
    the effective bound is min(deg_bound, deg b).
    """
    a, b = a.to_T(), b.to_T()
    if a.degree != b.degree:
        return NotFoundUpTo(deg_bound, "degree: similar elements have equal theta-degree")
    if b.degree == 0:
        # units of T: everything is a multiple of b, so u = 1 works
        one = a.ring.one(T)
        verdict = verify_similarity(a, b, one)
        if verdict:
            return SimilarityWitness(a, b, one, verdict.prec, deg_bound)
        return NotFoundUpTo(deg_bound, verdict.clause or "no witness within bounds")
    rng = random.Random(seed)
    shift = max(0, -(a.min_valuation() or 0))
    for d in range(1, min(deg_bound, max(b.degree, 1)) + 1):
        for window in sorted({0, val_window, 2 * val_window, 4 * val_window}):
            try:
                wit = _similarity_attempt(a, b, d, -window - shift, rng, tries)
            except PrecisionError:
                continue
            if wit is not None:
                return wit
    return NotFoundUpTo(deg_bound)


# -- Ext vanishing -------------------------------------------------------------------------


def _ext_attempt(a: SkewPoly, b: SkewPoly, bounds: ExtBounds):
    ring = a.ring
    du = max(b.degree + bounds.slack, 1)
    dv = max(a.degree + bounds.slack, 1)
    lo_e = -bounds.val_window
    # the lowest-valuation monomials fix the usable precision
    probe_u = _basis_columns(lambda m: skew_mul(m, a, strict=False), du, lo_e, lo_e + 1, ring)
    probe_v = _basis_columns(lambda m: skew_mul(b, m, strict=False), dv, lo_e, lo_e + 1, ring)
    hi_e = max(lo_e + 1, _levels(probe_u + probe_v)[1])
    img_u = _basis_columns(lambda m: skew_mul(m, a, strict=False), du, lo_e, hi_e, ring)
    img_v = _basis_columns(lambda m: skew_mul(b, m, strict=False), dv, lo_e, hi_e, ring)
    images = img_u + img_v
    lo, prec = _levels(images, hi_e)
    lo = min(lo, 0)
    if prec <= 0:
        raise PrecisionError("no precision left for the Bezout system")
    top = max(img.degree for _, img in images if not img.is_zero()) + 1
    rows = _matrix(images, top, lo, prec)
    one = ring.field.one
    rhs = []
    for i in range(top):
        for lev in range(lo, prec):
            rhs.append(one if (i == 0 and lev == 0) else ring.field.zero)
    x = solve(ring.field, rows, rhs)
    if x is None:
        return None
    nu = len(img_u)
    u = _poly_from_vector(ring, [k for k, _ in img_u], x[:nu], hi_e)
    v = _poly_from_vector(ring, [k for k, _ in img_v], x[nu:], hi_e)
    wit = ExtWitness(a, b, u, v, prec, bounds)
    return wit if wit.verify() else None


def ext_vanishing_search(a: SkewPoly, b: SkewPoly, bounds: ExtBounds | None = None, max_slack: int = 8):
    """Find u, v in T with u*a + b*v = 1 modulo X^prec.

    Tries the given slack first, then escalates 0, 2, 4, ... (doubling) up to
    ``max_slack``.  A miss is reported as NotFoundUpTo, never as a proof of
    non-vanishing.
    """
    a, b = a.to_T(), b.to_T()
    if a.is_zero() or b.is_zero():
        raise ValueError("arguments must be nonzero")
    bounds = ExtBounds() if bounds is None else bounds
    slacks = [bounds.slack]
    s = 2
    while s <= max_slack:
        if s > bounds.slack:
            slacks.append(s)
        s *= 2
    tried = None
    for slack in slacks:
        for window in sorted({0, bounds.val_window}):
            tried = ExtBounds(slack, window)
            try:
                wit = _ext_attempt(a, b, tried)
            except PrecisionError:
                continue
            if wit is not None:
                return wit
    return NotFoundUpTo(tried)
