"""Right-factor extraction, canonical type C forms, and the cb = b'c' rewriting.

The central routine is :func:`extract_right_factor`.  For

    z = f_0 + ... + f_n theta^n + g_{n+1} theta^{n+1} + ... + g_m theta^m

with f_n a unit and every g_i divisible by X, it finds h_0..h_{n-1} in
k[[X]] such that z lies in S * (theta^n - h_{n-1} theta^{n-1} - ... - h_0).
After scaling f_n to 1, the reduction of z modulo that divisor has
theta^i-coefficient f_i + h_i + sum_j g_j y_{i,j-n}(h), where theta^(n+l)
reduces to sum_i y_{i,l} theta^i.  Setting it to zero gives the update
h <- -f - sum_j g_j y_{.,j-n}(h).  Because every g_j lies in X k[[X]], the
X^p part of the right side depends only on the X^(<p) part of h, so each
pass fixes one more X-adic digit.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

from .errors import HypothesisFails, PrecisionError, ShapeError
from .linalg import factor_univariate, poly_divexact, poly_mul, solve
from .ore import S, T, OreRing, SkewPoly, lift_to_S, right_divmod, skew_mul
from .series import LaurentSeries
from .taxonomy import (
    Shape,
    condition_co,
    eisenstein_irreducible,
    extraction_index,
    reduction_mod_x,
    strip_and_classify,
)


@dataclass
class RightFactorWitness:
    """quotient * divisor == input (mod X^prec), divisor = theta^n - sum h_i theta^i."""

    input: SkewPoly
    divisor: SkewPoly
    quotient: SkewPoly
    h: list
    n: int
    prec: int
    passes: int = 0

    def residual(self) -> SkewPoly:
        return (self.quotient * self.divisor - self.input).truncate(self.prec)

    def verify(self) -> bool:
        return self.residual().is_zero() and self.divisor.degree == self.n and self.divisor.is_monic()

    def to_json(self) -> dict:
        return {
            "kind": "right_factor",
            "n": self.n,
            "prec": self.prec,
            "input": self.input.to_json(),
            "divisor": self.divisor.to_json(),
            "quotient": self.quotient.to_json(),
            "divisor_text": self.divisor.to_text(),
            "quotient_text": self.quotient.to_text(),
            "h": [c.to_json() for c in self.h],
            "residual": self.residual().to_json(),
        }


def _as_S(z: SkewPoly) -> SkewPoly:
    if z.context == S:
        return z
    v = z.min_valuation()
    if v is not None and v < 0:
        raise ShapeError("element is not in S")
    return z.to_S()


def _hypothesis_clause(z: SkewPoly) -> str:
    units = [i for i, c in z.coeffs.items() if c.val == 0]
    if not units:
        return "no coefficient is a unit (z lies in XS)"
    n = max(units)
    if n == z.degree:
        return "leading coefficient is a unit, so no X-divisible top part exists"
    return "only the constant coefficient is a unit (need 1 <= n < m)"


def extract_right_factor(z: SkewPoly, max_passes: int | None = None) -> RightFactorWitness:
    """Monic right divisor of degree n when f_n is a unit and all higher coefficients are in XS."""
    z = _as_S(z)
    if z.is_zero():
        raise HypothesisFails("zero element")
    n = extraction_index(z)
    if n is None:
        raise HypothesisFails(_hypothesis_clause(z))
    ring = z.ring
    fn = z.coeff(n)
    scaled = SkewPoly(ring, {0: fn.inverse()}, S) * z
    prec = scaled.prec
    field = ring.field
    zero = LaurentSeries.zero(field, prec)
    h = [LaurentSeries.from_dense(field, 0, [-scaled.coeff(i).coeff(0)], prec) for i in range(n)]
    max_passes = prec + 2 if max_passes is None else max_passes
    theta_n = SkewPoly(ring, {n: LaurentSeries.monomial(field, 1, 0, prec)}, S)
    for passes in range(1, max_passes + 1):
        divisor = theta_n - SkewPoly(ring, dict(enumerate(h)), S, prec)
        rem = right_divmod(scaled, divisor).remainder
        if rem.is_zero():
            break
        h = [h[i] - rem.coeff(i) if i in rem.coeffs else h[i] for i in range(n)]
    else:
        raise PrecisionError(f"fixed point not reached after {max_passes} passes")
    dr = right_divmod(scaled, divisor)
    quotient = SkewPoly(ring, {0: fn}, S) * dr.quotient
    prec = min(quotient.prec, divisor.prec, z.prec)
    h = [x.truncate(prec) if not x.is_zero() else zero.truncate(prec) for x in h]
    wit = RightFactorWitness(z, divisor.truncate(prec), quotient.truncate(prec), h, n, prec, passes)
    if not wit.residual().is_zero():
        raise PrecisionError("extracted factor does not reproduce the input")
    return wit


def theta_power_reductions(h: list, n: int, count: int, ring: OreRing) -> list[list]:
    """y[l][i] with theta^(n+l) = sum_i y[l][i] theta^i modulo S*(theta^n - sum h_i theta^i).

    Built by the recurrence obtained from multiplying by theta on the left:
    theta * sum_i y_i theta^i = sum_i alpha(y_i) theta^(i+1), and the
    theta^n term folds back through h.
    """
    alpha = ring.alpha
    y = [list(h)]
    for _ in range(count):
        prev = y[-1]
        top = alpha.apply(prev[n - 1], 1)
        nxt = []
        for i in range(n):
            term = top * h[i]
            if i >= 1:
                term = term + alpha.apply(prev[i - 1], 1)
            nxt.append(term)
        y.append(nxt)
    return y  # y[l] reduces theta^(n+l)


# -- canonical type C ----------------------------------------------------------------------


@dataclass
class Canonical:
    c_hat: SkewPoly
    u: LaurentSeries  # unit of R with c_hat = u * c

    def to_json(self) -> dict:
        return {"kind": "canonical", "c_hat": self.c_hat.to_json(), "c_hat_text": self.c_hat.to_text(),
                "u": self.u.to_json()}


@dataclass
class ReducibleInstead:
    witness: RightFactorWitness

    def to_json(self) -> dict:
        return {"kind": "reducible", "witness": self.witness.to_json()}


def canonicalize_typeC(c: SkewPoly):
    """Scale a type C shaped element to be monic in theta, or factor it when that is impossible."""
    c = _as_S(c)
    cert = strip_and_classify(c)
    if cert.core_shape is not Shape.C or cert.x_exp or cert.theta_exp:
        raise ShapeError(f"expected a type C shaped element, got {cert.shape.value}")
    lead = c.lead()
    if lead.val == 0:
        u = lead.inverse()
        c_hat = SkewPoly(c.ring, {0: u}, S) * c
        return Canonical(c_hat, u.truncate(c_hat.prec))
    return ReducibleInstead(extract_right_factor(c))


# -- monoid commutativity ---------------------------------------------------------------------


@dataclass
class CommutationWitness:
    c: SkewPoly
    b: SkewPoly
    b_prime: SkewPoly
    c_prime: SkewPoly
    prec: int

    def residual(self) -> SkewPoly:
        return (self.c * self.b - self.b_prime * self.c_prime).truncate(self.prec)

    def checks(self) -> dict[str, bool]:
        cp, bp = self.c_prime, self.b_prime
        return {
            "product": self.residual().is_zero(),
            "deg_b": bp.degree == self.b.degree,
            "deg_c": cp.degree == self.c.degree,
            "b_prime_shape_B": condition_co(bp) and bp.degree >= 1,
            "c_prime_monic": cp.is_monic(),
            "c_prime_const_nonzero": not cp.coeff(0).is_zero(),
            "c_prime_shape_C": strip_and_classify(cp).shape is Shape.C,
        }

    def verify(self) -> bool:
        return all(self.checks().values())

    def to_json(self) -> dict:
        return {
            "kind": "commutation",
            "prec": self.prec,
            "c": self.c.to_json(),
            "b": self.b.to_json(),
            "b_prime": self.b_prime.to_json(),
            "c_prime": self.c_prime.to_json(),
            "b_prime_text": self.b_prime.to_text(),
            "c_prime_text": self.c_prime.to_text(),
            "checks": self.checks(),
            "residual": self.residual().to_json(),
        }


@dataclass
class FalsificationCandidate:
    """commute_CB could not produce a valid witness; kept as data for inspection."""

    c: SkewPoly
    b: SkewPoly
    reason: str
    witness: CommutationWitness | None = None

    def to_json(self) -> dict:
        return {
            "kind": "falsification_candidate",
            "reason": self.reason,
            "c": self.c.to_json(),
            "b": self.b.to_json(),
            "witness": None if self.witness is None else self.witness.to_json(),
        }


def commute_CB(c: SkewPoly, b: SkewPoly):
    """Rewrite c*b as b'*c' with b' of shape B (deg b) and c' monic of degree deg c."""
    c, b = _as_S(c), _as_S(b)
    if not condition_co(b) or b.degree is None or b.degree < 1:
        raise ShapeError("b must have type B shape (unit mod X, theta-degree >= 1)")
    if c.is_monic() and not c.coeff(0).is_zero():
        c_hat, u = c, None
    else:
        canon = canonicalize_typeC(c)
        if isinstance(canon, ReducibleInstead):
            raise ShapeError("c is reducible: it has a monic right factor of lower degree")
        c_hat, u = canon.c_hat, canon.u
    n = c_hat.degree
    cb = c_hat * b
    if extraction_index(cb) != n:
        return FalsificationCandidate(c, b, "converse-Eisenstein hypothesis fails for c*b")
    try:
        wit = extract_right_factor(cb)
    except (HypothesisFails, PrecisionError) as exc:
        return FalsificationCandidate(c, b, f"extraction failed: {exc}")
    b_prime = wit.quotient
    if u is not None:
        b_prime = SkewPoly(c.ring, {0: u.inverse()}, S) * b_prime
    prec = min(wit.prec, b_prime.prec)
    witness = CommutationWitness(c, b, b_prime.truncate(prec), wit.divisor.truncate(prec), prec)
    failed = [k for k, ok in witness.checks().items() if not ok]
    if failed:
        return FalsificationCandidate(c, b, "failed checks: " + ", ".join(failed), witness)
    return witness


# -- best-effort factorization ------------------------------------------------------------------


@dataclass
class Factor:
    element: SkewPoly
    kind: str  # "X", "theta", "unit", "atom_at_precision"
    shape: str | None = None
    certificates: list = dc_field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "shape": self.shape,
            "certificates": self.certificates,
            "element": self.element.to_json(),
            "text": self.element.to_text(),
        }


@dataclass
class FactorizationReport:
    input: SkewPoly
    factors: list[Factor]
    prec: int

    def product(self) -> SkewPoly:
        ring = self.input.ring
        out = ring.one(S)
        for f in self.factors:
            out = out * f.element
        return out

    def verify(self) -> bool:
        return (self.product() - self.input).truncate(self.prec).is_zero()

    def to_json(self) -> dict:
        return {
            "kind": "factorization",
            "prec": self.prec,
            "input": self.input.to_json(),
            "factors": [f.to_json() for f in self.factors],
            "verified": self.verify(),
        }


def _newton_slopes(w: SkewPoly) -> list[int]:
    """Integer slopes of the lower convex hull of the points (i, val(w_i))."""
    pts = sorted((i, c.val) for i, c in w.coeffs.items())
    hull: list[tuple[int, int]] = []
    for p in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (y2 - y1) * (p[0] - x1) >= (p[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(p)
    slopes = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        if (y2 - y1) % (x2 - x1) == 0:
            s = (y2 - y1) // (x2 - x1)
            if s not in slopes:
                slopes.append(s)
    return slopes


def rescale_theta(w: SkewPoly, s: int) -> SkewPoly:
    """Image of w under the ring automorphism of T fixing Q and sending theta to X^s theta."""
    ring = w.ring
    step = ring.X_power(s) * ring.theta
    out = ring.zero(T)
    power = ring.one(T)
    for i in range(w.degree + 1):
        if i in w.coeffs:
            out = out + SkewPoly(ring, {0: w.coeffs[i]}, T) * power
        power = power * step
    return SkewPoly(ring, out.coeffs, T, min(out.prec, w.prec))


def _divisor_candidates(field, fbar: list, limit: int = 64):
    """Monic proper divisors of fbar in k[theta] by increasing degree."""
    facs = factor_univariate(field, fbar)
    m = len(fbar) - 1
    cands = []
    for exps in itertools.product(*[range(k + 1) for _, k in facs]):
        d = [field.one]
        for (f, _), e in zip(facs, exps):
            for _ in range(e):
                d = poly_mul(field, d, f)
        deg = len(d) - 1
        if 1 <= deg < m:
            cands.append((deg, exps, d))
    cands.sort(key=lambda t: (t[0], t[1]))
    return [d for _, _, d in cands[:limit]]


def hensel_right_factor(w: SkewPoly, dbar: list):
    """Lift w mod X = abar * dbar to w = A * D with D monic, one X-adic level at a time.

    Each level is a k-linear system; returns (A, D) or None when some level
    is unsolvable.  Requires a unit leading coefficient.
    """
    ring = w.ring
    field = ring.field
    if w.lead().val != 0:
        return None
    lead = w.lead()
    wm = SkewPoly(ring, {0: lead.inverse()}, S) * w
    fbar = reduction_mod_x(wm)
    abar = poly_divexact(field, fbar, dbar)
    m, d = wm.degree, len(dbar) - 1
    A = ring.element(dict(enumerate(abar)))
    D = ring.element(dict(enumerate(dbar)))
    N = wm.prec

    def mono(j, e):
        return SkewPoly(ring, {j: LaurentSeries.monomial(field, 1, e, ring.prec)}, S)

    for e in range(1, N):
        res = wm - A * D
        rhs = [res.coeff(i).coeff(e) for i in range(m + 1)]
        if not any(rhs):
            continue
        cols = []
        for j in range(m - d + 1):
            prod = mono(j, e) * D
            cols.append([prod.coeff(i).coeff(e) for i in range(m + 1)])
        for j in range(d):
            prod = A * mono(j, e)
            cols.append([prod.coeff(i).coeff(e) for i in range(m + 1)])
        rows = [[col[i] for col in cols] for i in range(m + 1)]
        x = solve(field, rows, rhs)
        if x is None:
            return None
        da = {j: LaurentSeries.monomial(field, x[j], e, ring.prec) for j in range(m - d + 1) if x[j]}
        dd = {j: LaurentSeries.monomial(field, x[m - d + 1 + j], e, ring.prec) for j in range(d) if x[m - d + 1 + j]}
        if da:
            A = A + SkewPoly(ring, da, S)
        if dd:
            D = D + SkewPoly(ring, dd, S)
    A = (SkewPoly(ring, {0: lead}, S) * A).truncate(w.prec)
    D = D.truncate(w.prec)
    if not (A * D - w).is_zero():
        return None
    return A, D


def _split_plain(w: SkewPoly):
    """Try the converse-Eisenstein extraction, then Hensel lifting, on w in S."""
    if extraction_index(w) is not None:
        try:
            wit = extract_right_factor(w)
            return wit.quotient, wit.divisor
        except PrecisionError:
            return None
    if w.lead().val != 0:
        return None
    fbar = reduction_mod_x(w)
    field = w.ring.field
    inv = 1 / fbar[-1]
    for dbar in _divisor_candidates(field, [c * inv for c in fbar]):
        found = hensel_right_factor(w, dbar)
        if found is not None:
            return found
    return None


def _split_rescaled(w: SkewPoly, s: int):
    """Split after the substitution theta -> X^(-s) theta, then map the factor back."""
    try:
        w2, _ = lift_to_S(rescale_theta(w, -s))
        found = _split_plain(w2)
        if found is None:
            return None
        d_back, _ = lift_to_S(rescale_theta(found[1], s))
        dr = right_divmod(w.to_T(), d_back.to_T())
    except (PrecisionError, ArithmeticError):
        return None
    if not dr.remainder.is_zero():
        return None
    quot = dr.quotient
    v = quot.min_valuation()
    if v is None or v < 0:
        return None
    return quot.to_S(), d_back


def _certificates(w: SkewPoly) -> list:
    certs = []
    if w.degree == 1:
        certs.append({"certificate": "degree-one", "prec": w.prec})
    e = eisenstein_irreducible(w)
    if not hasattr(e, "reason"):
        certs.append(e.to_json())
    return certs


def _factor(z: SkewPoly, min_prec: int) -> list[Factor]:
    ring = z.ring
    cert = strip_and_classify(z)
    out: list[Factor] = [Factor(ring.X, "X", Shape.A_X.value) for _ in range(cert.x_exp)]
    tail = [Factor(ring.theta, "theta", Shape.A_THETA.value) for _ in range(cert.theta_exp)]
    w = SkewPoly(ring, {i - cert.theta_exp: c for i, c in z.coeffs.items()}, z.context, z.prec)
    w = w.shift_x(-cert.x_exp).to_S() if cert.x_exp else w.to_S()
    if w.degree == 0:
        one = w.ring.one(S)
        if (w - one).is_zero() and (out or tail):
            return out + tail
        return out + [Factor(w, "unit", Shape.UNIT.value)] + tail
    found = None
    if w.degree >= 2:
        found = _split_plain(w)
        if found is None:
            for s in _newton_slopes(w):
                if s != 0:
                    found = _split_rescaled(w, s)
                    if found is not None:
                        break
    if found is not None and min(found[0].prec, found[1].prec) >= min_prec:
        left, right = found
        return out + _factor(left, min_prec) + _factor(right, min_prec) + tail
    core_cert = strip_and_classify(w)
    return out + [Factor(w, "atom_at_precision", core_cert.core_shape.value, _certificates(w))] + tail


def factor_best_effort(z: SkewPoly, min_prec: int = 1) -> FactorizationReport:
    """Ordered factors whose product reproduces z modulo the reported precision.

    Splits off X and theta atoms, then repeatedly finds right factors by
    the converse-Eisenstein extraction, by X-adic lifting of a factorization
    of z mod X, or after rescaling theta along an integer Newton slope.
    Pieces that resist all of these are reported as atoms at precision,
    together with any irreducibility certificates that apply.
    """
    z = _as_S(z)
    if z.is_zero():
        raise ValueError("cannot factor zero")
    factors = _factor(z, min_prec)
    prec = min([z.prec] + [f.element.prec for f in factors])
    report = FactorizationReport(z, factors, prec)
    # shrink the claimed precision until the round trip holds
    diff = report.product() - z
    while prec > 0 and not diff.truncate(prec).is_zero():
        prec -= 1
    report.prec = prec
    return report
