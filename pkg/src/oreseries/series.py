"""Truncated power series, Laurent series and the automorphism X -> qX.

Every series carries its absolute X-adic precision: a :class:`PowerSeries`
of precision ``N`` is an element of k[[X]] known modulo X^N, and a
:class:`LaurentSeries` of precision ``P`` is an element of k((X)) known
modulo X^P.  Arithmetic never claims more precision than its inputs
justify.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

from .errors import NotAUnit, PrecisionError
from .fields import Field


def _inv(a, n, zero):
    if not a or not a[0]:
        raise NotAUnit("constant term is zero")
    inv0 = 1 / a[0]
    out = [zero] * n
    if n == 0:
        return out
    out[0] = inv0
    for k in range(1, n):
        s = zero
        for j in range(1, min(k, len(a) - 1) + 1):
            if a[j]:
                s += a[j] * out[k - j]
        out[k] = -s * inv0
    return out


class PowerSeries:
    """An element of k[[X]] modulo X^prec."""

    __slots__ = ("field", "coeffs", "prec")

    def __init__(self, field: Field, coeffs, prec: int | None = None):
        coeffs = [field.coerce(c) for c in coeffs]
        if prec is None:
            prec = len(coeffs)
        if prec < 0:
            raise PrecisionError("negative precision")
        coeffs = coeffs[:prec] + [field.zero] * (prec - len(coeffs))
        self.field = field
        self.coeffs = tuple(coeffs)
        self.prec = prec

    @classmethod
    def constant(cls, field, c, prec):
        return cls(field, [field(c)], prec)

    def __getitem__(self, i):
        return self.coeffs[i]

    def __len__(self):
        return self.prec

    def _check(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        if other.prec != self.prec:
            raise PrecisionError(f"precision mismatch: {self.prec} vs {other.prec}")
        return other

    def __add__(self, other):
        other = self._check(other)
        return PowerSeries(self.field, [a + b for a, b in zip(self.coeffs, other.coeffs)], self.prec)

    def __sub__(self, other):
        other = self._check(other)
        return PowerSeries(self.field, [a - b for a, b in zip(self.coeffs, other.coeffs)], self.prec)

    def __neg__(self):
        return PowerSeries(self.field, [-a for a in self.coeffs], self.prec)

    def __mul__(self, other):
        if not isinstance(other, PowerSeries):
            c = self.field.coerce(other)
            return PowerSeries(self.field, [a * c for a in self.coeffs], self.prec)
        other = self._check(other)
        return PowerSeries(self.field, self.field.conv(self.coeffs, other.coeffs, self.prec), self.prec)

    __rmul__ = __mul__

    def inverse(self) -> PowerSeries:
        return PowerSeries(self.field, _inv(self.coeffs, self.prec, self.field.zero), self.prec)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_unit(self) -> bool:
        return self.prec > 0 and bool(self.coeffs[0])

    def valuation(self) -> int | None:
        """Index of the first nonzero coefficient; None for zero at this precision."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    def truncate(self, prec: int) -> PowerSeries:
        return PowerSeries(self.field, self.coeffs, min(prec, self.prec))

    def extend(self, prec: int) -> PowerSeries:
        """Zero-pad to a larger precision.  Only truthful for exact (polynomial) inputs."""
        return PowerSeries(self.field, self.coeffs, prec)

    def __eq__(self, other):
        # equality modulo X^min(prec)
        if isinstance(other, LaurentSeries):
            return other == self
        if not isinstance(other, PowerSeries):
            other = PowerSeries(self.field, [other], self.prec)
        n = min(self.prec, other.prec)
        return self.coeffs[:n] == other.coeffs[:n]

    __hash__ = None

    def to_laurent(self) -> LaurentSeries:
        return LaurentSeries.from_dense(self.field, 0, self.coeffs, self.prec)

    def to_json(self) -> dict:
        return {"val": 0, "prec": self.prec, "coeffs": [self.field.to_str(c) for c in self.coeffs]}

    def __str__(self):
        return format_series(self.field, 0, self.coeffs, self.prec)

    def __repr__(self):
        return f"PowerSeries({self})"


def format_series(field, start, coeffs, prec, big_o=True) -> str:
    terms = []
    for i, c in enumerate(coeffs):
        if not c:
            continue
        e = start + i
        s = field.to_str(c)
        if e == 0:
            terms.append(s)
        else:
            mono = "X" if e == 1 else f"X^{e}" if e > 0 else f"X^({e})"
            if s == "1":
                terms.append(mono)
            elif s == "-1":
                terms.append("-" + mono)
            else:
                terms.append(f"{s}*{mono}")
    out = " + ".join(terms).replace("+ -", "- ") if terms else "0"
    if big_o:
        out += f" + O(X^{prec})"
    return out


class LaurentSeries:
    """An element of k((X)) modulo X^prec.

    ``val`` is the exponent of the first nonzero coefficient and ``coeffs``
    holds the coefficients of X^val, ..., X^(prec-1).  A series that is zero
    at its precision has ``val is None`` and empty ``coeffs``.
    """

    __slots__ = ("field", "val", "coeffs", "prec")

    def __init__(self, field, val, coeffs, prec):
        self.field = field
        self.val = val
        self.coeffs = coeffs
        self.prec = prec

    @classmethod
    def from_dense(cls, field, start, coeffs, prec) -> LaurentSeries:
        """Series whose coefficient of X^(start+i) is ``coeffs[i]``, cut at X^prec."""
        n = prec - start
        coeffs = list(coeffs[: max(n, 0)])
        i = 0
        while i < len(coeffs) and not coeffs[i]:
            i += 1
        if i == len(coeffs):
            return cls.zero(field, prec)
        body = tuple(coeffs[i:]) + (field.zero,) * (n - len(coeffs))
        return cls(field, start + i, body, prec)

    @classmethod
    def zero(cls, field, prec) -> LaurentSeries:
        return cls(field, None, (), prec)

    @classmethod
    def monomial(cls, field, c, e, prec) -> LaurentSeries:
        return cls.from_dense(field, e, [field.coerce(c)], prec)

    @property
    def relprec(self) -> int:
        return 0 if self.val is None else self.prec - self.val

    @property
    def body(self) -> PowerSeries:
        return PowerSeries(self.field, self.coeffs, self.relprec)

    def is_zero(self) -> bool:
        return self.val is None

    def is_unit_in_R(self) -> bool:
        return self.val == 0

    def coeff(self, e: int):
        if e >= self.prec:
            raise PrecisionError(f"coefficient of X^{e} unknown at precision {self.prec}")
        if self.val is None or e < self.val:
            return self.field.zero
        return self.coeffs[e - self.val]

    def dense(self, start: int, stop: int | None = None) -> list:
        stop = self.prec if stop is None else min(stop, self.prec)
        return [self.coeff(e) for e in range(start, stop)]

    def truncate(self, prec: int) -> LaurentSeries:
        if prec >= self.prec:
            return self
        if self.val is None:
            return LaurentSeries.zero(self.field, prec)
        return LaurentSeries.from_dense(self.field, self.val, self.coeffs, prec)

    def __add__(self, other: LaurentSeries) -> LaurentSeries:
        prec = min(self.prec, other.prec)
        if other.val is None:
            return self.truncate(prec)
        if self.val is None:
            return other.truncate(prec)
        start = min(self.val, other.val)
        if start >= prec:
            return LaurentSeries.zero(self.field, prec)
        out = [self.field.zero] * (prec - start)
        for s in (self, other):
            off = s.val - start
            for i, c in enumerate(s.coeffs[: max(prec - s.val, 0)]):
                out[off + i] += c
        return LaurentSeries.from_dense(self.field, start, out, prec)

    def __neg__(self):
        return LaurentSeries(self.field, self.val, tuple(-c for c in self.coeffs), self.prec)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: LaurentSeries) -> LaurentSeries:
        if self.val is None or other.val is None:
            vs = 0 if self.val is None else self.val
            vo = 0 if other.val is None else other.val
            if self.val is None and other.val is None:
                prec = self.prec + other.prec
            elif self.val is None:
                prec = self.prec + vo
            else:
                prec = other.prec + vs
            return LaurentSeries.zero(self.field, prec)
        rel = min(self.relprec, other.relprec)
        body = self.field.conv(self.coeffs, other.coeffs, rel)
        val = self.val + other.val
        return LaurentSeries(self.field, val, tuple(body), val + rel)

    def scale(self, c) -> LaurentSeries:
        if not c:
            return LaurentSeries.zero(self.field, self.prec)
        return LaurentSeries(self.field, self.val, tuple(x * c for x in self.coeffs), self.prec)

    def shift(self, k: int) -> LaurentSeries:
        """Multiply by X^k."""
        val = None if self.val is None else self.val + k
        return LaurentSeries(self.field, val, self.coeffs, self.prec + k)

    def inverse(self) -> LaurentSeries:
        if self.val is None:
            raise NotAUnit("zero Laurent series")
        body = _inv(self.coeffs, self.relprec, self.field.zero)
        return LaurentSeries(self.field, -self.val, tuple(body), -self.val + self.relprec)

    def equals(self, other: LaurentSeries) -> bool:
        """Equality modulo X^min(prec)."""
        return (self - other).is_zero()

    def __eq__(self, other):
        if isinstance(other, PowerSeries):
            other = other.to_laurent()
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return self.equals(other)

    __hash__ = None

    def to_power_series(self, prec: int | None = None) -> PowerSeries:
        prec = self.prec if prec is None else prec
        if prec > self.prec:
            raise PrecisionError("cannot inflate precision")
        if self.val is not None and self.val < 0:
            raise PrecisionError("series has negative valuation")
        return PowerSeries(self.field, self.dense(0, prec), prec)

    def to_json(self) -> dict:
        if self.val is None:
            return {"val": None, "prec": self.prec, "coeffs": []}
        return {"val": self.val, "prec": self.prec, "coeffs": [self.field.to_str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, field, data) -> LaurentSeries:
        if data["val"] is None:
            return cls.zero(field, data["prec"])
        return cls.from_dense(field, data["val"], [field.parse(c) for c in data["coeffs"]], data["prec"])

    def __str__(self):
        if self.val is None:
            return f"O(X^{self.prec})"
        return format_series(self.field, self.val, self.coeffs, self.prec)

    def __repr__(self):
        return f"LaurentSeries({self})"


def series_mul(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    """Product of two power series of equal precision."""
    return a * b


def series_inv(a: PowerSeries) -> PowerSeries:
    """Inverse of a unit power series; raises :class:`NotAUnit` otherwise."""
    return a.inverse()


@dataclass(frozen=True)
class FiniteOrder:
    n: int


@dataclass(frozen=True)
class NoOrderUpTo:
    n_max: int


class Automorphism:
    """The k-algebra automorphism of k[[X]] with X -> qX.

    All internal tables are computed to length ``q.prec``; series longer
    than that cannot be transformed.  For an integer r the image
    alpha^r(X) is X * m_r for a unit series m_r, with m_r = N_r(q) for
    r >= 0.  Tables are filled lazily under a lock, so a shared instance
    is safe to read from several threads.
    """

    def __init__(self, q: PowerSeries):
        if not q.is_unit():
            raise NotAUnit("q must have nonzero constant term")
        self.q = q
        self.field = q.field
        self.prec = q.prec
        self.constant = not any(q.coeffs[1:])
        self._lock = threading.RLock()
        self._mult: dict[int, PowerSeries] = {0: PowerSeries.constant(self.field, 1, self.prec)}
        self._powers: dict[int, list] = {}
        self._norms: dict[int, PowerSeries] = {0: self._mult[0]}
        self._inv_x = None

    # -- unit multipliers m_r and their powers ---------------------------------

    def _multiplier(self, r: int) -> PowerSeries:
        with self._lock:
            m = self._mult.get(r)
            if m is not None:
                return m
            if r > 0:
                m = self.norm(r)
            elif r == -1:
                m = self._inverse_multiplier()
            else:
                m = self._multiplier(-1) * self._apply_ps(self._multiplier(r + 1), -1)
            self._mult[r] = m
            return m

    def _inverse_multiplier(self) -> PowerSeries:
        # solve sum_p u_p X^p q^p = 1/q ... directly: alpha(X*u) = X, i.e. q*alpha(u) = 1
        # coefficientwise: u_m q0^(m+1) + sum_{p<m} u_p [X^(m-p)] q^(p+1) = [m == 0]
        n = self.prec
        F = self.field
        qpow = [PowerSeries.constant(F, 1, n)]
        for _ in range(n + 1):
            qpow.append(qpow[-1] * self.q)
        u = [F.zero] * n
        q0 = self.q[0]
        for m in range(n):
            s = F.one if m == 0 else F.zero
            for p in range(m):
                if u[p]:
                    s -= u[p] * qpow[p + 1][m - p]
            u[m] = s / q0 ** (m + 1)
        return PowerSeries(F, u, n)

    @property
    def inv_x_image(self) -> PowerSeries:
        """t = alpha^{-1}(X), computed by a triangular solve of alpha(t) = X."""
        with self._lock:
            if self._inv_x is None:
                n = self.prec
                F = self.field
                qpow = [PowerSeries.constant(F, 1, n)]
                for _ in range(n):
                    qpow.append(qpow[-1] * self.q)
                t = [F.zero] * n
                q0 = self.q[0]
                for m in range(1, n):
                    s = F.one if m == 1 else F.zero
                    for p in range(1, m):
                        if t[p]:
                            s -= t[p] * qpow[p][m - p]
                    t[m] = s / q0**m
                self._inv_x = PowerSeries(F, t, n)
            return self._inv_x

    def _power_table(self, r: int) -> list:
        with self._lock:
            table = self._powers.get(r)
            if table is None:
                m = self._multiplier(r)
                table = [PowerSeries.constant(self.field, 1, self.prec)]
                for _ in range(1, self.prec):
                    table.append(table[-1] * m)
                self._powers[r] = table
            return table

    def _unit_power(self, r: int, v: int, n: int) -> list:
        """Coefficients of m_r^v truncated to length n (v may be negative)."""
        if self.constant:
            c = self.q[0] ** r if r >= 0 else (1 / self.q[0]) ** (-r)
            return [c**v if v >= 0 else (1 / c) ** (-v)] + [self.field.zero] * (n - 1)
        if 0 <= v < self.prec:
            return list(self._power_table(r)[v].coeffs[:n])
        m = self._multiplier(r)
        if v < 0:
            m = m.inverse()
            v = -v
        out = PowerSeries.constant(self.field, 1, self.prec)
        for _ in range(v):
            out = out * m
        return list(out.coeffs[:n])

    # -- application -----------------------------------------------------------

    def _apply_coeffs(self, coeffs, r: int, n: int) -> list:
        """alpha^r applied to sum_p c_p X^p, truncated to length n."""
        F = self.field
        if n > self.prec:
            raise PrecisionError(f"automorphism tables hold {self.prec} coefficients, need {n}")
        if r == 0:
            return list(coeffs[:n]) + [F.zero] * (n - len(coeffs[:n]))
        if self.constant:
            c = self.q[0] ** r if r >= 0 else (1 / self.q[0]) ** (-r)
            out, cp = [], F.one
            for p in range(n):
                out.append(coeffs[p] * cp if p < len(coeffs) else F.zero)
                cp *= c
            return out
        table = self._power_table(r)
        out = [F.zero] * n
        for p in range(min(n, len(coeffs))):
            cp = coeffs[p]
            if not cp:
                continue
            row = table[p].coeffs
            for j in range(n - p):
                if row[j]:
                    out[p + j] += cp * row[j]
        return out

    def _apply_ps(self, a: PowerSeries, r: int) -> PowerSeries:
        return PowerSeries(self.field, self._apply_coeffs(a.coeffs, r, a.prec), a.prec)

    def apply(self, a, r: int = 1):
        """alpha^r(a) for a PowerSeries or LaurentSeries; precision is preserved."""
        if isinstance(a, PowerSeries):
            return self._apply_ps(a, r)
        if a.val is None or r == 0:
            return a
        rel = a.relprec
        body = self._apply_coeffs(a.coeffs, r, rel)
        if a.val != 0:
            body = self.field.conv(body, self._unit_power(r, a.val, rel), rel)
        return LaurentSeries(self.field, a.val, tuple(body), a.prec)

    def norm(self, n: int) -> PowerSeries:
        """N_n(q) = q alpha(q) ... alpha^{n-1}(q)."""
        if n < 0:
            raise ValueError("norm index must be non-negative")
        with self._lock:
            if n in self._norms:
                return self._norms[n]
            k = max(i for i in self._norms if i <= n)
            acc = self._norms[k]
            # alpha^k(q) obtained by repeated application of alpha
            term = self.q
            for _ in range(k):
                term = self._apply_ps(term, 1)
            while k < n:
                acc = acc * term
                k += 1
                self._norms[k] = acc
                term = self._apply_ps(term, 1)
            return acc

    def __repr__(self):
        return f"Automorphism(q={self.q})"


def apply_auto(alpha: Automorphism, a, r: int = 1):
    return alpha.apply(a, r)


def alpha_norm(alpha: Automorphism, n: int) -> PowerSeries:
    return alpha.norm(n)


def finite_order_check(alpha: Automorphism, n_max: int, prec: int | None = None):
    """Least n <= n_max with N_n(q) = 1 mod X^prec, else NoOrderUpTo(n_max).

    Not finding an order is not a proof that alpha has infinite order.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    prec = alpha.prec if prec is None else prec
    one = PowerSeries.constant(alpha.field, 1, prec)
    for n in range(1, n_max + 1):
        if alpha.norm(n).truncate(prec) == one:
            return FiniteOrder(n)
    return NoOrderUpTo(n_max)
