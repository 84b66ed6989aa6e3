"""Exact base fields: the rationals and prime fields GF(p).

Elements are plain arithmetic objects (``gmpy2.mpq`` for the rationals,
sympy's modular integers for GF(p)), so series code can use ``+ - * /``
without knowing which field it runs over.  The :class:`Field` wrapper
knows how to build, parse, print and sample them.
"""

from __future__ import annotations

import random
from fractions import Fraction

import gmpy2
from sympy import GF, QQ, isprime


class Field:
    """Common interface of the supported coefficient fields."""

    name: str
    characteristic: int

    def __init__(self, domain):
        self.domain = domain
        self.zero = domain.zero
        self.one = domain.one

    def __call__(self, value):
        raise NotImplementedError

    def __eq__(self, other):
        return type(self) is type(other) and self.characteristic == other.characteristic

    def __hash__(self):
        return hash((type(self).__name__, self.characteristic))

    def __repr__(self):
        return self.name

    def coerce(self, value):
        """Return ``value`` unchanged if it already is an element, else convert it."""
        if isinstance(value, self.domain.dtype):
            return value
        return self(value)

    def conv(self, a, b, n: int) -> list:
        """Cauchy product of two coefficient sequences, truncated to length n."""
        zero = self.zero
        out = [zero] * n
        nb = min(len(b), n)
        for i in range(min(len(a), n)):
            ai = a[i]
            if not ai:
                continue
            for j in range(min(nb, n - i)):
                bj = b[j]
                if bj:
                    out[i + j] += ai * bj
        return out

    def parse(self, text: str):
        """Parse an integer or ``num/den`` literal."""
        text = text.strip()
        if "/" in text:
            num, den = text.split("/", 1)
            return self(int(num)) / self(int(den))
        return self(int(text))

    def to_str(self, x) -> str:
        raise NotImplementedError

    def random_element(self, rng: random.Random, size: int = 3):
        raise NotImplementedError


class RationalField(Field):
    name = "QQ"
    characteristic = 0

    def __init__(self):
        super().__init__(QQ)

    def __call__(self, value):
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, Fraction):
            return gmpy2.mpq(value.numerator, value.denominator)
        return gmpy2.mpq(value)

    def to_str(self, x) -> str:
        x = gmpy2.mpq(x)
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"

    def random_element(self, rng, size=3):
        num = rng.randint(-size, size)
        den = rng.choice((1, 1, 1, 2, 3))
        return gmpy2.mpq(num, den)


class PrimeField(Field):
    def __init__(self, p: int):
        if p < 2 or not isprime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.name = f"GF({p})"
        super().__init__(GF(p, symmetric=False))
        # residues are immutable, so small fields share one object per residue
        self._elements = [self.domain(i) for i in range(p)] if p <= 1 << 12 else None

    def __call__(self, value):
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, (Fraction,)) or type(value).__name__ == "mpq":
            return self.domain(int(value.numerator)) / self.domain(int(value.denominator))
        return self.domain(int(value))

    def conv(self, a, b, n: int) -> list:
        # plain ints are several times faster than modular-integer objects
        p = self.p
        ai = [x.val for x in a[:n]]
        bi = [x.val for x in b[:n]]
        out = [0] * n
        nb = len(bi)
        for i, x in enumerate(ai):
            if x:
                for j in range(min(nb, n - i)):
                    out[i + j] += x * bi[j]
        elems = self._elements
        if elems is not None:
            return [elems[v % p] for v in out]
        return [self.domain.dtype(v % p) for v in out]

    def to_str(self, x) -> str:
        return str(int(x) % self.p)

    def random_element(self, rng, size=3):
        return self.domain(rng.randrange(self.p))


def make_field(spec: str | int | None = None) -> Field:
    """Build a field from ``"q"``/``"QQ"`` or ``"fp:<p>"``/``"GF(p)"``/an int."""
    if spec is None:
        return RationalField()
    if isinstance(spec, int):
        return PrimeField(spec)
    s = spec.strip().lower()
    if s in ("q", "qq", "rationals"):
        return RationalField()
    if s.startswith("fp:"):
        return PrimeField(int(s[3:]))
    if s.startswith("gf(") and s.endswith(")"):
        return PrimeField(int(s[3:-1]))
    raise ValueError(f"unknown field {spec!r}; use 'q' or 'fp:<p>'")
