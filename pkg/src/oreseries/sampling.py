"""Seeded random elements for property checks and the audit driver."""

from __future__ import annotations

import random

from .ore import S, T, OreRing, SkewPoly
from .series import LaurentSeries


def random_series(ring: OreRing, rng: random.Random, start: int = 0, terms: int | None = None,
                  unit: bool = False, size: int = 3) -> LaurentSeries:
    """Random series X^start * (c_0 + c_1 X + ...); c_0 != 0 when ``unit``."""
    F = ring.field
    terms = ring.prec if terms is None else terms
    coeffs = [F.random_element(rng, size) for _ in range(max(terms, 1))]
    if unit:
        while not coeffs[0]:
            coeffs[0] = F.random_element(rng, size)
    return LaurentSeries.from_dense(F, start, coeffs, ring.prec)


def random_element(ring: OreRing, rng: random.Random, max_deg: int = 4, context: str = S,
                   min_val: int = 0, density: float = 0.8) -> SkewPoly:
    """Random nonzero element with theta-degree <= max_deg and valuations >= min_val."""
    while True:
        deg = rng.randint(0, max_deg)
        coeffs = {}
        for i in range(deg + 1):
            if i == deg or rng.random() < density:
                v = rng.randint(min_val, min_val + 2)
                c = random_series(ring, rng, v, rng.randint(1, 6))
                if not c.is_zero():
                    coeffs[i] = c
        z = SkewPoly(ring, coeffs, context)
        if not z.is_zero():
            return z


def random_unit_T(ring: OreRing, rng: random.Random, max_val: int = 2) -> LaurentSeries:
    """Random nonzero Laurent series, i.e. a unit of T."""
    return random_series(ring, rng, rng.randint(-max_val, max_val), rng.randint(1, 5), unit=True)


def random_type_b(ring: OreRing, rng: random.Random, deg: int | None = None) -> SkewPoly:
    """1 + X*s with theta-degree exactly ``deg`` (random in 1..3 by default)."""
    deg = rng.randint(1, 3) if deg is None else deg
    one = LaurentSeries.monomial(ring.field, 1, 0, ring.prec)
    coeffs = {0: one + random_series(ring, rng, 1, rng.randint(1, 5))}
    for i in range(1, deg + 1):
        if i == deg or rng.random() < 0.7:
            coeffs[i] = random_series(ring, rng, 1, rng.randint(1, 5), unit=(i == deg))
    return SkewPoly(ring, coeffs, S)


def random_type_c(ring: OreRing, rng: random.Random, deg: int | None = None) -> SkewPoly:
    """Monic theta^n + lower terms with a nonzero theta^0 coefficient."""
    deg = rng.randint(1, 3) if deg is None else deg
    coeffs = {deg: LaurentSeries.monomial(ring.field, 1, 0, ring.prec)}
    for i in range(deg):
        c = random_series(ring, rng, rng.randint(0, 1), rng.randint(1, 5), unit=(i == 0))
        if i == 0 or rng.random() < 0.7:
            coeffs[i] = c
    return SkewPoly(ring, coeffs, S)


def random_admissible(ring: OreRing, rng: random.Random, max_deg: int = 5) -> SkewPoly:
    """Element meeting the converse-Eisenstein hypothesis: unit at 1 <= n < m, X | higher terms."""
    m = rng.randint(2, max_deg)
    n = rng.randint(1, m - 1)
    coeffs = {}
    for i in range(n):
        if rng.random() < 0.8:
            coeffs[i] = random_series(ring, rng, 0, rng.randint(1, 6))
    coeffs[n] = random_series(ring, rng, 0, rng.randint(1, 6), unit=True)
    for i in range(n + 1, m + 1):
        if i == m or rng.random() < 0.7:
            coeffs[i] = random_series(ring, rng, rng.randint(1, 2), rng.randint(1, 6), unit=True)
    return SkewPoly(ring, {i: c for i, c in coeffs.items() if not c.is_zero()}, S)


def random_T_element(ring: OreRing, rng: random.Random, max_deg: int = 3) -> SkewPoly:
    return random_element(ring, rng, max_deg, T, min_val=-2)
