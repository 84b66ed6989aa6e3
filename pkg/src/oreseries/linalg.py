"""Exact linear algebra over the base field (thin wrappers over sympy's DomainMatrix)."""

from __future__ import annotations

from sympy import Poly, Symbol
from sympy.polys.matrices import DomainMatrix

_t = Symbol("t")


def solve(field, rows: list[list], rhs: list):
    """One solution x of rows * x = rhs (free variables set to zero), or None."""
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    if nrows == 0:
        return [field.zero] * ncols
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = DomainMatrix(aug, (nrows, ncols + 1), field.domain).rref()
    if ncols in pivots:
        return None
    red = red.to_list()
    x = [field.zero] * ncols
    for i, c in enumerate(pivots):
        x[c] = red[i][ncols]
    return x


def nullspace(field, rows: list[list], ncols: int) -> list[list]:
    """Basis of {x : rows * x = 0}."""
    if not rows:
        return [[field.one if i == j else field.zero for i in range(ncols)] for j in range(ncols)]
    m = DomainMatrix([list(r) for r in rows], (len(rows), ncols), field.domain)
    return m.nullspace().to_list()


def factor_univariate(field, coeffs: list) -> list[tuple[list, int]]:
    """Monic irreducible factors of a polynomial over k given low-to-high coefficients."""
    p = Poly.from_list([field.coerce(c) for c in reversed(coeffs)], _t, domain=field.domain)
    _, facs = p.factor_list()
    out = []
    for f, mult in facs:
        f = f.monic()
        out.append(([field.coerce(c) for c in reversed(f.rep.to_list())], mult))
    return out


def poly_mul(field, a: list, b: list) -> list:
    out = [field.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def poly_divexact(field, a: list, b: list) -> list:
    """a / b in k[t] for b dividing a (low-to-high coefficients)."""
    a = list(a)
    q = [field.zero] * (len(a) - len(b) + 1)
    inv = 1 / b[-1]
    for k in range(len(q) - 1, -1, -1):
        c = a[k + len(b) - 1] * inv
        q[k] = c
        for j, y in enumerate(b):
            a[k + j] -= c * y
    if any(a[: len(b) - 1]):
        raise ArithmeticError("inexact polynomial division")
    return q
