"""Expression language for elements of S and T.

Grammar: integers, ``X``, ``theta`` (or ``θ``), ``+ - * ^ / ( )``.  Products
are evaluated left to right with skew multiplication, so ``theta*X`` and
``X*theta`` differ unless q = 1.  Division is only by nonzero scalars,
which also covers rational literals such as ``3/4``.  ``X`` may carry a
negative exponent, which puts the result in T.

The Python ``ast`` module does the tokenizing and precedence parsing; this
module only checks the node types and evaluates.
"""

from __future__ import annotations

import ast

from .errors import ParseError
from .series import PowerSeries

MAX_EXPONENT = 512
_THETA = ("theta", "θ")


def _prepare(src: str) -> tuple[str, list[int]]:
    """Rewrite ``^`` as ``**`` and keep a map back to original offsets."""
    out, where = [], []
    for i, ch in enumerate(src):
        if ch == "^":
            out.append("**")
            where.extend((i, i))
        else:
            out.append(ch)
            where.append(i)
    where.append(len(src))
    return "".join(out), where


def _tree(src: str):
    if not src.strip():
        raise ParseError("empty expression", 0)
    text, where = _prepare(src)
    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError as exc:
        if not exc.offset:
            raise ParseError("syntax error: unexpected end of input", len(src)) from None
        off = exc.offset - 1 + (len(text) - len(text.lstrip()))
        raise ParseError(f"syntax error: {exc.msg}", where[min(off, len(where) - 1)]) from None
    lead = len(text) - len(text.lstrip())

    def pos(node):
        off = getattr(node, "col_offset", 0) + lead
        return where[min(off, len(where) - 1)]

    return tree.body, pos


class _Evaluator:
    """Evaluate a checked tree with caller-supplied leaf constructors."""

    def __init__(self, pos, field, scalar, x_power, theta=None):
        self.pos = pos
        self.field = field
        self.scalar = scalar
        self.x_power = x_power
        self.theta = theta

    def const(self, node):
        """Evaluate a node that must be a field scalar (ints, unary minus, /)."""
        if isinstance(node, ast.Constant) and type(node.value) is int:
            return self.field(node.value)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = self.const(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp) and isinstance(node.op, (ast.Div, ast.Mult, ast.Add, ast.Sub)):
            a, b = self.const(node.left), self.const(node.right)
            if isinstance(node.op, ast.Div):
                if not b:
                    raise ParseError("division by zero", self.pos(node.right))
                return a / b
            if isinstance(node.op, ast.Mult):
                return a * b
            return a + b if isinstance(node.op, ast.Add) else a - b
        raise ParseError("divisor must be a nonzero scalar", self.pos(node))

    def exponent(self, node) -> int:
        neg = False
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            neg, node = True, node.operand
        if not (isinstance(node, ast.Constant) and type(node.value) is int):
            raise ParseError("exponent must be an integer literal", self.pos(node))
        if node.value > MAX_EXPONENT:
            raise ParseError(f"exponent overflow (max {MAX_EXPONENT})", self.pos(node))
        return -node.value if neg else node.value

    def eval(self, node):
        if isinstance(node, ast.Constant):
            if type(node.value) is not int:
                raise ParseError(f"unexpected literal {node.value!r}", self.pos(node))
            return self.scalar(self.field(node.value))
        if isinstance(node, ast.Name):
            if node.id == "X":
                return self.x_power(1)
            if node.id in _THETA:
                if self.theta is None:
                    raise ParseError("theta not allowed here", self.pos(node))
                return self.theta()
            raise ParseError(f"unknown symbol {node.id!r}", self.pos(node))
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = self.eval(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            op = node.op
            if isinstance(op, ast.Pow):
                e = self.exponent(node.right)
                if isinstance(node.left, ast.Name) and node.left.id == "X":
                    return self.x_power(e)
                if e < 0:
                    raise ParseError("negative exponent only allowed on X", self.pos(node.right))
                base = self.eval(node.left)
                out = self.scalar(self.field.one)
                for _ in range(e):
                    out = out * base
                return out
            if isinstance(op, ast.Div):
                c = self.const(node.right)
                if not c:
                    raise ParseError("division by zero", self.pos(node.right))
                return self.eval(node.left) * self.scalar(1 / c)
            left, right = self.eval(node.left), self.eval(node.right)
            if isinstance(op, ast.Add):
                return left + right
            if isinstance(op, ast.Sub):
                return left - right
            if isinstance(op, ast.Mult):
                return left * right
        raise ParseError(f"unsupported syntax {type(node).__name__}", self.pos(node))


def parse_element(src: str, ring):
    """Parse ``src`` into a SkewPoly of ``ring`` (context T iff X has a negative power)."""
    from .ore import S, T, SkewPoly
    from .series import LaurentSeries

    body, pos = _tree(src)
    field = ring.field

    ev = _Evaluator(
        pos,
        field,
        scalar=lambda c: ring.element({0: c}),
        x_power=lambda e: SkewPoly(
            ring, {0: LaurentSeries.monomial(field, 1, e, ring.prec)}, S if e >= 0 else T
        ),
        theta=lambda: ring.theta,
    )
    return ev.eval(body)


def parse_series(src: str, field, prec: int) -> PowerSeries:
    """Parse a polynomial in X (no theta) into a PowerSeries of the given precision."""
    body, pos = _tree(src)

    class _Poly(dict):
        # sparse exact polynomial in X
        def __add__(self, o):
            out = _Poly(self)
            for k, v in o.items():
                out[k] = out.get(k, field.zero) + v
            return out

        def __neg__(self):
            return _Poly({k: -v for k, v in self.items()})

        def __sub__(self, o):
            return self + (-o)

        def __mul__(self, o):
            out = _Poly()
            for i, a in self.items():
                for j, b in o.items():
                    out[i + j] = out.get(i + j, field.zero) + a * b
            return out

    def x_power(e):
        if e < 0:
            raise ParseError("negative powers of X are not power series", 0)
        return _Poly({e: field.one})

    ev = _Evaluator(pos, field, scalar=lambda c: _Poly({0: c}), x_power=x_power)
    poly = ev.eval(body)
    coeffs = [field.zero] * prec
    for e, c in poly.items():
        if e < prec:
            coeffs[e] += c
    return PowerSeries(field, coeffs, prec)
