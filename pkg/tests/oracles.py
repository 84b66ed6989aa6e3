"""Independent reference computations on truncated series with Fraction coefficients."""

from fractions import Fraction


def conv(a, b, n):
    out = [Fraction(0)] * n
    for i, x in enumerate(a[:n]):
        for j, y in enumerate(b[: n - i]):
            out[i + j] += x * y
    return out


def inv_long_division(a, n):
    """Series inverse by solving a * b = 1 one coefficient at a time."""
    a = [Fraction(x) for x in a] + [Fraction(0)] * n
    b = [Fraction(0)] * n
    for k in range(n):
        s = Fraction(int(k == 0)) - sum(a[k - j] * b[j] for j in range(k))
        b[k] = s / a[0]
    return b


def compose_scaled(v, c, n):
    """v(cX) truncated to n terms."""
    return [Fraction(x) * Fraction(c) ** i for i, x in enumerate(v[:n])] + [Fraction(0)] * (n - len(v[:n]))


def fixed_point(step, n, iters=None):
    v = [Fraction(0)] * n
    for _ in range(iters or n + 2):
        v = step(v)
    return v


def example_divisor(n):
    """v = 1 + X + X v^2, the divisor constant for 1 + X + theta + X theta^2 when theta commutes."""

    def step(v):
        sq = conv(v, v, n)
        return [Fraction(int(i <= 1)) + (sq[i - 1] if i >= 1 else 0) for i in range(n)]

    return fixed_point(step, n)


def commute_divisor(n):
    """v = inv(1 + X - 2X v(2X)), the divisor constant in (theta + 1)(1 + X theta) with q = 2."""

    def step(v):
        w = compose_scaled(v, 2, n)
        base = [Fraction(int(i <= 1)) - (2 * w[i - 1] if i >= 1 else 0) for i in range(n)]
        return inv_long_division(base, n)

    return fixed_point(step, n)


def inv_x_image(q, n):
    """t with t(X) * q(t(X)) = X: triangular solve on t = sum t_m X^m."""
    q = [Fraction(x) for x in q] + [Fraction(0)] * n
    t = [Fraction(0)] * n
    t[1] = 1 / q[0]
    for m in range(2, n):
        # coefficient of X^m in t * q(t) must vanish
        t[m] = 0
        acc = Fraction(0)
        tp = t[:]
        power = [Fraction(1)] + [Fraction(0)] * (n - 1)
        qt = [Fraction(0)] * n
        for p in range(n):
            qt = [a + q[p] * b for a, b in zip(qt, power)]
            power = conv(power, tp, n)
        acc = conv(tp, qt, n)[m]
        t[m] = -acc / q[0]
    return t


def frac(c) -> Fraction:
    return Fraction(str(c))


def series_coeffs(s, n, start=0):
    return [frac(s.coeff(e)) for e in range(start, start + n)]
