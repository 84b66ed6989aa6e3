import random

import pytest
from fractions import Fraction

from oracles import conv, inv_long_division, inv_x_image, series_coeffs
from oreseries import NotAUnit, make_field
from oreseries.series import Automorphism, FiniteOrder, LaurentSeries, NoOrderUpTo, PowerSeries, finite_order_check

QQ = make_field("q")
F5 = make_field("fp:5")


def ps(coeffs, prec, field=QQ):
    return PowerSeries(field, [field.coerce(c) for c in coeffs], prec)


def test_product_trivial():
    assert (ps([1, 1], 8) * ps([1, -1], 8)) == ps([1, 0, -1], 8)
    a = ps([3, 0, 5], 8)
    assert a * ps([1], 8) == a


def test_square_frozen_and_oracle():
    a = ps([1, 2, 2, 1], 4)
    assert series_coeffs((a * a).to_laurent(), 4) == [1, 4, 8, 10]
    b = ps([1, 2, 2, 1], 12)
    assert series_coeffs((b * b).to_laurent(), 12) == conv([1, 2, 2, 1], [1, 2, 2, 1], 12)


def test_inverse():
    assert series_coeffs(ps([1, -1], 8).inverse().to_laurent(), 8) == [1] * 8
    assert series_coeffs(ps([2], 4).inverse().to_laurent(), 1) == [Fraction(1, 2)]
    inv = ps([1, -1, -4, -40], 4).inverse()
    assert series_coeffs(inv.to_laurent(), 4) == [1, 1, 5, 49]
    assert ps([1, -1, -4, -40], 4) * inv == ps([1], 4)


def test_inverse_matches_long_division():
    rng = random.Random(3)
    for _ in range(20):
        c = [rng.randint(-5, 5) for _ in range(6)]
        c[0] = c[0] or 1
        got = ps(c, 10).inverse()
        assert series_coeffs(got.to_laurent(), 10) == inv_long_division(c, 10)


def test_inverse_needs_unit():
    with pytest.raises(NotAUnit):
        ps([0, 1], 4).inverse()


def test_automorphism_images():
    al = Automorphism(ps([1, 1], 24))
    assert series_coeffs(al.apply(ps([0, 1], 8)).to_laurent(), 4) == [0, 1, 1, 0]
    c = Automorphism(ps([3], 24))
    assert series_coeffs(c.apply(ps([0, 1], 8), 2).to_laurent(), 3) == [0, 9, 0]


def test_inverse_x_image_frozen_and_oracle():
    al = Automorphism(ps([1, 1], 24))
    assert series_coeffs(al.inv_x_image.to_laurent(), 4) == [0, 1, -1, 2]
    assert series_coeffs(al.inv_x_image.to_laurent(), 10) == inv_x_image([1, 1], 10)
    t = al.inv_x_image.truncate(8)
    assert al.apply(t) == ps([0, 1], 8)
    al2 = Automorphism(ps([2, 1, 3], 24))
    assert series_coeffs(al2.inv_x_image.to_laurent(), 8) == inv_x_image([2, 1, 3], 8)


def test_alpha_inverse_round_trip():
    rng = random.Random(5)
    al = Automorphism(ps([1, 2, -1], 40))
    for _ in range(10):
        a = ps([rng.randint(-4, 4) for _ in range(8)], 8)
        assert al.apply(al.apply(a, 1), -1) == a
        assert al.apply(al.apply(a, 3), -2) == al.apply(a, 1)


def test_norms():
    assert series_coeffs(Automorphism(ps([2], 24)).norm(3).to_laurent(), 1) == [8]
    assert Automorphism(ps([1], 24)).norm(5).truncate(8) == ps([1], 8)
    n2 = Automorphism(ps([1, 1], 24)).norm(2)
    assert series_coeffs(n2.to_laurent(), 4) == [1, 2, 2, 1]
    assert series_coeffs(n2.to_laurent(), 4) == conv([1, 1], [1, 1, 1], 4)


@pytest.mark.parametrize("field,q", [(QQ, [1, 1]), (QQ, [2]), (F5, [3, 1]), (QQ, [1, 0, 1])])
def test_norm_cocycle_small(field, q):
    al = Automorphism(ps(q, 40, field))
    for m in range(4):
        for n in range(4):
            lhs = al.norm(m + n).truncate(12)
            rhs = (al.norm(m).truncate(12) * al.apply(al.norm(n).truncate(12), m))
            assert lhs == rhs


def test_finite_order():
    assert finite_order_check(Automorphism(ps([1], 24)), 8) == FiniteOrder(1)
    assert finite_order_check(Automorphism(ps([-1], 24)), 8) == FiniteOrder(2)
    assert isinstance(finite_order_check(Automorphism(ps([2], 24)), 64), NoOrderUpTo)
    assert finite_order_check(Automorphism(ps([2], 24, F5)), 8) == FiniteOrder(4)


def test_laurent_arithmetic():
    a = LaurentSeries.from_dense(QQ, -2, [QQ.coerce(1), QQ.coerce(3)], 6)
    inv = a.inverse()
    assert inv.val == 2
    assert (a * inv).equals(LaurentSeries.monomial(QQ, 1, 0, 6))
    b = LaurentSeries.monomial(QQ, 1, 9, 6)
    assert (a + b).equals(a)
