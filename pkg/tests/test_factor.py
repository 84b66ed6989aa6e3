import random

import pytest

from oracles import commute_divisor, example_divisor, series_coeffs
from oreseries import HypothesisFails, OreRing, S, ShapeError, SkewPoly
from oreseries.factor import (
    Canonical,
    CommutationWitness,
    ReducibleInstead,
    canonicalize_typeC,
    commute_CB,
    extract_right_factor,
    factor_best_effort,
    theta_power_reductions,
)
from oreseries.sampling import random_admissible, random_type_b, random_type_c
from oreseries.taxonomy import EisensteinCertificate, Shape, eisenstein_irreducible

EXAMPLE = "1 + X + theta + X*theta^2"


def test_extract_commutative_example():
    r = OreRing("q", 1, 4)
    wit = extract_right_factor(r.parse(EXAMPLE))
    assert wit.n == 1 and wit.verify()
    assert series_coeffs(wit.divisor.coeff(0), 4) == [1, 2, 4, 12]
    assert wit.divisor == r.parse("theta + 1 + 2*X + 4*X^2 + 12*X^3")


def test_extract_matches_oracle_high_precision():
    r = OreRing("q", 1, 14)
    wit = extract_right_factor(r.parse(EXAMPLE))
    assert series_coeffs(wit.divisor.coeff(0), 14) == example_divisor(14)


def test_extract_q2_example():
    r = OreRing("q", 2, 4)
    wit = extract_right_factor(r.parse("2*X*theta^2 + (1+X)*theta + 1"))
    assert wit.divisor == r.parse("theta + 1 + X + 5*X^2 + 49*X^3")
    assert wit.quotient == r.parse("(1-X-4*X^2-40*X^3) + 2*X*theta")
    r10 = OreRing("q", 2, 10)
    wit = extract_right_factor(r10.parse("2*X*theta^2 + (1+X)*theta + 1"))
    assert series_coeffs(wit.divisor.coeff(0), 10) == commute_divisor(10)


def test_extract_hypothesis_failures():
    r = OreRing("q", 2, 8)
    for src in ["1 + X*theta", "theta^2 + X", "X + X*theta"]:
        with pytest.raises(HypothesisFails):
            extract_right_factor(r.parse(src))


@pytest.mark.parametrize("field,q", [("q", 2), ("fp:5", 3), ("q", "1+X")])
def test_extract_random(field, q):
    r = OreRing(field, q, 12)
    rng = random.Random(21)
    for _ in range(25):
        z = random_admissible(r, rng)
        wit = extract_right_factor(z)
        assert wit.verify() and wit.prec == 12
        scaled = SkewPoly(r, {0: z.coeff(wit.n).inverse()}, S) * z
        for i in range(wit.n):
            assert wit.h[i].coeff(0) == -scaled.coeff(i).coeff(0)


def test_h_solves_system():
    """f_i + sum_{j >= n} g_j y_{i,j-n}(h) + h_i = 0 with g_n = 1."""
    r = OreRing("q", 2, 10)
    rng = random.Random(5)
    for _ in range(10):
        z = random_admissible(r, rng)
        wit = extract_right_factor(z)
        n, h = wit.n, wit.h
        scaled = SkewPoly(r, {0: z.coeff(n).inverse()}, S) * z
        y = theta_power_reductions(h, n, scaled.degree - n, r)
        for i in range(n):
            total = scaled.coeff(i)
            for j in range(n, scaled.degree + 1):
                total = total + scaled.coeff(j) * y[j - n][i]
            assert total.truncate(10).is_zero()


def test_canonicalize():
    r = OreRing("q", 2, 8)
    canon = canonicalize_typeC(r.parse("2 + 2*theta"))
    assert isinstance(canon, Canonical)
    assert canon.c_hat == r.parse("1 + theta") and canon.u.coeff(0) == r.field.coerce(1) / 2
    same = canonicalize_typeC(r.parse("theta + X"))
    assert same.c_hat == r.parse("theta + X")
    red = canonicalize_typeC(r.parse(EXAMPLE))
    assert isinstance(red, ReducibleInstead) and red.witness.verify()
    with pytest.raises(ShapeError):
        canonicalize_typeC(r.parse("1 + X*theta"))


def test_commute_examples():
    r1 = OreRing("q", 1, 4)
    w = commute_CB(r1.parse("theta+1"), r1.parse("1+X*theta"))
    assert w.b_prime == r1.parse("1+X*theta") and w.c_prime == r1.parse("theta+1")
    r2 = OreRing("q", 2, 4)
    w = commute_CB(r2.parse("theta+1"), r2.parse("1+X*theta"))
    assert isinstance(w, CommutationWitness) and w.verify()
    assert w.c_prime == r2.parse("theta + 1 + X + 5*X^2 + 49*X^3")
    assert w.b_prime == r2.parse("(1 - X - 4*X^2 - 40*X^3) + 2*X*theta")
    assert (w.b_prime * w.c_prime) == r2.parse("theta+1") * r2.parse("1+X*theta")


def test_commute_non_monic_c():
    r = OreRing("q", 2, 10)
    c, b = r.parse("3*theta + 3 + X"), r.parse("1 + X*theta + X^2*theta^2")
    w = commute_CB(c, b)
    assert isinstance(w, CommutationWitness) and w.verify()


def test_commute_rejects_bad_shapes():
    r = OreRing("q", 2, 8)
    with pytest.raises(ShapeError):
        commute_CB(r.parse("theta+1"), r.parse("theta+1"))
    with pytest.raises(ShapeError):
        commute_CB(r.parse(EXAMPLE), r.parse("1+X*theta"))


@pytest.mark.parametrize("field,q", [("q", 2), ("fp:5", 2), ("q", "1+X"), ("fp:5", 3)])
def test_commute_random(field, q):
    r = OreRing(field, q, 12)
    rng = random.Random(13)
    for _ in range(25):
        w = commute_CB(random_type_c(r, rng), random_type_b(r, rng))
        assert isinstance(w, CommutationWitness), w.reason
        assert w.verify(), w.checks()


def test_factor_atoms():
    r = OreRing("q", 2, 8)
    rep = factor_best_effort(r.parse("X^2*theta"))
    assert [f.kind for f in rep.factors] == ["X", "X", "theta"]
    assert rep.verify()


def test_factor_eisenstein_atom():
    r = OreRing("q", 2, 8)
    rep = factor_best_effort(r.parse("1 + X*theta"))
    assert len(rep.factors) == 1
    f = rep.factors[0]
    assert f.kind == "atom_at_precision"
    assert any(c["certificate"] == "eisenstein" for c in f.certificates)
    assert isinstance(eisenstein_irreducible(f.element), EisensteinCertificate)


def test_factor_round_trip_b_times_c():
    r = OreRing("q", 2, 16)
    z = r.parse("1 + X*theta") * r.parse("theta + 1")
    rep = factor_best_effort(z)
    assert rep.verify() and rep.prec == 16
    assert [f.element.degree for f in rep.factors] == [1, 1]
    assert sorted(f.shape for f in rep.factors) == [Shape.B.value, Shape.C.value]


def test_factor_random_products():
    r = OreRing("q", 2, 12)
    rng = random.Random(17)
    for _ in range(10):
        z = random_type_c(r, rng) * random_type_b(r, rng)
        rep = factor_best_effort(z)
        assert rep.verify()
        assert sum(f.element.degree for f in rep.factors) == z.degree
        assert len(rep.factors) >= 2
