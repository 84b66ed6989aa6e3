import random

import pytest

from oreseries import OreRing, T
from oreseries.factor import CommutationWitness, commute_CB
from oreseries.homtools import (
    ExtBounds,
    ExtWitness,
    NotFoundUpTo,
    SimilarityWitness,
    ext_vanishing_search,
    search_similarity,
    verify_similarity,
)
from oreseries.sampling import random_element, random_type_b, random_type_c, random_unit_T


@pytest.fixture
def r():
    return OreRing("q", 2, 16)


def test_verify_identity(r):
    b = r.parse("theta^2 + X*theta + 1")
    assert verify_similarity(b, b, r.one())


def test_verify_degree_clause(r):
    v = verify_similarity(r.theta, r.parse("theta^2"), r.one())
    assert not v and v.clause.startswith("degree")


def test_verify_unit_multiples(r):
    rng = random.Random(1)
    for _ in range(10):
        a = random_element(r, rng, 3).to_T()
        w = r.element({0: random_unit_T(r, rng)}, T)
        assert verify_similarity(a, w * a, r.one())


def test_verify_rejects_bad_witness(r):
    a, b = r.parse("theta + 1"), r.parse("theta + X")
    assert not verify_similarity(a, b, r.one())
    assert not verify_similarity(a, a, a)


def test_commutation_gives_similarity():
    # c*b = b'*c' puts b'*c' in Tb, so c' is the candidate witness for b' ~ b
    r = OreRing("q", 2, 16)
    rng = random.Random(3)
    for _ in range(10):
        c, b = random_type_c(r, rng, 1), random_type_b(r, rng, 1)
        w = commute_CB(c, b)
        assert isinstance(w, CommutationWitness)
        assert verify_similarity(w.b_prime, b, w.c_prime)


def test_search_identity(r):
    a = r.parse("theta + 1")
    wit = search_similarity(a, a, 1)
    assert isinstance(wit, SimilarityWitness)
    assert wit.u == r.one(T)


def test_search_consistency(r):
    res = search_similarity(r.parse("theta + 1"), r.parse("theta + X"), 2)
    if isinstance(res, SimilarityWitness):
        assert res.verify()
    else:
        assert isinstance(res, NotFoundUpTo)


def test_search_degree_mismatch(r):
    res = search_similarity(r.theta, r.parse("theta^2"), 3)
    assert isinstance(res, NotFoundUpTo) and res.reason.startswith("degree")


@pytest.mark.parametrize("field", ["q", "fp:5"])
def test_search_random_consistent(field):
    r = OreRing(field, 2, 16)
    rng = random.Random(23)
    found = 0
    for _ in range(8):
        c, b = random_type_c(r, rng, 1), random_type_b(r, rng, 1)
        w = commute_CB(c, b)
        res = search_similarity(w.b_prime, b, 2, seed=rng.randint(0, 99))
        if isinstance(res, SimilarityWitness):
            assert res.verify()
            found += 1
    assert found >= 6


def test_ext_examples(r):
    wit = ext_vanishing_search(r.theta, r.parse("theta + 1"))
    assert isinstance(wit, ExtWitness) and wit.verify()
    assert wit.u == -r.one(T) and wit.v == r.one(T)
    miss = ext_vanishing_search(r.theta, r.theta, ExtBounds(0, 2), max_slack=8)
    assert isinstance(miss, NotFoundUpTo)
    assert miss.bound.slack == 8


def test_ext_c_b(r):
    wit = ext_vanishing_search(r.parse("theta + 1"), r.parse("1 + X*theta"))
    assert isinstance(wit, ExtWitness) and wit.verify()
    assert (wit.u * r.parse("theta + 1").to_T() + r.parse("1 + X*theta").to_T() * wit.v).equals(r.one(T), wit.prec)


def test_ext_random_f5():
    r = OreRing("fp:5", 2, 16)
    rng = random.Random(4)
    for _ in range(10):
        wit = ext_vanishing_search(random_type_c(r, rng), random_type_b(r, rng))
        assert isinstance(wit, ExtWitness) and wit.verify()


def test_ext_rejects_zero(r):
    with pytest.raises(ValueError):
        ext_vanishing_search(r.zero(), r.theta)


def test_search_unit_multiple(r):
    rng = random.Random(12)
    for _ in range(8):
        a = random_element(r, rng, 2).to_T()
        w = r.element({0: random_unit_T(r, rng, 1)}, T)
        res = search_similarity(a, w * a, 1)
        assert isinstance(res, SimilarityWitness) and res.verify()


def test_search_on_commutation_pairs_is_consistent():
    # a miss is allowed (semidecision); any witness returned must verify
    r = OreRing("q", 2, 16)
    rng = random.Random(31)
    for _ in range(5):
        c, b = random_type_c(r, rng, 1), random_type_b(r, rng, 1)
        w = commute_CB(c, b)
        for x, y in ((w.c_prime, c), (w.b_prime, b)):
            res = search_similarity(x, y, x.degree + 2)
            assert isinstance(res, (SimilarityWitness, NotFoundUpTo))
            if isinstance(res, SimilarityWitness):
                assert res.verify()
