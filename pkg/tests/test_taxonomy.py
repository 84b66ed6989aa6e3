import random

import pytest

from oreseries import ContextError, OreRing
from oreseries.sampling import random_admissible, random_element, random_type_b, random_type_c
from oreseries.taxonomy import (
    EisensteinCertificate,
    NotApplicable,
    Shape,
    condition_co,
    eisenstein_irreducible,
    extraction_index,
    strip_and_classify,
)


@pytest.fixture
def r():
    return OreRing("q", 2, 8)


def test_classify_atoms(r):
    cert = strip_and_classify(r.parse("X*theta"))
    assert (cert.x_exp, cert.theta_exp) == (1, 1)
    assert cert.core_shape is Shape.UNIT and cert.core == r.one()
    assert cert.atoms == ["X", "theta"]
    assert strip_and_classify(r.X).shape is Shape.A_X
    assert strip_and_classify(r.theta).shape is Shape.A_THETA


def test_classify_type_b():
    r1 = OreRing("q", 1, 8)
    cert = strip_and_classify(r1.parse("3 + X*theta"))
    assert cert.unit == 3
    assert cert.core == r1.parse("1 + (1/3)*X*theta")
    assert cert.shape is Shape.B
    assert cert.reassemble() == r1.parse("3 + X*theta")


def test_classify_type_c(r):
    cert = strip_and_classify(r.parse("2*theta^2 + X"))
    assert cert.unit == 2
    assert cert.core == r.parse("theta^2 + X/2")
    assert cert.shape is Shape.C and cert.n == 2
    assert cert.f == [0, 0, 1]


def test_classify_rejects_T(r):
    with pytest.raises(ContextError):
        strip_and_classify(r.parse("X^-1*theta"))


def test_reassemble_random():
    rng = random.Random(4)
    for field, q in [("q", 2), ("fp:5", 2)]:
        ring = OreRing(field, q, 12)
        for _ in range(60):
            z = random_element(ring, rng, 4)
            cert = strip_and_classify(z)
            assert cert.reassemble() == z
            core_bar = cert.core.coeff(cert.core.degree)
            assert cert.core_shape is not Shape.B or core_bar.val >= 1


def test_generators_have_their_shapes():
    rng = random.Random(9)
    ring = OreRing("q", 2, 12)
    for _ in range(30):
        assert strip_and_classify(random_type_b(ring, rng)).shape is Shape.B
        assert strip_and_classify(random_type_c(ring, rng)).shape is Shape.C


def test_eisenstein(r):
    cert = eisenstein_irreducible(r.parse("1 + X*theta"))
    assert isinstance(cert, EisensteinCertificate) and cert.degree == 1
    assert isinstance(eisenstein_irreducible(r.parse("1 + X^2*theta")), NotApplicable)
    assert isinstance(eisenstein_irreducible(r.parse("1 + X + theta + X*theta^2")), NotApplicable)
    assert isinstance(eisenstein_irreducible(r.parse("X + X*theta")), NotApplicable)


def test_condition_co(r):
    assert condition_co(r.parse("1 + X*theta"))
    assert not condition_co(r.theta)
    assert not condition_co(r.parse("theta + 1"))
    assert not condition_co(r.X)


def test_extraction_index(r):
    assert extraction_index(r.parse("1 + X + theta + X*theta^2")) == 1
    assert extraction_index(r.parse("1 + X*theta")) is None
    assert extraction_index(r.parse("theta^2 + X")) is None
    assert extraction_index(r.parse("1 + theta + theta^2 + X*theta^3")) == 2


def test_co_equals_type_b_core():
    rng = random.Random(6)
    ring = OreRing("q", 2, 12)
    for _ in range(100):
        z = random_element(ring, rng, 4)
        shape = strip_and_classify(z)
        expect = shape.x_exp == 0 and shape.theta_exp == 0 and shape.core_shape in (Shape.B, Shape.UNIT)
        assert condition_co(z) == expect


def test_eisenstein_and_extraction_disjoint():
    rng = random.Random(8)
    ring = OreRing("q", 2, 12)
    pool = [random_element(ring, rng, 4) for _ in range(150)]
    pool += [random_type_b(ring, rng) for _ in range(50)]
    pool += [random_admissible(ring, rng) for _ in range(50)]
    for z in pool:
        assert not (isinstance(eisenstein_irreducible(z), EisensteinCertificate) and extraction_index(z) is not None)
