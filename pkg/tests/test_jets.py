from fractions import Fraction

import pytest

from jetweil.errors import BaseMismatch, NonUnitLeadingCoefficient, SingularBase
from jetweil.jets import JetRing, JetScalar, exp_nilpotent, involution, mult_matrix
from jetweil.scalars import Scalar, sqrt_positive_rational
from jetweil.suites import involution_cases


def random_jet(rng, ring):
    return ring.from_coeffs([Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(ring.order)])


def random_cyclotomic_jet(rng, ring):
    root_two = sqrt_positive_rational(2)
    return ring.from_coeffs([
        Scalar.of(Fraction(rng.randint(-5, 5), rng.randint(1, 4)))
        + Scalar.zeta() * Fraction(rng.randint(-3, 3), rng.randint(1, 3))
        + root_two * rng.randint(-2, 2)
        for _ in range(ring.order)
    ])


def matmul(left, right):
    size = len(left)
    return [[sum((left[i][j] * right[j][m] for j in range(size)), Scalar.zero()) for m in range(size)]
            for i in range(size)]


def test_ring_axioms(rng):
    ring = JetRing(Fraction(1, 2), 4)
    for _ in range(20):
        a, b, c = random_jet(rng, ring), random_jet(rng, ring), random_jet(rng, ring)
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c


def test_inverse(rng):
    ring = JetRing(3, 5)
    for _ in range(10):
        a = random_jet(rng, ring) + 7
        assert a * a.inverse() == ring.one()
    assert ring.variable() * ring.variable().inverse() == 1


def test_nilpotent_has_no_inverse():
    with pytest.raises(NonUnitLeadingCoefficient):
        JetRing(1, 3).epsilon().inverse()


def test_sqrt_near_one():
    root = JetRing(1, 3).variable().sqrt()
    assert list(root.coeffs) == [1, Fraction(1, 2), Fraction(-1, 8)]


def test_sqrt_near_four():
    ring = JetRing(4, 3)
    root = ring.variable().sqrt()
    assert list(root.coeffs) == [2, Fraction(1, 4), Fraction(-1, 64)]
    assert root * root == ring.variable()


def test_sqrt_abs_variable_at_negative_base():
    ring = JetRing(-4, 3)
    root = ring.sqrt_abs_variable()
    assert root * root == -ring.variable()


def test_exp_nilpotent():
    out = exp_nilpotent(JetRing(2, 4).epsilon())
    assert list(out.coeffs) == [1, 1, Fraction(1, 2), Fraction(1, 6)]
    with pytest.raises(ValueError):
        exp_nilpotent(JetRing(2, 4).one())


def test_mult_matrix_of_sqrt():
    matrix = mult_matrix(JetRing(1, 2).variable().sqrt())
    assert matrix == [[1, Fraction(1, 2)], [0, 1]]


def test_involution_reexpands_in_inverse_variable():
    for s0 in (Fraction(2), Fraction(-1, 3)):
        ring = JetRing(s0, 4)
        target = JetRing(1 / s0, 4)
        assert involution(ring.variable()) == target.variable().inverse()


def test_base_checks():
    with pytest.raises(SingularBase):
        JetRing(0, 2)
    with pytest.raises(BaseMismatch):
        JetRing(1, 2).one() + JetRing(2, 2).one()
    with pytest.raises(ValueError):
        JetRing(1, 0)


def test_dict_round_trip():
    jet = JetRing(Fraction(5, 3), 3).from_coeffs([Scalar.zeta(), Scalar.tau(), 2])
    assert JetScalar.from_dict(jet.to_dict()) == jet


def test_constant_jets_hash_like_scalars():
    ring = JetRing(Fraction(1, 2), 3)
    assert ring.constant(3) == Scalar.of(3) == 3
    assert hash(ring.constant(3)) == hash(Scalar.of(3)) == hash(3)
    assert hash(ring.constant(Fraction(-2, 7))) == hash(Fraction(-2, 7))
    assert hash(ring.constant(Scalar.zeta())) == hash(Scalar.zeta())
    assert ring.constant(5) in {5, 6}
    assert {Scalar.of(Fraction(1, 3)): "third"}[ring.constant(Fraction(1, 3))] == "third"


# ---------------------------------------------------------
# s <-> 1/s
# ---------------------------------------------------------

BASES = [Fraction(2), Fraction(-1, 3), Fraction(5, 7)]


@pytest.mark.parametrize("s0", BASES)
@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_involution_is_involutive(rng, s0, k):
    ring = JetRing(s0, k)
    for _ in range(25):
        a = random_cyclotomic_jet(rng, ring)
        image = involution(a)
        assert image.base == 1 / s0
        assert involution(image) == a


@pytest.mark.parametrize("s0", BASES)
@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_involution_is_multiplicative(rng, s0, k):
    ring = JetRing(s0, k)
    for _ in range(10):
        a, b = random_cyclotomic_jet(rng, ring), random_cyclotomic_jet(rng, ring)
        assert involution(a * b) == involution(a) * involution(b)
        assert involution(a + b) == involution(a) + involution(b)


@pytest.mark.parametrize("s0", BASES)
@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_involution_twists_by_inverse_variable(rng, s0, k):
    ring = JetRing(s0, k)
    inverse_s = JetRing(1 / s0, k).variable().inverse()
    for _ in range(10):
        a = random_cyclotomic_jet(rng, ring)
        assert involution(ring.variable() * a) == inverse_s * involution(a)


@pytest.mark.parametrize("s0", BASES)
def test_mult_matrix_is_multiplicative(rng, s0):
    ring = JetRing(s0, 4)
    for _ in range(5):
        a, b = random_cyclotomic_jet(rng, ring), random_cyclotomic_jet(rng, ring)
        assert matmul(mult_matrix(a), mult_matrix(b)) == mult_matrix(a * b)


def test_involution_cases_on_a_hundred_jets(rng):
    cases = involution_cases(JetRing(Fraction(5, 7), 3), 100, rng, "k=3/")
    assert [case.name for case in cases] == [
        "involution/k=3/twice=id", "involution/k=3/multiplicative", "involution/k=3/s->1/s",
    ]
    assert all(case.passed for case in cases), [case.to_dict() for case in cases]
