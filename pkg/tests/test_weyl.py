from fractions import Fraction

import pytest

from jetweil.errors import ArityMismatch, NotInSp
from jetweil.jets import JetRing
from jetweil.scalars import Scalar
from jetweil.weyl import (
    SL2,
    LaurentS,
    WeylOp,
    bracket_homomorphism_check,
    commutator,
    dsigma,
    sp_basis,
    transparency_check,
)

X = WeylOp.x(0)
D = WeylOp.d(0)
S = LaurentS.s()
TAU_I = Scalar.tau() * Scalar.imag_unit()


def random_op(rng, n=2, terms=3):
    monomials = {}
    for _ in range(terms):
        alpha = tuple(rng.randint(0, 2) for _ in range(n))
        beta = tuple(rng.randint(0, 2) for _ in range(n))
        monomials[(alpha, beta)] = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
    return WeylOp(n, monomials)


# ---------------------------------------------------------
# Normal ordering
# ---------------------------------------------------------

def test_canonical_commutator():
    assert commutator(D, X) == WeylOp.one()
    assert commutator(X, D) == -WeylOp.one()


def test_reordering():
    assert D * X ** 2 == X ** 2 * D + X * 2
    assert D ** 2 * X == X * D ** 2 + D * 2


def test_second_order_reordering():
    assert D ** 2 * X ** 2 == X ** 2 * D ** 2 + X * D * 4 + 2


def test_associativity(rng):
    for _ in range(20):
        a, b, c = random_op(rng), random_op(rng), random_op(rng)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c


def test_jacobi_identity(rng):
    for _ in range(20):
        a, b, c = random_op(rng), random_op(rng), random_op(rng)
        total = (commutator(a, commutator(b, c)) + commutator(b, commutator(c, a))
                 + commutator(c, commutator(a, b)))
        assert total.is_zero()


def test_euler_grading():
    euler = WeylOp.euler()
    assert commutator(euler, X) == X
    assert commutator(euler, D) == -D
    assert euler == X * D + Fraction(1, 2)


def test_variables_commute_across_indices():
    x0, d1 = WeylOp.x(0, 2), WeylOp.d(1, 2)
    assert commutator(d1, x0).is_zero()
    with pytest.raises(ArityMismatch):
        X + x0


def test_str():
    assert str(X ** 2 * D) == "x0^2*d0"


# ---------------------------------------------------------
# Infinitesimal action
# ---------------------------------------------------------

def test_sl2_images():
    assert dsigma(SL2["Y"], S) == X ** 2 * (S * -TAU_I)
    assert dsigma(SL2["X"], S) == D ** 2 * (S.inverse() * (TAU_I * 4).inverse())
    assert dsigma(SL2["H"], S) == -WeylOp.euler()


def test_sl2_relations():
    h, x, y = (dsigma(SL2[name], S) for name in ("H", "X", "Y"))
    assert commutator(h, x) == x * 2
    assert commutator(h, y) == y * -2
    assert commutator(x, y) == h


@pytest.mark.parametrize("n", [1, 2, 3])
def test_bracket_homomorphism_formal(n):
    assert bracket_homomorphism_check(n, S) == []


@pytest.mark.parametrize("s0,k", [(1, 1), (2, 3), (Fraction(-1, 2), 2)])
def test_bracket_homomorphism_on_jets(s0, k):
    assert bracket_homomorphism_check(2, JetRing(s0, k).variable()) == []


def test_specialization_is_transparent():
    assert transparency_check(2, JetRing(4, 3)) == []


def test_basis_size():
    for n in (1, 2, 3):
        assert len(sp_basis(n)) == n * (2 * n + 1)


def test_rejects_non_sp():
    with pytest.raises(NotInSp):
        dsigma([[1, 0], [0, 1]], S)
    with pytest.raises(NotInSp):
        dsigma([[0, 1, 0]], S)
