from fractions import Fraction

import pytest

from jetweil.errors import BranchUndetermined, DivisionByNonUnit, NegativeRadicand
from jetweil.scalars import (
    CycloRational,
    Scalar,
    parse_rational,
    rational_json,
    sqrt_positive_rational,
    sqrt_special,
)

ZETA = Scalar.zeta()
I = Scalar.imag_unit()
TAU = Scalar.tau()
SQRT2 = sqrt_positive_rational(2)
SQRT3 = sqrt_positive_rational(3)


def random_scalar(rng):
    pieces = [ZETA, I, SQRT2, SQRT3, TAU, Scalar.one()]
    out = Scalar.zero()
    for _ in range(3):
        coeff = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        out = out + rng.choice(pieces) * rng.choice(pieces) * coeff
    return out


# ---------------------------------------------------------
# Parsing
# ---------------------------------------------------------

def test_parse_rational_literals():
    assert parse_rational("3/6") == Fraction(1, 2)
    assert parse_rational(" -2 ") == Fraction(-2)
    assert parse_rational(5) == Fraction(5)
    for bad in ("1.5", "1/0", "x", True):
        with pytest.raises(ValueError):
            parse_rational(bad)


def test_rational_json():
    assert rational_json(Fraction(4, 2)) == 2
    assert rational_json(Fraction(1, 2)) == "1/2"


# ---------------------------------------------------------
# Q(zeta)
# ---------------------------------------------------------

def test_zeta_is_a_primitive_eighth_root():
    assert ZETA ** 4 == -1
    assert ZETA ** 8 == 1
    assert ZETA ** 2 == I
    assert (ZETA - ZETA ** 3) ** 2 == 2


def test_cyclo_inverse_and_conjugate():
    x = CycloRational([1, 2, Fraction(-1, 3), 5])
    assert x * x.inverse() == 1
    assert CycloRational.zeta_power(1).conjugate() == CycloRational.zeta_power(7)
    with pytest.raises(DivisionByNonUnit):
        CycloRational().inverse()


# ---------------------------------------------------------
# Ring axioms on seeded random elements
# ---------------------------------------------------------

def test_ring_axioms(rng):
    for _ in range(30):
        a, b, c = random_scalar(rng), random_scalar(rng), random_scalar(rng)
        assert a + b == b + a
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a - a == 0


def test_conjugation_is_a_ring_map(rng):
    for _ in range(20):
        a, b = random_scalar(rng), random_scalar(rng)
        assert (a * b).conjugate() == a.conjugate() * b.conjugate()
        assert a.conjugate().conjugate() == a


# ---------------------------------------------------------
# Square roots
# ---------------------------------------------------------

def test_positive_square_roots():
    assert SQRT2 == ZETA - ZETA ** 3
    assert sqrt_positive_rational(8) == SQRT2 * 2
    assert sqrt_positive_rational("1/4") == Fraction(1, 2)
    assert sqrt_positive_rational(9) == 3
    for q in (3, 5, 6, Fraction(7, 12)):
        assert sqrt_positive_rational(q) ** 2 == q


def test_positive_square_roots_on_random_rationals(rng):
    for _ in range(1000):
        q = Fraction(rng.randint(1, 500), rng.randint(1, 60))
        root = sqrt_positive_rational(q)
        assert root ** 2 == q
        assert sqrt_positive_rational(q * q) == q


def test_negative_radicand():
    with pytest.raises(NegativeRadicand):
        sqrt_positive_rational(-1)


def test_special_square_roots():
    assert sqrt_special(I) ** 2 == I
    assert sqrt_special(TAU ** 2 * 4) == TAU * 2
    with pytest.raises(BranchUndetermined):
        sqrt_special(Scalar.of(-1))
    with pytest.raises(BranchUndetermined):
        sqrt_special(TAU)


def test_special_square_roots_on_random_inputs(rng):
    for _ in range(200):
        re_part = Fraction(rng.randint(-9, 9), rng.randint(1, 6))
        im_part = Fraction(rng.randint(-9, 9), rng.randint(1, 6))
        if im_part == 0 and re_part <= 0:
            continue
        a = Scalar.of(CycloRational.gaussian(re_part, im_part)) * TAU ** (2 * rng.randint(-2, 2))
        assert sqrt_special(a) ** 2 == a
    assert sqrt_special(Scalar.zero()) == 0


# ---------------------------------------------------------
# Units
# ---------------------------------------------------------

def test_inverse_with_radicals():
    assert (SQRT2 + 1).inverse() == SQRT2 - 1
    assert (SQRT3 + 1).inverse() == (SQRT3 - 1) * Fraction(1, 2)
    assert (TAU * 3).inverse() * TAU == Fraction(1, 3)


def test_non_units():
    with pytest.raises(DivisionByNonUnit):
        Scalar.zero().inverse()
    with pytest.raises(DivisionByNonUnit):
        (TAU + 1).inverse()
    assert not (TAU + 1).is_unit()


def test_records_round_trip():
    value = SQRT3 * ZETA + TAU ** -2 * Fraction(3, 7)
    assert Scalar.from_records(value.to_records()) == value


# ---------------------------------------------------------
# Canonical form
# ---------------------------------------------------------

def test_canonical_form_is_idempotent(rng):
    for _ in range(100):
        value = random_scalar(rng)
        rebuilt = Scalar(dict(value.terms))
        assert rebuilt.terms == value.terms
        assert Scalar(dict(rebuilt.terms)).terms == rebuilt.terms
        assert Scalar.from_records(value.to_records()).to_records() == value.to_records()
        assert (value + 0).terms == (value * 1).terms == value.terms


def test_canonical_form_ignores_construction_order(rng):
    for _ in range(50):
        a, b = random_scalar(rng), random_scalar(rng)
        assert (a + b).terms == (b + a).terms
        assert (a * b).terms == (b * a).terms
        assert hash(a * b) == hash(b * a)
    assert (SQRT2 * SQRT2).terms == Scalar.of(2).terms
    assert hash(SQRT2 * SQRT2) == hash(2)
