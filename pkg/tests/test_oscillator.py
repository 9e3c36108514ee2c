from fractions import Fraction

import pytest

from jetweil.errors import DimensionMismatch, NonSquareBase, NotAGenerator
from jetweil.gauss import GaussVector, linear_substitute, parity
from jetweil.jets import JetRing
from jetweil.oscillator import (
    HeisenbergElement,
    central_character_check,
    covariance_check,
    fourier_inversion_check,
    gaussian_pairing_check,
    heisenberg_law_check,
    lagrangian_checks,
    omega_pairing_invariance,
    rho,
    sigma_generator,
    sigma_inverse_generator,
    sigma_j_matrix_check,
    sigma_word,
    square_class_checks,
    square_class_intertwiner,
)
from jetweil.scalars import Scalar, sqrt_positive_rational
from jetweil.symplectic import DiagA, GeneratorWord, JGen, LowerC, random_word


def probes(ring, n=1, top=2, scaled=True):
    if n == 1:
        return {f"x^{m}": GaussVector.hermite(ring, m, 1, scaled) for m in range(top + 1)}
    return {"x^(0,0)": GaussVector.hermite(ring, (0, 0), 2, scaled),
            "x^(1,0)": GaussVector.hermite(ring, (1, 0), 2, scaled)}


def all_pass(cases):
    failing = [case.to_dict() for case in cases if not case.passed]
    assert failing == []


# ---------------------------------------------------------
# Heisenberg group
# ---------------------------------------------------------

def test_group_law_is_associative(rng):
    for n in (1, 2):
        for _ in range(20):
            x, y, z = (HeisenbergElement.random(rng, n) for _ in range(3))
            assert (x * y) * z == x * (y * z)
            assert x * x.inverse() == HeisenbergElement.identity(n)


def test_commutator_is_central():
    h1 = HeisenbergElement((1,), (0,))
    h2 = HeisenbergElement((0,), (1,))
    assert h1 * h2 == h2 * h1 * HeisenbergElement.central(1, 1)


def test_rank_mismatch():
    with pytest.raises(DimensionMismatch):
        HeisenbergElement((1, 2), (0,))


def test_identity_acts_trivially():
    ring = JetRing(2, 3)
    for v in probes(ring).values():
        assert rho(HeisenbergElement.identity(1), v) == v


def test_representation_law(rng):
    ring = JetRing(1, 2)
    for n in (1, 2):
        for index in range(5):
            h1, h2 = HeisenbergElement.random(rng, n), HeisenbergElement.random(rng, n)
            case = heisenberg_law_check(h1, h2, probes(ring, n, 1), f"law/{index}")
            assert case.passed, case.to_dict()


def test_central_character(rng):
    ring = JetRing(3, 3)
    classical = probes(ring, scaled=False)
    for index in range(5):
        t = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
        assert central_character_check(t, classical, f"central/{index}").passed


# ---------------------------------------------------------
# Generators
# ---------------------------------------------------------

def test_sigma_j_on_gaussian():
    ring = JetRing(1, 3)
    g = GaussVector.gaussian(ring)
    assert sigma_generator(JGen(1), g) == g.scale(Scalar.zeta())


def test_sigma_diag_dilates():
    ring = JetRing(1, 2)
    g = GaussVector.gaussian(ring)
    expected = linear_substitute(g, [[Fraction(1, 2)]]).scale(sqrt_positive_rational(2).inverse())
    assert sigma_generator(DiagA([[2]]), g) == expected


def test_sigma_diag_negative_determinant_is_parity_up_to_i():
    ring = JetRing(1, 2)
    v = GaussVector.hermite(ring, 1)
    assert sigma_generator(DiagA([[-1]]), v) == parity(v).scale(Scalar.imag_unit())


@pytest.mark.parametrize("gen", [DiagA([[3]]), DiagA([[-2]]), LowerC([[Fraction(1, 2)]]), JGen(1)])
def test_inverse_generators(gen):
    ring = JetRing(4, 2)
    for v in probes(ring).values():
        assert sigma_inverse_generator(gen, sigma_generator(gen, v)) == v
        assert sigma_generator(gen, sigma_inverse_generator(gen, v)) == v


def test_j_lower_relation():
    ring = JetRing(1, 2)
    word = GeneratorWord(1, (JGen(1), LowerC([[1]])) * 3)
    for v in probes(ring).values():
        assert sigma_word(word, v) == parity(v).scale(Scalar.imag_unit())


def test_not_a_generator():
    ring = JetRing(1, 1)
    with pytest.raises(NotAGenerator):
        sigma_generator("J", GaussVector.gaussian(ring))
    with pytest.raises(DimensionMismatch):
        sigma_generator(JGen(2), GaussVector.gaussian(ring))


# ---------------------------------------------------------
# Checks used by the suites
# ---------------------------------------------------------

@pytest.mark.parametrize("s0,k", [(1, 1), (1, 2), (4, 3), (9, 2)])
def test_fourier_inversion(s0, k):
    ring = JetRing(s0, k)
    all_pass(fourier_inversion_check(ring, probes(ring, top=4)))


@pytest.mark.parametrize("s0,k", [(1, 3), (4, 2)])
def test_sigma_j_matrix_form(s0, k):
    ring = JetRing(s0, k)
    all_pass(sigma_j_matrix_check(ring, probes(ring, top=2, scaled=False)))


def test_covariance(rng):
    ring = JetRing(1, 2)
    for n in (1, 2):
        for index in range(5):
            word = random_word(rng, n)
            h = HeisenbergElement.random(rng, n)
            case = covariance_check(word, h, probes(ring, n, 1), f"cov/{n}/{index}")
            assert case.passed, case.to_dict()


def test_pairings(rng):
    ring = JetRing(1, 2)
    elements = [HeisenbergElement.random(rng, 1) for _ in range(2)]
    words = [random_word(rng, 1) for _ in range(2)]
    all_pass(omega_pairing_invariance(probes(ring, top=1), elements, words))
    assert gaussian_pairing_check(ring).passed
    assert gaussian_pairing_check(ring, 2).passed


# ---------------------------------------------------------
# Intertwiners
# ---------------------------------------------------------

def test_lagrangian_intertwiner(rng):
    ring = JetRing(4, 2)
    elements = [HeisenbergElement.random(rng, 1) for _ in range(3)]
    all_pass(lagrangian_checks(probes(ring), elements))


def test_square_class_intertwiner():
    ring = JetRing(4, 2)
    generators = {"diag": DiagA([[2]]), "lower": LowerC([[1]]), "J": JGen(1)}
    all_pass(square_class_checks(probes(ring, scaled=False), generators))


def test_square_class_is_identity_at_one():
    ring = JetRing(1, 1)
    for v in probes(ring).values():
        assert square_class_intertwiner(v) == v


def test_square_class_needs_square_base():
    ring = JetRing(2, 2)
    with pytest.raises(NonSquareBase):
        square_class_intertwiner(GaussVector.gaussian(ring))
