from fractions import Fraction

import pytest
from sympy import ImmutableMatrix, eye

from jetweil.errors import DimensionMismatch, NotAGenerator, NotSymplectic
from jetweil.symplectic import (
    DiagA,
    GeneratorWord,
    JGen,
    LowerC,
    SymplecticMatrix,
    factorize,
    omega,
    random_word,
    reduce_word,
    word_product,
)


def test_omega():
    assert omega(1) == ImmutableMatrix([[0, 1], [-1, 0]])
    assert omega(2) * omega(2) == -eye(4)


def test_generators_are_symplectic():
    for gen in (DiagA([[2, 1], [0, 3]]), LowerC([[1, Fraction(1, 2)], [Fraction(1, 2), -1]]), JGen(2)):
        SymplecticMatrix(gen.matrix())


def test_rejects_non_symplectic():
    with pytest.raises(NotSymplectic):
        SymplecticMatrix([[2, 0], [0, 1]])
    with pytest.raises(NotSymplectic):
        SymplecticMatrix([[1, 0, 0]])


def test_generator_preconditions():
    with pytest.raises(NotAGenerator):
        DiagA([[1, 2], [2, 4]])
    with pytest.raises(NotAGenerator):
        LowerC([[0, 1], [2, 0]])
    with pytest.raises(DimensionMismatch):
        GeneratorWord(1, (JGen(2),))


def test_factorize_round_trip(rng):
    for _ in range(50):
        matrix = word_product(random_word(rng, 1, 4))
        assert word_product(factorize(matrix)).matrix == matrix.matrix


def test_factorize_lower_triangular():
    word = factorize(SymplecticMatrix([[2, 0], [3, Fraction(1, 2)]]))
    assert word.to_json() == [{"lower": [["3/2"]]}, {"diag": [[2]]}]


def test_diag_moves_past_j():
    a = [[2, 1], [0, 1]]
    word = GeneratorWord(2, (DiagA(a), JGen(2)))
    reduced = reduce_word(word)
    assert isinstance(reduced.generators[0], JGen)
    assert word_product(reduced).matrix == word_product(word).matrix


def test_reduce_word_keeps_the_product(rng):
    for n in (1, 2):
        for _ in range(30):
            word = random_word(rng, n, 5)
            assert word_product(reduce_word(word)).matrix == word_product(word).matrix


def test_reduce_word_merges_neighbours():
    word = GeneratorWord(1, (LowerC([[1]]), LowerC([[-1]]), JGen(1), JGen(1)))
    assert reduce_word(word).to_json() == [{"diag": [[-1]]}]


def test_json_round_trip(rng):
    for _ in range(10):
        word = random_word(rng, 2)
        assert GeneratorWord.from_json(word.to_json(), 2) == word


def test_action_on_pairs():
    matrix = SymplecticMatrix(omega(1))
    assert matrix.act([Fraction(1)], [Fraction(2)]) == ((Fraction(2),), (Fraction(-1),))
