import json
from pathlib import Path

import pytest

from jetweil.gauss import GaussVector
from jetweil.jets import JetRing
from jetweil.metaplectic import (
    adjoint_covariance_check,
    cocycle_check,
    known_cocycles,
    product_word,
    random_word_pairs,
    word_pairs_from_json,
)
from jetweil.reports import ERROR, FAIL
from jetweil.symplectic import GeneratorWord, JGen, word_product

WORDS = Path(__file__).resolve().parent.parent / "resources" / "words" / "cocycle-n1.json"


def probes(ring, n=1, top=2):
    if n == 1:
        return {f"x^{m}": GaussVector.hermite(ring, m, 1) for m in range(top + 1)}
    return {"x^(0,0)": GaussVector.hermite(ring, (0, 0), 2),
            "x^(0,1)": GaussVector.hermite(ring, (0, 1), 2)}


def test_product_word_multiplies_out(rng):
    for n in (1, 2):
        for w1, w2, w12 in random_word_pairs(rng, n, 10):
            assert word_product(w12).matrix == word_product(w1 + w2).matrix


@pytest.mark.parametrize("n", [1, 2])
def test_known_cocycles(n):
    ring = JetRing(1, 2)
    for name, (w1, w2, w12) in known_cocycles(n):
        case = cocycle_check(w1, w2, w12, probes(ring, n, 1), name)
        assert case.passed, case.to_dict()
        assert case.sign in (1, -1)


def test_j_squared_sign_depends_on_n():
    ring = JetRing(1, 2)
    signs = {}
    for n in (1, 2):
        (_, (w1, w2, w12)), = [item for item in known_cocycles(n) if item[0] == "J*J"]
        signs[n] = cocycle_check(w1, w2, w12, probes(ring, n, 1), "J*J").sign
    assert signs == {1: 1, 2: -1}


def test_random_pairs_are_projective(rng):
    ring = JetRing(2, 2)
    for index, (w1, w2, w12) in enumerate(random_word_pairs(rng, 1, 15)):
        case = cocycle_check(w1, w2, w12, probes(ring), f"random/{index}")
        assert case.passed, case.to_dict()


def test_random_pairs_in_two_variables(rng):
    ring = JetRing(1, 1)
    for index, (w1, w2, w12) in enumerate(random_word_pairs(rng, 2, 3, max_length=2)):
        case = cocycle_check(w1, w2, w12, probes(ring, 2), f"random2/{index}")
        assert case.passed, case.to_dict()


def test_wrong_product_fails():
    ring = JetRing(1, 1)
    j = GeneratorWord(1, (JGen(1),))
    case = cocycle_check(j, j, j, probes(ring), "bad")
    assert case.status == FAIL
    assert "w12" in case.witness


def test_pairs_from_file():
    ring = JetRing(1, 2)
    with open(WORDS, "r", encoding="utf-8") as f:
        pairs = word_pairs_from_json(json.load(f), 1)
    assert len(pairs) == 4
    for index, (w1, w2, w12) in enumerate(pairs):
        assert cocycle_check(w1, w2, w12, probes(ring), f"file/{index}").passed


def test_product_word_for_n1_is_factorized():
    j = GeneratorWord(1, (JGen(1),))
    assert product_word(j, j).to_json() == [{"diag": [[-1]]}]


@pytest.mark.parametrize("n", [1, 2])
def test_adjoint_covariance(n):
    ring = JetRing(3, 2)
    cases = adjoint_covariance_check(ring, probes(ring, n, 1), n)
    assert cases
    assert [c.to_dict() for c in cases if c.status in (FAIL, ERROR)] == []
