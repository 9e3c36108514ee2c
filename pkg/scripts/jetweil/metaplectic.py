#!/usr/bin/env python3
"""
Metaplectic Operators

Operator side of words in DiagA / LowerC / J: the projective cocycle of
sigma and its compatibility with the infinitesimal action.
"""

import random
from typing import Any, Dict, List, Sequence, Tuple

from .gauss import GaussVector, apply_weyl
from .jets import JetRing
from .oscillator import sigma_generator, sigma_inverse_generator, sigma_word
from .reports import FAIL, Case, compare, guarded, payload, sign_case
from .symplectic import (
    DiagA,
    GeneratorWord,
    JGen,
    LowerC,
    factorize,
    random_word,
    reduce_word,
    word_product,
)
from .weyl import dsigma, sp_basis

WordPair = Tuple[GeneratorWord, GeneratorWord, GeneratorWord]


def product_word(w1: GeneratorWord, w2: GeneratorWord) -> GeneratorWord:
    """Word for w1*w2 built independently of the concatenation: factorized for n = 1, reduced otherwise"""
    joined = w1 + w2
    if joined.n == 1:
        return factorize(word_product(joined))
    return reduce_word(joined)


def random_word_pairs(rng: random.Random, n: int, samples: int, max_length: int = 3) -> List[WordPair]:
    pairs = []
    for _ in range(samples):
        w1 = random_word(rng, n, max_length)
        w2 = random_word(rng, n, max_length)
        pairs.append((w1, w2, product_word(w1, w2)))
    return pairs


def word_pairs_from_json(items: Sequence[Dict[str, Any]], n: int) -> List[WordPair]:
    pairs = []
    for item in items:
        w1 = GeneratorWord.from_json(item["w1"], n)
        w2 = GeneratorWord.from_json(item["w2"], n)
        w12 = GeneratorWord.from_json(item["w12"], n) if "w12" in item else product_word(w1, w2)
        pairs.append((w1, w2, w12))
    return pairs


def cocycle_check(w1: GeneratorWord, w2: GeneratorWord, w12: GeneratorWord,
                  probes: Dict[str, GaussVector], name: str) -> Case:
    """sigma(w1) sigma(w2) = c * sigma(w12), c = +-1 on every probe"""
    def check():
        lhs_matrix = word_product(w1 + w2).matrix
        rhs_matrix = word_product(w12).matrix
        if lhs_matrix != rhs_matrix:
            return Case(name=name, status=FAIL, note="w12 does not multiply out to w1*w2",
                        witness={"w1w2": payload(w1 + w2), "w12": payload(w12)})
        pairs = [(sigma_word(w1, sigma_word(w2, v)), sigma_word(w12, v)) for v in probes.values()]
        return sign_case(name, pairs)
    return guarded(name, check)


def generator_samples(n: int) -> Dict[str, Any]:
    """A fixed spread of generators: positive and negative determinant, a chirp, J"""
    eye = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    flip = [row[:] for row in eye]
    flip[0][0] = -1
    double = [[2 * x for x in row] for row in eye]
    if n > 1:
        double[0][1] = 1
    return {
        "diag+": DiagA(double),
        "diag-": DiagA(flip),
        "lower": LowerC(eye),
        "J": JGen(n),
    }


def adjoint_covariance_check(ring: JetRing, probes: Dict[str, GaussVector], n: int,
                             label: str = "") -> List[Case]:
    """sigma(g) dsigma(u) sigma(g)^-1 = dsigma(g u g^-1) for generators g and sp basis elements u"""
    s = ring.variable()
    cases = []
    for gen_name, gen in generator_samples(n).items():
        g = gen.matrix()
        g_inv = g.inv()
        for u_name, u in sp_basis(n):
            before = dsigma(u, s)
            after = dsigma(g * u * g_inv, s)
            for probe_name, v in probes.items():
                case_name = f"adjoint/{label}{gen_name}/{u_name}/{probe_name}"

                def check(gen=gen, before=before, after=after, v=v, case_name=case_name):
                    lhs = sigma_generator(gen, apply_weyl(before, sigma_inverse_generator(gen, v)))
                    return compare(case_name, lhs, apply_weyl(after, v))

                cases.append(guarded(case_name, check))
    return cases


def known_cocycles(n: int = 1) -> List[Tuple[str, WordPair]]:
    """Pairs whose sign is fixed in advance"""
    minus = [[-1 if i == j else 0 for j in range(n)] for i in range(n)]
    two = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    three = [[3 if i == j else 0 for j in range(n)] for i in range(n)]
    six = [[6 if i == j else 0 for j in range(n)] for i in range(n)]
    j_word = GeneratorWord(n, (JGen(n),))
    return [
        ("J*J", (j_word, j_word, GeneratorWord(n, (DiagA(minus),)))),
        ("diag*diag", (GeneratorWord(n, (DiagA(two),)), GeneratorWord(n, (DiagA(three),)),
                       GeneratorWord(n, (DiagA(six),)))),
        ("empty", (j_word, GeneratorWord(n), j_word)),
    ]
