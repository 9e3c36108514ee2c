#!/usr/bin/env python3
"""
Symplectic Matrices and Generator Words

Matrices are sympy ImmutableMatrix objects with Rational entries. The
symplectic form is fixed as Omega = (0, I; -I, 0). A word [g1, ..., gm]
multiplies out as g1 * g2 * ... * gm.
"""

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, List, Optional, Sequence, Tuple, Union

from sympy import ImmutableMatrix, Matrix, Rational, eye, zeros

from .errors import DimensionMismatch, NotAGenerator, NotSymplectic
from .scalars import parse_rational, rational_json

SMALL_RATIONALS = [Fraction(p, q) for p in (-3, -2, -1, 1, 2, 3) for q in (1, 2, 3) if abs(p) != q or q == 1]


def to_fraction(value: Any) -> Fraction:
    if isinstance(value, (Fraction, int, str)):
        return parse_rational(value)
    value = Rational(value)
    return Fraction(int(value.p), int(value.q))


def to_rational(value: Any) -> Rational:
    q = to_fraction(value)
    return Rational(q.numerator, q.denominator)


def rational_matrix(rows: Any) -> ImmutableMatrix:
    """ImmutableMatrix of Rationals from nested lists, a sympy matrix or a scalar (1x1)"""
    if isinstance(rows, (Matrix, ImmutableMatrix)):
        return ImmutableMatrix(rows.rows, rows.cols, [to_rational(x) for x in rows])
    if not isinstance(rows, (list, tuple)):
        return ImmutableMatrix([[to_rational(rows)]])
    return ImmutableMatrix([[to_rational(x) for x in row] for row in rows])


def matrix_json(matrix: ImmutableMatrix) -> List[List[Union[int, str]]]:
    return [[rational_json(to_fraction(matrix[i, j])) for j in range(matrix.cols)] for i in range(matrix.rows)]


def matrix_fractions(matrix: ImmutableMatrix) -> Tuple[Tuple[Fraction, ...], ...]:
    return tuple(tuple(to_fraction(matrix[i, j]) for j in range(matrix.cols)) for i in range(matrix.rows))


def omega(n: int) -> ImmutableMatrix:
    m = zeros(2 * n, 2 * n)
    for j in range(n):
        m[j, n + j] = 1
        m[n + j, j] = -1
    return ImmutableMatrix(m)


@dataclass(frozen=True)
class SymplecticMatrix:
    matrix: ImmutableMatrix

    def __post_init__(self):
        matrix = rational_matrix(self.matrix)
        object.__setattr__(self, "matrix", matrix)
        if matrix.rows != matrix.cols or matrix.rows % 2:
            raise NotSymplectic(f"a {matrix.rows}x{matrix.cols} matrix cannot be symplectic")
        form = omega(matrix.rows // 2)
        if matrix.T * form * matrix != form:
            raise NotSymplectic(f"M^T Omega M != Omega for {matrix.tolist()}")

    @property
    def n(self) -> int:
        return self.matrix.rows // 2

    def act(self, a: Sequence[Fraction], b: Sequence[Fraction]) -> Tuple[Tuple[Fraction, ...], Tuple[Fraction, ...]]:
        """(a', b') = M (a; b)"""
        column = Matrix([to_rational(x) for x in list(a) + list(b)])
        image = [to_fraction(x) for x in self.matrix * column]
        return tuple(image[: self.n]), tuple(image[self.n:])

    def to_dict(self):
        return {"matrix": matrix_json(self.matrix)}


@dataclass(frozen=True)
class DiagA:
    """diag(A, A^-T)"""

    a: ImmutableMatrix

    def __post_init__(self):
        a = rational_matrix(self.a)
        object.__setattr__(self, "a", a)
        if a.rows != a.cols or a.det() == 0:
            raise NotAGenerator(f"DiagA needs an invertible square matrix, got {a.tolist()}")

    @property
    def n(self) -> int:
        return self.a.rows

    def matrix(self) -> ImmutableMatrix:
        n = self.n
        m = zeros(2 * n, 2 * n)
        m[:n, :n] = self.a
        m[n:, n:] = self.a.inv().T
        return ImmutableMatrix(m)

    def inverse(self) -> "DiagA":
        return DiagA(self.a.inv())

    def is_identity(self) -> bool:
        return self.a == eye(self.n)

    def to_json(self):
        return {"diag": matrix_json(self.a)}


@dataclass(frozen=True)
class LowerC:
    """(I, 0; C, I) with C symmetric"""

    c: ImmutableMatrix

    def __post_init__(self):
        c = rational_matrix(self.c)
        object.__setattr__(self, "c", c)
        if c.rows != c.cols or c != c.T:
            raise NotAGenerator(f"LowerC needs a symmetric square matrix, got {c.tolist()}")

    @property
    def n(self) -> int:
        return self.c.rows

    def matrix(self) -> ImmutableMatrix:
        n = self.n
        m = eye(2 * n)
        m[n:, :n] = self.c
        return ImmutableMatrix(m)

    def inverse(self) -> "LowerC":
        return LowerC(-self.c)

    def is_identity(self) -> bool:
        return self.c == zeros(self.n, self.n)

    def to_json(self):
        return {"lower": matrix_json(self.c)}


@dataclass(frozen=True)
class JGen:
    """The standard complex structure Omega"""

    n: int

    def matrix(self) -> ImmutableMatrix:
        return omega(self.n)

    def is_identity(self) -> bool:
        return False

    def to_json(self):
        return "J"


Generator = Union[DiagA, LowerC, JGen]


def generator_from_json(item: Any, n: int) -> Generator:
    if item == "J":
        return JGen(n)
    if isinstance(item, dict) and len(item) == 1:
        if "diag" in item:
            gen = DiagA(item["diag"])
        elif "lower" in item:
            gen = LowerC(item["lower"])
        else:
            raise NotAGenerator(f"unknown generator {item!r}")
        if gen.n != n:
            raise DimensionMismatch(f"generator of size {gen.n} in a word over n={n}")
        return gen
    raise NotAGenerator(f"unknown generator {item!r}")


@dataclass(frozen=True)
class GeneratorWord:
    n: int
    generators: Tuple[Generator, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        for gen in self.generators:
            if not isinstance(gen, (DiagA, LowerC, JGen)):
                raise NotAGenerator(f"{gen!r} is not a generator")
            if gen.n != self.n:
                raise DimensionMismatch(f"generator of size {gen.n} in a word over n={self.n}")

    def __add__(self, other: "GeneratorWord") -> "GeneratorWord":
        if other.n != self.n:
            raise DimensionMismatch("cannot concatenate words over different n")
        return GeneratorWord(self.n, self.generators + other.generators)

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def to_json(self) -> List[Any]:
        return [gen.to_json() for gen in self.generators]

    def to_dict(self):
        return {"n": self.n, "word": self.to_json()}

    @classmethod
    def from_json(cls, items: Sequence[Any], n: int) -> "GeneratorWord":
        return cls(n, tuple(generator_from_json(item, n) for item in items))


def word_product(word: GeneratorWord) -> SymplecticMatrix:
    product = eye(2 * word.n)
    for gen in word:
        product = product * gen.matrix()
    return SymplecticMatrix(ImmutableMatrix(product))


def factorize(matrix: SymplecticMatrix) -> GeneratorWord:
    """Generator word for an element of SL(2, Q)"""
    if matrix.n != 1:
        raise NotImplementedError("factorization is only available for n = 1; pass words directly")
    a, b, c, d = (to_fraction(x) for x in matrix.matrix)
    if b == 0:
        candidates = [LowerC(c / a), DiagA(a)]
    else:
        candidates = [LowerC(d / b), JGen(1), LowerC(a * b), DiagA(1 / b)]
    return GeneratorWord(1, tuple(g for g in candidates if not g.is_identity()))


def _rewrite(left: Generator, right: Generator) -> Optional[List[Generator]]:
    if isinstance(left, DiagA) and isinstance(right, DiagA):
        return [DiagA(left.a * right.a)]
    if isinstance(left, LowerC) and isinstance(right, LowerC):
        return [LowerC(left.c + right.c)]
    if isinstance(left, DiagA) and isinstance(right, LowerC):
        inv = left.a.inv()
        return [LowerC(inv.T * right.c * inv), left]
    if isinstance(left, DiagA) and isinstance(right, JGen):
        return [right, DiagA(left.a.inv().T)]
    if isinstance(left, JGen) and isinstance(right, JGen):
        return [DiagA(-eye(left.n))]
    return None


def reduce_word(word: GeneratorWord) -> GeneratorWord:
    """Equivalent word with every DiagA pushed to the right and neighbours merged"""
    items = list(word.generators)
    changed = True
    while changed:
        changed = False
        out: List[Generator] = []
        for gen in items:
            if gen.is_identity():
                changed = True
                continue
            rewritten = _rewrite(out[-1], gen) if out else None
            if rewritten is None:
                out.append(gen)
                continue
            out.pop()
            out.extend(g for g in rewritten if not g.is_identity())
            changed = True
        items = out
    return GeneratorWord(word.n, tuple(items))


def random_rational(rng: random.Random) -> Fraction:
    return rng.choice(SMALL_RATIONALS)


def random_generator(rng: random.Random, n: int) -> Generator:
    kind = rng.choice(("diag", "lower", "J"))
    if kind == "J":
        return JGen(n)
    if kind == "lower":
        c = zeros(n, n)
        for i in range(n):
            for j in range(i, n):
                value = to_rational(random_rational(rng)) if rng.random() < 0.6 else 0
                c[i, j] = c[j, i] = value
        return LowerC(c)
    while True:
        a = Matrix(n, n, lambda i, j: to_rational(random_rational(rng)) if i == j or rng.random() < 0.3 else 0)
        if a.det() != 0:
            return DiagA(a)


def random_word(rng: random.Random, n: int, max_length: int = 3) -> GeneratorWord:
    length = rng.randint(1, max_length)
    return GeneratorWord(n, tuple(random_generator(rng, n) for _ in range(length)))
