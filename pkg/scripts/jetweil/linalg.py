#!/usr/bin/env python3
"""
Exact linear algebra over Q for the module side.

Subspaces are stored as Span objects: a basis of column vectors inside a
DomainMatrix over QQ. Zero-dimensional spans carry no matrix, since
DomainMatrix shapes with a zero dimension are awkward to combine.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, List, Optional, Sequence

from sympy import Matrix
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix


def qq(value: Any):
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if isinstance(value, int):
        return QQ(value)
    return QQ.from_sympy(value)


def to_fraction(value: Any) -> Fraction:
    return Fraction(int(QQ.numer(value)), int(QQ.denom(value)))


def from_rows(rows: Sequence[Sequence[Any]], cols: Optional[int] = None) -> DomainMatrix:
    rows = [[qq(x) for x in row] for row in rows]
    width = len(rows[0]) if rows else (cols or 0)
    return DomainMatrix(rows, (len(rows), width), QQ)


def from_sympy(matrix: Matrix) -> DomainMatrix:
    return from_rows(matrix.tolist(), matrix.cols)


def zeros(m: int, n: int) -> DomainMatrix:
    return DomainMatrix.zeros((m, n), QQ)


def identity(n: int) -> DomainMatrix:
    return DomainMatrix.eye(n, QQ)


def scalar(n: int, value: Any) -> DomainMatrix:
    return from_rows([[value if i == j else 0 for j in range(n)] for i in range(n)], n)


def rank(matrix: Optional[DomainMatrix]) -> int:
    if matrix is None or 0 in matrix.shape:
        return 0
    return matrix.rank()


def columns(matrix: DomainMatrix) -> List[List[Any]]:
    rows = matrix.to_Matrix()
    return [[qq(rows[i, j]) for i in range(rows.rows)] for j in range(rows.cols)]


def from_columns(cols: Sequence[Sequence[Any]], height: int) -> Optional[DomainMatrix]:
    if not cols:
        return None
    return DomainMatrix([[col[i] for col in cols] for i in range(height)], (height, len(cols)), QQ)


@dataclass(frozen=True)
class Span:
    """Column span of `basis` inside Q^ambient; basis is None for the zero subspace"""

    ambient: int
    basis: Optional[DomainMatrix] = None

    @classmethod
    def of(cls, ambient: int, matrix: Optional[DomainMatrix]) -> "Span":
        """Span of the columns of matrix, reduced to an independent set"""
        if matrix is None or 0 in matrix.shape:
            return cls(ambient)
        _, pivots = matrix.rref()
        if not pivots:
            return cls(ambient)
        return cls(ambient, matrix.extract(list(range(ambient)), list(pivots)))

    @classmethod
    def whole(cls, ambient: int) -> "Span":
        return cls(ambient, identity(ambient)) if ambient else cls(ambient)

    @property
    def dim(self) -> int:
        return 0 if self.basis is None else self.basis.shape[1]

    def image(self, matrix: DomainMatrix) -> "Span":
        if self.basis is None:
            return Span(matrix.shape[0])
        return Span.of(matrix.shape[0], matrix * self.basis)

    def __add__(self, other: "Span") -> "Span":
        if self.basis is None:
            return other
        if other.basis is None:
            return self
        return Span.of(self.ambient, self.basis.hstack(other.basis))

    def intersect(self, other: "Span") -> "Span":
        if self.basis is None or other.basis is None:
            return Span(self.ambient)
        kernel = nullspace(self.basis.hstack(-other.basis))
        if kernel is None:
            return Span(self.ambient)
        coefficients = kernel.extract(list(range(self.dim)), list(range(kernel.shape[1])))
        return Span.of(self.ambient, self.basis * coefficients)

    def contains(self, other: "Span") -> bool:
        return (self + other).dim == self.dim

    def __eq__(self, other):
        if not isinstance(other, Span):
            return NotImplemented
        return self.ambient == other.ambient and self.dim == other.dim and self.contains(other)

    def __hash__(self):
        return hash((self.ambient, self.dim))


def nullspace(matrix: DomainMatrix) -> Optional[DomainMatrix]:
    """Kernel basis as columns, or None when the kernel is zero"""
    m, n = matrix.shape
    if n == 0:
        return None
    if m == 0:
        return identity(n)
    reduced, pivots = matrix.rref()
    entries = reduced.to_Matrix()
    free = [j for j in range(n) if j not in pivots]
    cols = []
    for f in free:
        vec = [QQ(0)] * n
        vec[f] = QQ(1)
        for row, p in enumerate(pivots):
            vec[p] = -qq(entries[row, f])
        cols.append(vec)
    return from_columns(cols, n)


def kernel(matrices: Sequence[DomainMatrix], ambient: int) -> Span:
    """Joint kernel of several maps out of Q^ambient"""
    nonempty = [m for m in matrices if m.shape[0]]
    if not nonempty:
        return Span.whole(ambient)
    stacked = nonempty[0]
    for m in nonempty[1:]:
        stacked = stacked.vstack(m)
    return Span.of(ambient, nullspace(stacked))


def restrict(matrix: DomainMatrix, span: Span) -> Matrix:
    """Matrix of an endomorphism preserving span, in the span's basis"""
    if span.basis is None:
        return Matrix(0, 0, [])
    k = span.basis
    kt = k.transpose()
    return ((kt * k).inv() * kt * matrix * k).to_Matrix()
