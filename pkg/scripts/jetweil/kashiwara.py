#!/usr/bin/env python3
"""
Heisenberg Modules and the Functors F and G

The Heisenberg Lie algebra has basis x_i, y_i (i < n) and a central z with
[x_i, y_j] = delta_ij z. Modules here are finite truncations: an induced
module G(N) = Q[y] (x) N keeps the monomials y^alpha with |alpha| <= D, so
y is truncated at the top degree while x and z act exactly.

    F(M) = joint kernel of the x_i, with the restricted z
    G(N) = induced module, x_i(y^alpha (x) e) = alpha_i y^(alpha - e_i) (x) z e
"""

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb, perm
from typing import Any, Dict, List, Optional, Sequence, Tuple

from sympy import ImmutableMatrix, Matrix, Poly, Symbol, eye, factor_list, zeros as sympy_zeros

from . import linalg
from .errors import DegreeOverflow, DimensionMismatch, SingularCenter
from .linalg import Span
from .reports import FAIL, PASS, Case, compare, guarded
from .scalars import parse_rational, rational_json
from .symplectic import SMALL_RATIONALS, matrix_json, rational_matrix, to_fraction

Exps = Tuple[int, ...]
Key = Tuple[Exps, int, Exps]


@lru_cache(maxsize=None)
def _reorder(beta: Exps, gamma: Exps) -> Tuple[Tuple[int, int, Exps, Exps], ...]:
    """x^beta y^gamma as a sum of weight * z^k y^gamma' x^beta'"""
    terms = [(1, 0, (), ())]
    for b, c in zip(beta, gamma):
        expanded = []
        for k in range(min(b, c) + 1):
            weight = comb(b, k) * perm(c, k)
            for coeff, zs, ys, xs in terms:
                expanded.append((coeff * weight, zs + k, ys + (c - k,), xs + (b - k,)))
        terms = expanded
    return tuple(terms)


def _unit(j: int, n: int) -> Exps:
    return tuple(1 if i == j else 0 for i in range(n))


def _add(a: Exps, b: Exps) -> Exps:
    return tuple(x + y for x, y in zip(a, b))


class EnvelopingElement:
    """Normal-ordered sum c * y^alpha z^m x^beta with m in Z"""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Optional[Dict[Key, Any]] = None):
        self.n = n
        self.terms: Dict[Key, Fraction] = {}
        for (alpha, m, beta), coeff in (terms or {}).items():
            if len(alpha) != n or len(beta) != n:
                raise DimensionMismatch(f"monomial {alpha}, {beta} does not have {n} pairs")
            coeff = parse_rational(coeff)
            if coeff:
                self.terms[(tuple(alpha), int(m), tuple(beta))] = coeff

    @classmethod
    def _make(cls, n: int, acc: Dict[Key, Fraction]) -> "EnvelopingElement":
        obj = object.__new__(cls)
        obj.n = n
        obj.terms = {k: v for k, v in acc.items() if v}
        return obj

    @classmethod
    def constant(cls, value: Any, n: int = 1) -> "EnvelopingElement":
        zero = (0,) * n
        return cls(n, {(zero, 0, zero): value})

    @classmethod
    def one(cls, n: int = 1) -> "EnvelopingElement":
        return cls.constant(1, n)

    @classmethod
    def x(cls, j: int = 0, n: int = 1) -> "EnvelopingElement":
        return cls(n, {((0,) * n, 0, _unit(j, n)): 1})

    @classmethod
    def y(cls, j: int = 0, n: int = 1) -> "EnvelopingElement":
        return cls(n, {(_unit(j, n), 0, (0,) * n): 1})

    @classmethod
    def z(cls, power: int = 1, n: int = 1) -> "EnvelopingElement":
        zero = (0,) * n
        return cls(n, {(zero, power, zero): 1})

    @classmethod
    def euler(cls, n: int = 1) -> "EnvelopingElement":
        """sum y_j x_j"""
        out = cls(n)
        for j in range(n):
            out = out + cls.y(j, n) * cls.x(j, n)
        return out

    def _lift(self, other: Any) -> "EnvelopingElement":
        if isinstance(other, EnvelopingElement):
            if other.n != self.n:
                raise DimensionMismatch(f"elements over {self.n} and {other.n} pairs do not combine")
            return other
        return EnvelopingElement.constant(other, self.n)

    def __add__(self, other):
        other = self._lift(other)
        acc = dict(self.terms)
        for key, coeff in other.terms.items():
            acc[key] = acc.get(key, 0) + coeff
        return EnvelopingElement._make(self.n, acc)

    __radd__ = __add__

    def __neg__(self):
        return EnvelopingElement._make(self.n, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, value: Any) -> "EnvelopingElement":
        value = parse_rational(value)
        return EnvelopingElement._make(self.n, {k: c * value for k, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, EnvelopingElement):
            return self.scale(other)
        other = self._lift(other)
        acc: Dict[Key, Fraction] = {}
        for (a1, m1, b1), c1 in self.terms.items():
            for (a2, m2, b2), c2 in other.terms.items():
                for weight, k, ys, xs in _reorder(b1, a2):
                    key = (_add(a1, ys), m1 + m2 + k, _add(xs, b2))
                    acc[key] = acc.get(key, 0) + c1 * c2 * weight
        return EnvelopingElement._make(self.n, acc)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, exponent: int) -> "EnvelopingElement":
        out = EnvelopingElement.one(self.n)
        for _ in range(exponent):
            out = out * self
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, EnvelopingElement):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __repr__(self):
        return f"EnvelopingElement(n={self.n}, terms={len(self.terms)})"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "terms": [
                {"y_exp": list(alpha), "z_exp": m, "x_exp": list(beta), "coeff": rational_json(coeff)}
                for (alpha, m, beta), coeff in sorted(self.terms.items())
            ],
        }


def env_multiply(a: EnvelopingElement, b: EnvelopingElement) -> EnvelopingElement:
    return a * b


def _evaluate(poly: Poly, matrix: Matrix) -> Matrix:
    out = sympy_zeros(matrix.rows, matrix.cols)
    for coeff in poly.all_coeffs():
        out = out * matrix + coeff * eye(matrix.rows)
    return out


@dataclass(frozen=True)
class ZModule:
    """Finite-dimensional module over Q[z, 1/z]"""

    z_matrix: ImmutableMatrix
    labels: Tuple[str, ...] = ()

    def __post_init__(self):
        self._normalize()
        if self.z_matrix.det() == 0:
            raise SingularCenter(f"z does not act invertibly: {self.z_matrix.tolist()}")

    def _normalize(self):
        matrix = rational_matrix(self.z_matrix)
        if matrix.rows != matrix.cols:
            raise DimensionMismatch(f"z matrix of shape {matrix.rows}x{matrix.cols}")
        labels = tuple(self.labels) or tuple(f"e{j}" for j in range(matrix.rows))
        if len(labels) != matrix.rows:
            raise DimensionMismatch(f"{len(labels)} labels for a {matrix.rows}-dimensional module")
        object.__setattr__(self, "z_matrix", matrix)
        object.__setattr__(self, "labels", labels)

    @classmethod
    def unchecked(cls, z_matrix: Any, labels: Sequence[str] = ()) -> "ZModule":
        """Skips the invertibility check; only for demonstrating what breaks without it"""
        obj = object.__new__(cls)
        object.__setattr__(obj, "z_matrix", z_matrix)
        object.__setattr__(obj, "labels", tuple(labels))
        obj._normalize()
        return obj

    @property
    def dim(self) -> int:
        return self.z_matrix.rows

    def direct_sum(self, other: "ZModule") -> "ZModule":
        d1, d2 = self.dim, other.dim
        block = sympy_zeros(d1 + d2, d1 + d2)
        block[:d1, :d1] = self.z_matrix
        block[d1:, d1:] = other.z_matrix
        labels = tuple(f"a.{x}" for x in self.labels) + tuple(f"b.{x}" for x in other.labels)
        return ZModule(ImmutableMatrix(block), labels)

    def similarity_invariants(self) -> Tuple[Tuple[str, int, int], ...]:
        """Elementary divisors (p, exponent, count), which fix the rational canonical form"""
        if self.dim == 0:
            return ()
        lam = Symbol("lambda")
        a = Matrix(self.z_matrix)
        _, factors = factor_list(a.charpoly(lam).as_expr(), lam)
        out = []
        for factor, multiplicity in factors:
            poly = Poly(factor, lam).monic()
            degree = poly.degree()
            p_of_a = _evaluate(poly, a)
            power = eye(self.dim)
            nullities = [0]
            for _ in range(multiplicity):
                power = power * p_of_a
                nullities.append(self.dim - power.rank())
            at_least = [(nullities[j] - nullities[j - 1]) // degree for j in range(1, multiplicity + 1)] + [0]
            for j in range(1, multiplicity + 1):
                count = at_least[j - 1] - at_least[j]
                if count:
                    out.append((str(poly.as_expr()), j, count))
        return tuple(sorted(out))

    def is_isomorphic(self, other: "ZModule") -> bool:
        return self.dim == other.dim and self.similarity_invariants() == other.similarity_invariants()

    def to_dict(self) -> Dict[str, Any]:
        return {
            "dim": self.dim,
            "z_matrix": matrix_json(self.z_matrix),
            "labels": list(self.labels),
            "invariants": [list(item) for item in self.similarity_invariants()],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ZModule":
        rows = data.get("z_matrix", [])
        dim = int(data.get("dim", len(rows)))
        if dim != len(rows):
            raise DimensionMismatch(f"dim {dim} but z_matrix has {len(rows)} rows")
        return cls(ImmutableMatrix(dim, dim, [to_fraction(x) for row in rows for x in row]),
                   tuple(data.get("labels", ())))

    @classmethod
    def random(cls, rng: random.Random, dim: int) -> "ZModule":
        """Blocks (scalar, Jordan, irreducible quadratic) hidden by a random change of basis"""
        block = sympy_zeros(dim, dim)
        start = 0
        while start < dim:
            kind = rng.choice(("scalar", "jordan", "rotation"))
            q = to_fraction(rng.choice(SMALL_RATIONALS))
            if kind != "scalar" and start + 2 <= dim:
                if kind == "jordan":
                    block[start:start + 2, start:start + 2] = Matrix([[q, 1], [0, q]])
                else:
                    block[start:start + 2, start:start + 2] = Matrix([[0, -abs(q)], [1, 0]])
                start += 2
            else:
                block[start, start] = q
                start += 1
        while True:
            p = Matrix(dim, dim, lambda i, j: 1 if i == j else rng.choice((-1, 0, 0, 1, 2)))
            if p.det() != 0:
                break
        return cls(ImmutableMatrix(p * block * p.inv()))


def monomials(n: int, degree_bound: int) -> List[Exps]:
    """All y-exponents with |alpha| <= D, by degree"""
    out = []
    for degree in range(degree_bound + 1):
        for combo in combinations_with_replacement(range(n), degree):
            out.append(tuple(combo.count(j) for j in range(n)))
    return out


class HeisenbergModule:
    """
    Finite truncation of a Heisenberg module with graded basis. y_ops are
    truncated at the degree bound; x_ops and z_op act exactly.
    """

    def __init__(self, n: int, degree_bound: int, degrees: Sequence[int], x_ops: Sequence[Any],
                 y_ops: Sequence[Any], z_op: Any, labels: Sequence[str] = ()):
        self.n = n
        self.degree_bound = degree_bound
        self.degrees = tuple(degrees)
        self.x_ops = list(x_ops)
        self.y_ops = list(y_ops)
        self.z_op = z_op
        self.labels = tuple(labels) or tuple(f"b{j}" for j in range(len(self.degrees)))
        if len(self.x_ops) != n or len(self.y_ops) != n:
            raise DimensionMismatch(f"{len(self.x_ops)} x and {len(self.y_ops)} y operators for n = {n}")

    @property
    def dim(self) -> int:
        return len(self.degrees)

    def degree_span(self, top: int) -> Span:
        """Basis vectors of degree <= top"""
        cols = []
        for index, degree in enumerate(self.degrees):
            if degree <= top:
                vec = [linalg.QQ(0)] * self.dim
                vec[index] = linalg.QQ(1)
                cols.append(vec)
        return Span(self.dim, linalg.from_columns(cols, self.dim))

    def direct_sum(self, other: "HeisenbergModule") -> "HeisenbergModule":
        if other.n != self.n or other.degree_bound != self.degree_bound:
            raise DimensionMismatch("direct sums need equal n and degree bound")

        def block(a, b):
            d1, d2 = self.dim, other.dim
            out = linalg.zeros(d1 + d2, d1 + d2).to_Matrix()
            out[:d1, :d1] = a.to_Matrix()
            out[d1:, d1:] = b.to_Matrix()
            return linalg.from_sympy(out)

        return HeisenbergModule(
            self.n, self.degree_bound, self.degrees + other.degrees,
            [block(a, b) for a, b in zip(self.x_ops, other.x_ops)],
            [block(a, b) for a, b in zip(self.y_ops, other.y_ops)],
            block(self.z_op, other.z_op),
            tuple(f"a.{x}" for x in self.labels) + tuple(f"b.{x}" for x in other.labels),
        )

    def x_monomial(self, beta: Exps) -> Any:
        out = linalg.identity(self.dim)
        for j, e in enumerate(beta):
            for _ in range(e):
                out = self.x_ops[j] * out
        return out

    def y_monomial(self, alpha: Exps) -> Any:
        out = linalg.identity(self.dim)
        for j, e in enumerate(alpha):
            for _ in range(e):
                out = self.y_ops[j] * out
        return out

    def apply(self, element: EnvelopingElement, vector: Sequence[Any]) -> List[Fraction]:
        """element . vector; raises DegreeOverflow when y would leave the truncation"""
        if element.n != self.n:
            raise DimensionMismatch(f"element over {element.n} pairs on a module over {self.n}")
        if len(vector) != self.dim:
            raise DimensionMismatch(f"vector of length {len(vector)} in a {self.dim}-dimensional module")
        column = linalg.from_columns([[linalg.qq(parse_rational(x)) for x in vector]], self.dim)
        total = linalg.zeros(self.dim, 1)
        z_inverse = None
        for (alpha, m, beta), coeff in element.terms.items():
            v = self.x_monomial(beta) * column
            if m < 0 and z_inverse is None:
                z_inverse = self.z_op.inv()
            for _ in range(abs(m)):
                v = (self.z_op if m > 0 else z_inverse) * v
            for j, e in enumerate(alpha):
                for _ in range(e):
                    entries = linalg.columns(v)[0]
                    if any(x and self.degrees[i] >= self.degree_bound for i, x in enumerate(entries)):
                        raise DegreeOverflow(f"y_{j} leaves degree <= {self.degree_bound}")
                    v = self.y_ops[j] * v
            total = total + v * linalg.from_rows([[coeff]])
        return [linalg.to_fraction(x) for x in linalg.columns(total)[0]]


class InducedModule(HeisenbergModule):
    """G(N) truncated at |alpha| <= D, basis y^alpha (x) e_j"""

    def __init__(self, base: ZModule, n: int, degree_bound: int):
        if degree_bound < 0:
            raise ValueError("degree bound must be >= 0")
        self.base = base
        d = base.dim
        exps = monomials(n, degree_bound)
        index = {(alpha, j): k for k, (alpha, j) in enumerate((alpha, j) for alpha in exps for j in range(d))}
        size = len(index)
        z = [[to_fraction(base.z_matrix[i, j]) for j in range(d)] for i in range(d)]

        def empty():
            return [[0] * size for _ in range(size)]

        x_rows = [empty() for _ in range(n)]
        y_rows = [empty() for _ in range(n)]
        z_rows = empty()
        for (alpha, j), col in index.items():
            for l in range(d):
                if z[l][j]:
                    z_rows[index[(alpha, l)]][col] = z[l][j]
            for i in range(n):
                if alpha[i]:
                    lower = alpha[:i] + (alpha[i] - 1,) + alpha[i + 1:]
                    for l in range(d):
                        if z[l][j]:
                            x_rows[i][index[(lower, l)]][col] = alpha[i] * z[l][j]
                upper = alpha[:i] + (alpha[i] + 1,) + alpha[i + 1:]
                if (upper, j) in index:
                    y_rows[i][index[(upper, j)]][col] = 1

        super().__init__(
            n, degree_bound,
            [sum(alpha) for alpha in exps for _ in range(d)],
            [linalg.from_rows(rows, size) for rows in x_rows],
            [linalg.from_rows(rows, size) for rows in y_rows],
            linalg.from_rows(z_rows, size),
            [_basis_label(alpha, label) for alpha in exps for label in base.labels],
        )


def _basis_label(alpha: Exps, label: str) -> str:
    factors = [f"y{i}^{e}" if e > 1 else f"y{i}" for i, e in enumerate(alpha) if e]
    return f"{'*'.join(factors) or '1'}(x){label}"


def induce(base: ZModule, n: int, degree_bound: int) -> InducedModule:
    return InducedModule(base, n, degree_bound)


def invariant_span(module: HeisenbergModule) -> Span:
    return linalg.kernel(module.x_ops, module.dim)


def invariants_F(module: HeisenbergModule) -> ZModule:
    """F(M): the joint kernel of the x_i with the restricted z"""
    span = invariant_span(module)
    restricted = linalg.restrict(module.z_op, span)
    return ZModule(ImmutableMatrix(restricted), tuple(f"F{j}" for j in range(span.dim)))


def filtration_piece(module: HeisenbergModule, i: int) -> Span:
    """M_i = Ker x^(i+1): the joint kernel of every x^beta with |beta| = i + 1"""
    return linalg.kernel([module.x_monomial(beta) for beta in _exact_degree(module.n, i + 1)], module.dim)


def _exact_degree(n: int, degree: int) -> List[Exps]:
    return [alpha for alpha in monomials(n, degree) if sum(alpha) == degree]


def lifted_invariants(module: HeisenbergModule, j: int, invariants: Optional[Span] = None) -> Span:
    """N_j = span of y^alpha Ker(x) over |alpha| = j, for the part of Ker(x) that y^j keeps inside the truncation"""
    invariants = invariant_span(module) if invariants is None else invariants
    seed = invariants.intersect(module.degree_span(module.degree_bound - j))
    out = Span(module.dim)
    for alpha in _exact_degree(module.n, j):
        out = out + seed.image(module.y_monomial(alpha))
    return out


def _dims_case(name: str, ok: bool, **dims) -> Case:
    return Case(name=name, status=PASS if ok else FAIL, witness=None if ok else dims)


def key_lemma_check(module: HeisenbergModule, i_max: int, label: str = "") -> List[Case]:
    """M_i = N_0 + ... + N_i as a direct sum, for i <= i_max"""
    if i_max + 1 > module.degree_bound:
        raise ValueError(f"i_max = {i_max} needs a degree bound of at least {i_max + 1}")
    invariants = invariant_span(module)
    pieces = [lifted_invariants(module, j, invariants) for j in range(i_max + 1)]
    cases = []
    for i in range(i_max + 1):
        m_i = filtration_piece(module, i)
        total = Span(module.dim)
        for piece in pieces[: i + 1]:
            total = total + piece
        piece_dims = [p.dim for p in pieces[: i + 1]]
        direct = sum(piece_dims) == total.dim
        cases.append(_dims_case(f"key-lemma/{label}i={i}", direct and total == m_i,
                                m_i=m_i.dim, pieces=piece_dims, sum=total.dim))
    return cases


def alpha_iso_check(module: HeisenbergModule, label: str = "") -> List[Case]:
    """alpha: G(F(M)) -> M, y^a (x) f -> y^a f, is bijective degree by degree"""
    invariants = invariant_span(module)
    cases = []
    images = Span(module.dim)
    expected_total = 0
    for i in range(module.degree_bound + 1):
        exps = _exact_degree(module.n, i)
        cols = []
        if invariants.basis is not None:
            for alpha in exps:
                cols.extend(linalg.columns(module.y_monomial(alpha) * invariants.basis))
        image = Span.of(module.dim, linalg.from_columns(cols, module.dim))
        expected = len(exps) * invariants.dim
        expected_total += expected
        images = images + image
        cases.append(_dims_case(f"alpha/{label}deg={i}", image.dim == expected, rank=image.dim, expected=expected))
    cases.append(_dims_case(f"alpha/{label}total", images.dim == expected_total == module.dim,
                            rank=images.dim, expected=expected_total, dim=module.dim))
    return cases


def filt_identity_check(i: int) -> List[Case]:
    """Filtration identities in U(h) for one pair of generators"""
    x, y, z = EnvelopingElement.x(), EnvelopingElement.y(), EnvelopingElement.z()
    yx = y * x
    cases = [
        compare(f"filt/algebra/i={i}/(yx-iz)y^i=y^(i+1)x", (yx - z * i) * y ** i, y ** (i + 1) * x),
        compare(f"filt/algebra/i={i}/x(yx-iz)=(yx-(i-1)z)x", x * (yx - z * i), (yx - z * (i - 1)) * x),
    ]
    if i >= 1:
        cases.append(compare(f"filt/algebra/i={i}/x*y^i=y^i*x+iz*y^(i-1)",
                             x * y ** i, y ** i * x + z * y ** (i - 1) * i))
    return cases


def filt_module_check(module: HeisenbergModule, i: int, label: str = "") -> List[Case]:
    """(yx - iz)N_i = 0, xN_i < N_(i-1), N_i < M_i and (yx - iz)M_i < M_(i-1), with yx = sum y_j x_j"""
    if i + 1 > module.degree_bound:
        raise ValueError(f"i = {i} needs a degree bound of at least {i + 1}")
    shifted = linalg.zeros(module.dim, module.dim)
    for x_op, y_op in zip(module.x_ops, module.y_ops):
        shifted = shifted + y_op * x_op
    shifted = shifted - module.z_op * linalg.scalar(module.dim, i)
    invariants = invariant_span(module)
    n_i = lifted_invariants(module, i, invariants)
    m_i = filtration_piece(module, i)
    prefix = f"filt/module/{label}i={i}"
    cases = [_dims_case(f"{prefix}/(yx-iz)N_i=0", n_i.image(shifted).dim == 0)]
    if i >= 1:
        n_prev = lifted_invariants(module, i - 1, invariants)
        lowered = Span(module.dim)
        for x_op in module.x_ops:
            lowered = lowered + n_i.image(x_op)
        cases.append(_dims_case(f"{prefix}/xN_i<N_(i-1)", n_prev.contains(lowered)))
        m_prev = filtration_piece(module, i - 1)
    else:
        m_prev = Span(module.dim)
    cases.append(_dims_case(f"{prefix}/N_i<M_i", m_i.contains(n_i)))
    cases.append(_dims_case(f"{prefix}/(yx-iz)M_i<M_(i-1)", m_prev.contains(m_i.image(shifted))))
    return cases


def roundtrip_check(base: ZModule, n: int, degree_bound: int, label: str = "") -> Case:
    """F(G(N)) is isomorphic to N"""
    name = f"F(G(N))=N/{label}n={n}"

    def check():
        recovered = invariants_F(induce(base, n, degree_bound))
        ok = recovered.is_isomorphic(base)
        return Case(name=name, status=PASS if ok else FAIL,
                    witness=None if ok else {"N": base.to_dict(), "F(G(N))": recovered.to_dict()})
    return guarded(name, check)


def truncation_soundness(base: ZModule, n: int, degree_bound: int, label: str = "") -> Case:
    """dim M_i and dim F agree between the bounds D and D + 1"""
    name = f"truncation/{label}n={n},D={degree_bound}"

    def check():
        small = induce(base, n, degree_bound)
        large = induce(base, n, degree_bound + 1)
        lhs = [filtration_piece(small, i).dim for i in range(degree_bound)] + [invariant_span(small).dim]
        rhs = [filtration_piece(large, i).dim for i in range(degree_bound)] + [invariant_span(large).dim]
        return compare(name, lhs, rhs)
    return guarded(name, check)


def degenerate_center_check(dim: int, n: int, degree_bound: int) -> List[Case]:
    """With z = 0 the equivalence must break: these cases pass when it does"""
    base = ZModule.unchecked(ImmutableMatrix(dim, dim, [0] * (dim * dim)))
    module = induce(base, n, degree_bound)
    prefix = f"negative/z=0/d={dim},n={n}"
    grown = invariant_span(module).dim
    key_failed = any(not c.passed for c in key_lemma_check(module, degree_bound - 1))
    alpha_failed = any(not c.passed for c in alpha_iso_check(module))
    return [
        _dims_case(f"{prefix}/F(G(N))>N", grown > base.dim, fixed=grown, base=base.dim),
        _dims_case(f"{prefix}/key-lemma-fails", key_failed),
        _dims_case(f"{prefix}/alpha-fails", alpha_failed),
    ]


def module_from_spec(data: Dict[str, Any]) -> Tuple[ZModule, int, int]:
    """(N, n, D) from {n, dim, z_matrix, degree_bound}"""
    return ZModule.from_dict(data), int(data.get("n", 1)), int(data.get("degree_bound", 6))
