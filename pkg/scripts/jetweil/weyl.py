#!/usr/bin/env python3
"""
Weyl Algebra Operators

Normal-ordered differential operators sum c * x^alpha d^beta in n variables,
with coefficients that are Scalars, JetScalars or formal Laurent polynomials
in the central parameter s. Also hosts the infinitesimal oscillator action
dsigma of sp(2n) and its bracket check.
"""

from fractions import Fraction
from functools import lru_cache
from math import comb, perm
from typing import Any, Dict, List, Optional, Tuple

from sympy import ImmutableMatrix, zeros

from .errors import ArityMismatch, NotInSp
from .jets import JetRing, JetScalar, coefficient_json
from .reports import FAIL, Case, fingerprint
from .scalars import Scalar
from .symplectic import rational_matrix, to_fraction

Monomial = Tuple[Tuple[int, ...], Tuple[int, ...]]


def _is_zero(value: Any) -> bool:
    return value.is_zero()


def _coefficient(value: Any) -> Any:
    if isinstance(value, (Scalar, JetScalar, LaurentS)):
        return value
    return Scalar.of(value)


class LaurentS:
    """Formal Laurent polynomial in an invertible central s with Scalar coefficients"""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[int, Any]] = None):
        self.terms = {p: Scalar.of(c) for p, c in (terms or {}).items() if not Scalar.of(c).is_zero()}

    @classmethod
    def s(cls) -> "LaurentS":
        return cls({1: 1})

    @staticmethod
    def _lift(value: Any) -> Optional["LaurentS"]:
        if isinstance(value, LaurentS):
            return value
        if isinstance(value, JetScalar):
            return None
        try:
            return LaurentS({0: Scalar.of(value)})
        except TypeError:
            return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for p, c in other.terms.items():
            out[p] = out[p] + c if p in out else c
        return LaurentS(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentS({p: -c for p, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        out: Dict[int, Scalar] = {}
        for p1, c1 in self.terms.items():
            for p2, c2 in other.terms.items():
                p = p1 + p2
                out[p] = out[p] + c1 * c2 if p in out else c1 * c2
        return LaurentS(out)

    __rmul__ = __mul__

    def inverse(self) -> "LaurentS":
        if len(self.terms) != 1:
            raise ValueError("only monomials in s are invertible")
        (p, c), = self.terms.items()
        return LaurentS({-p: c.inverse()})

    def is_zero(self) -> bool:
        return not self.terms

    def specialize(self, ring: JetRing) -> JetScalar:
        """Substitute s = s0 + eps"""
        s = ring.variable()
        out = ring.zero()
        for p, c in self.terms.items():
            out = out + (s ** p) * c
        return out

    def __eq__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def to_dict(self):
        return {"laurent": {str(p): c.to_records() for p, c in sorted(self.terms.items())}}


@lru_cache(maxsize=None)
def _reorder(beta: Tuple[int, ...], gamma: Tuple[int, ...]) -> Tuple[Tuple[int, Tuple[int, ...], Tuple[int, ...]], ...]:
    """d^beta x^gamma as a sum of weight * x^gamma' d^beta'"""
    terms = [(1, (), ())]
    for b, c in zip(beta, gamma):
        expanded = []
        for k in range(min(b, c) + 1):
            weight = comb(b, k) * perm(c, k)
            for coeff, xs, ds in terms:
                expanded.append((coeff * weight, xs + (c - k,), ds + (b - k,)))
        terms = expanded
    return tuple(terms)


def _add_exps(a: Tuple[int, ...], b: Tuple[int, ...]) -> Tuple[int, ...]:
    return tuple(x + y for x, y in zip(a, b))


class WeylOp:
    """Normal-ordered element of the Weyl algebra"""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Optional[Dict[Monomial, Any]] = None):
        self.n = n
        cleaned = {}
        for (alpha, beta), coeff in (terms or {}).items():
            if len(alpha) != n or len(beta) != n:
                raise ArityMismatch(f"monomial {alpha}, {beta} does not have {n} variables")
            coeff = _coefficient(coeff)
            if not _is_zero(coeff):
                cleaned[(tuple(alpha), tuple(beta))] = coeff
        self.terms = cleaned

    @classmethod
    def _make(cls, n: int, acc: Dict[Monomial, Any]) -> "WeylOp":
        obj = object.__new__(cls)
        obj.n = n
        obj.terms = {k: v for k, v in acc.items() if not _is_zero(v)}
        return obj

    @classmethod
    def constant(cls, value: Any, n: int = 1) -> "WeylOp":
        zero = (0,) * n
        return cls(n, {(zero, zero): value})

    @classmethod
    def one(cls, n: int = 1) -> "WeylOp":
        return cls.constant(1, n)

    @classmethod
    def x(cls, j: int, n: int = 1) -> "WeylOp":
        e = tuple(1 if i == j else 0 for i in range(n))
        return cls(n, {(e, (0,) * n): 1})

    @classmethod
    def d(cls, j: int, n: int = 1) -> "WeylOp":
        e = tuple(1 if i == j else 0 for i in range(n))
        return cls(n, {((0,) * n, e): 1})

    @classmethod
    def euler(cls, n: int = 1) -> "WeylOp":
        """Symmetrized Euler operator sum x_j d_j + n/2"""
        op = cls.constant(Fraction(n, 2), n)
        for j in range(n):
            op = op + cls.x(j, n) * cls.d(j, n)
        return op

    def _check(self, other: "WeylOp"):
        if other.n != self.n:
            raise ArityMismatch(f"operators in {self.n} and {other.n} variables do not combine")

    def __add__(self, other):
        if not isinstance(other, WeylOp):
            other = WeylOp.constant(other, self.n)
        self._check(other)
        acc = dict(self.terms)
        for key, coeff in other.terms.items():
            acc[key] = acc[key] + coeff if key in acc else coeff
        return WeylOp._make(self.n, acc)

    __radd__ = __add__

    def __neg__(self):
        return WeylOp._make(self.n, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, WeylOp):
            other = WeylOp.constant(other, self.n)
        return self + (-other)

    def __rsub__(self, other):
        return WeylOp.constant(other, self.n) - self

    def scale(self, value: Any) -> "WeylOp":
        """Multiply every coefficient by a central value"""
        value = _coefficient(value)
        return WeylOp._make(self.n, {k: c * value for k, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, WeylOp):
            return self.scale(other)
        self._check(other)
        acc: Dict[Monomial, Any] = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                product = c1 * c2
                for weight, xs, ds in _reorder(b1, a2):
                    key = (_add_exps(a1, xs), _add_exps(ds, b2))
                    value = product * weight if weight != 1 else product
                    acc[key] = acc[key] + value if key in acc else value
        return WeylOp._make(self.n, acc)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, exponent: int) -> "WeylOp":
        out = WeylOp.one(self.n)
        for _ in range(exponent):
            out = out * self
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, WeylOp):
            return NotImplemented
        if self.n != other.n or self.terms.keys() != other.terms.keys():
            return False
        return all(self.terms[k] == other.terms[k] for k in self.terms)

    def __hash__(self):
        return hash((self.n, frozenset(self.terms)))

    def __repr__(self):
        return f"WeylOp(n={self.n}, terms={len(self.terms)})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (alpha, beta), coeff in sorted(self.terms.items()):
            coeff = coeff.rational_value() if isinstance(coeff, Scalar) and coeff.is_rational() else coeff
            factors = [] if coeff == 1 else [f"({coeff})"]
            factors += [f"x{j}^{e}" if e > 1 else f"x{j}" for j, e in enumerate(alpha) if e]
            factors += [f"d{j}^{e}" if e > 1 else f"d{j}" for j, e in enumerate(beta) if e]
            parts.append("*".join(factors) or "1")
        return " + ".join(parts)

    def to_dict(self) -> Dict[str, Any]:
        rows = []
        for (alpha, beta), coeff in sorted(self.terms.items()):
            if isinstance(coeff, LaurentS):
                serialized = coeff.to_dict()
            else:
                serialized = coefficient_json(coeff)
            rows.append({"x_exp": list(alpha), "d_exp": list(beta), "coeff": serialized})
        return {"n": self.n, "terms": rows}

    def specialize(self, ring: JetRing) -> "WeylOp":
        """Replace formal s-coefficients by their jets at ring"""
        return WeylOp._make(self.n, {
            k: c.specialize(ring) if isinstance(c, LaurentS) else ring.coerce(c)
            for k, c in self.terms.items()
        })


def multiply(a: WeylOp, b: WeylOp) -> WeylOp:
    return a * b


def commutator(a: WeylOp, b: WeylOp) -> WeylOp:
    return a * b - b * a


def sp_blocks(u: Any) -> Tuple[ImmutableMatrix, ImmutableMatrix, ImmutableMatrix]:
    """(A, B, C) of u = (A, B; C, -A^T) with B, C symmetric"""
    u = rational_matrix(u)
    if u.rows != u.cols or u.rows % 2:
        raise NotInSp(f"{u.rows}x{u.cols} is not the shape of sp(2n)")
    n = u.rows // 2
    a, b, c, d = u[:n, :n], u[:n, n:], u[n:, :n], u[n:, n:]
    if d != -a.T or b != b.T or c != c.T:
        raise NotInSp(f"{u.tolist()} is not in sp({2 * n})")
    return ImmutableMatrix(a), ImmutableMatrix(b), ImmutableMatrix(c)


def _quadratic(n: int, matrix: ImmutableMatrix, derivative: bool) -> Dict[Monomial, Fraction]:
    """Monomials of v^T M v in x (or in d)"""
    out: Dict[Monomial, Fraction] = {}
    zero = (0,) * n
    for j in range(n):
        for k in range(j, n):
            value = to_fraction(matrix[j, k]) * (1 if j == k else 2)
            if not value:
                continue
            e = [0] * n
            e[j] += 1
            e[k] += 1
            key = (zero, tuple(e)) if derivative else (tuple(e), zero)
            out[key] = value
    return out


def dsigma(u: Any, s: Any) -> WeylOp:
    """
    Infinitesimal oscillator action of u in sp(2n), with central parameter s
    given as a JetScalar or LaurentS:

        A-part  -sum A_jk x_k d_j - tr(A)/2
        C-part  -tau*i*s * x^T C x
        B-part  (4*tau*i*s)^-1 * d^T B d
    """
    a, b, c = sp_blocks(u)
    n = a.rows
    zero = (0,) * n
    terms: Dict[Monomial, Any] = {}

    trace = sum((to_fraction(a[j, j]) for j in range(n)), Fraction(0))
    if trace:
        terms[(zero, zero)] = Scalar.of(-trace / 2)
    for j in range(n):
        for k in range(n):
            value = to_fraction(a[j, k])
            if value:
                xk = tuple(1 if i == k else 0 for i in range(n))
                dj = tuple(1 if i == j else 0 for i in range(n))
                key = (xk, dj)
                terms[key] = terms[key] - value if key in terms else Scalar.of(-value)

    tau, imag = Scalar.tau(), Scalar.imag_unit()
    c_unit = s * (-(tau * imag))
    for key, value in _quadratic(n, c, derivative=False).items():
        terms[key] = c_unit * value
    b_unit = s.inverse() * (tau * imag * 4).inverse()
    for key, value in _quadratic(n, b, derivative=True).items():
        terms[key] = b_unit * value
    return WeylOp(n, terms)


def sp_basis(n: int) -> List[Tuple[str, ImmutableMatrix]]:
    """Standard basis of sp(2n): A-type E_jk, and symmetric B- and C-type elements"""
    basis = []
    for j in range(n):
        for k in range(n):
            m = zeros(2 * n, 2 * n)
            m[j, k] = 1
            m[n + k, n + j] = -1
            basis.append((f"A{j}{k}", ImmutableMatrix(m)))
    for label, offset in (("B", (0, n)), ("C", (n, 0))):
        for j in range(n):
            for k in range(j, n):
                m = zeros(2 * n, 2 * n)
                m[offset[0] + j, offset[1] + k] = 1
                m[offset[0] + k, offset[1] + j] = 1
                basis.append((f"{label}{j}{k}", ImmutableMatrix(m)))
    return basis


SL2 = {
    "X": ImmutableMatrix([[0, 1], [0, 0]]),
    "Y": ImmutableMatrix([[0, 0], [1, 0]]),
    "H": ImmutableMatrix([[1, 0], [0, -1]]),
}


def bracket_homomorphism_check(n: int, s: Any) -> List[Case]:
    """Failures of [dsigma(u), dsigma(v)] = dsigma([u, v]) over all basis pairs"""
    basis = sp_basis(n)
    images = {name: dsigma(u, s) for name, u in basis}
    failures = []
    for name_u, u in basis:
        for name_v, v in basis:
            lhs = commutator(images[name_u], images[name_v])
            rhs = dsigma(u * v - v * u, s)
            if lhs != rhs:
                failures.append(Case(
                    name=f"bracket[{name_u},{name_v}]",
                    status=FAIL,
                    lhs_hash=fingerprint(lhs),
                    rhs_hash=fingerprint(rhs),
                    witness={"lhs": lhs.to_dict(), "rhs": rhs.to_dict()},
                ))
    return failures


def transparency_check(n: int, ring: JetRing) -> List[Case]:
    """Failures of dsigma over formal s, specialized at s0 + eps, against dsigma over jets"""
    failures = []
    for name, u in sp_basis(n):
        formal = dsigma(u, LaurentS.s()).specialize(ring)
        direct = dsigma(u, ring.variable()).specialize(ring)
        if formal != direct:
            failures.append(Case(
                name=f"transparency[{name}]",
                status=FAIL,
                lhs_hash=fingerprint(formal),
                rhs_hash=fingerprint(direct),
            ))
    return failures
