#!/usr/bin/env python3
"""
Gaussian Vectors

A GaussVector is a finite sum  P(x) * exp(tau * lam * (x^T Q x + l^T x + c))
where P has JetScalar coefficients, Q, l, c are Gaussian rationals and lam
is the exponent unit of the vector: the jet of s for scaled vectors, 1 for
classical ones. Jet-valued exponent coefficients never reach the phase:
their leading part does, and the nilpotent rest is expanded into P as a
finite exponential series. The constant c is kept as a formal tag.
"""

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, prod
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from sympy import Matrix

from .errors import BaseMismatch, ConstantPhaseNotExpandable, DimensionMismatch, NonIntegrablePhase, SingularSubstitution
from .jets import JetRing, JetScalar, coefficient_from_json, coefficient_json
from .reports import canonical_json
from .scalars import CYCLO_ZERO, CycloRational, Scalar, parse_rational, rational_str, sqrt_positive_rational
from .symplectic import rational_matrix, to_fraction
from .weyl import WeylOp

Exps = Tuple[int, ...]

TAU = Scalar.tau()
IMAG = Scalar.imag_unit()


class JetPolynomial:
    """Polynomial in n variables with JetScalar coefficients"""

    __slots__ = ("n", "ring", "terms")

    def __init__(self, n: int, ring: JetRing, terms: Optional[Dict[Exps, Any]] = None):
        self.n = n
        self.ring = ring
        self.terms: Dict[Exps, JetScalar] = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != n:
                raise DimensionMismatch(f"monomial {exps} in a polynomial over {n} variables")
            coeff = ring.coerce(coeff)
            if not coeff.is_zero():
                self.terms[exps] = coeff

    @classmethod
    def _make(cls, n: int, ring: JetRing, acc: Dict[Exps, JetScalar]) -> "JetPolynomial":
        obj = object.__new__(cls)
        obj.n = n
        obj.ring = ring
        obj.terms = {k: v for k, v in acc.items() if not v.is_zero()}
        return obj

    @classmethod
    def zero(cls, n: int, ring: JetRing) -> "JetPolynomial":
        return cls._make(n, ring, {})

    @classmethod
    def constant(cls, n: int, ring: JetRing, value: Any = 1) -> "JetPolynomial":
        return cls(n, ring, {(0,) * n: value})

    @classmethod
    def monomial(cls, n: int, ring: JetRing, exps: Exps, coeff: Any = 1) -> "JetPolynomial":
        return cls(n, ring, {tuple(exps): coeff})

    @classmethod
    def variable(cls, j: int, n: int, ring: JetRing) -> "JetPolynomial":
        return cls.monomial(n, ring, tuple(1 if i == j else 0 for i in range(n)))

    def _lift(self, other: Any) -> "JetPolynomial":
        if isinstance(other, JetPolynomial):
            if other.n != self.n:
                raise DimensionMismatch(f"polynomials over {self.n} and {other.n} variables")
            if other.ring != self.ring:
                raise BaseMismatch(f"polynomials over {self.ring} and {other.ring}")
            return other
        return JetPolynomial.constant(self.n, self.ring, other)

    def __add__(self, other):
        other = self._lift(other)
        acc = dict(self.terms)
        for exps, coeff in other.terms.items():
            acc[exps] = acc[exps] + coeff if exps in acc else coeff
        return JetPolynomial._make(self.n, self.ring, acc)

    __radd__ = __add__

    def __neg__(self):
        return JetPolynomial._make(self.n, self.ring, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def scale(self, value: Any) -> "JetPolynomial":
        value = self.ring.coerce(value)
        return JetPolynomial._make(self.n, self.ring, {k: c * value for k, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, JetPolynomial):
            return self.scale(other)
        other = self._lift(other)
        acc: Dict[Exps, JetScalar] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exps = tuple(a + b for a, b in zip(e1, e2))
                value = c1 * c2
                acc[exps] = acc[exps] + value if exps in acc else value
        return JetPolynomial._make(self.n, self.ring, acc)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, exponent: int) -> "JetPolynomial":
        out = JetPolynomial.constant(self.n, self.ring)
        for _ in range(exponent):
            out = out * self
        return out

    def derivative(self, j: int) -> "JetPolynomial":
        acc = {}
        for exps, coeff in self.terms.items():
            if exps[j]:
                lowered = exps[:j] + (exps[j] - 1,) + exps[j + 1:]
                acc[lowered] = coeff * exps[j]
        return JetPolynomial._make(self.n, self.ring, acc)

    def substitute(self, images: Sequence["JetPolynomial"]) -> "JetPolynomial":
        """Replace x_j by images[j]; all images share one variable count"""
        if len(images) != self.n:
            raise DimensionMismatch(f"{len(images)} images for {self.n} variables")
        m = images[0].n if images else 0
        out = JetPolynomial.zero(m, self.ring)
        powers: Dict[Tuple[int, int], JetPolynomial] = {}
        for exps, coeff in self.terms.items():
            term = JetPolynomial.constant(m, self.ring, coeff)
            for j, e in enumerate(exps):
                if e:
                    if (j, e) not in powers:
                        powers[(j, e)] = images[j] ** e
                    term = term * powers[(j, e)]
            out = out + term
        return out

    def embed(self, m: int, positions: Sequence[int]) -> "JetPolynomial":
        acc = {}
        for exps, coeff in self.terms.items():
            wide = [0] * m
            for j, e in zip(positions, exps):
                wide[j] = e
            acc[tuple(wide)] = coeff
        return JetPolynomial._make(m, self.ring, acc)

    def conjugate(self) -> "JetPolynomial":
        return JetPolynomial._make(self.n, self.ring, {k: c.conjugate() for k, c in self.terms.items()})

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, JetPolynomial):
            return NotImplemented
        return self.n == other.n and self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms)))

    def to_dict(self) -> List[Dict[str, Any]]:
        return [{"exps": list(exps), "coeff": coeff.to_dict()} for exps, coeff in sorted(self.terms.items())]


def _gaussian(value: Any) -> CycloRational:
    if isinstance(value, (list, tuple)):
        value = CycloRational.gaussian(parse_rational(value[0]), parse_rational(value[1]))
    value = CycloRational.of(value)
    if not value.is_gaussian():
        raise ConstantPhaseNotExpandable(f"phase coefficient {value} is not a Gaussian rational")
    return value


def _gaussian_json(value: CycloRational) -> List[str]:
    re_part, im_part = value.gaussian_parts()
    return [rational_str(re_part), rational_str(im_part)]


class GaussPhase:
    """x^T Q x + l^T x + c with Q symmetric; Q, l, c Gaussian rationals"""

    __slots__ = ("quad", "lin", "const", "_hash")

    def __init__(self, quad: Sequence[Sequence[Any]], lin: Sequence[Any], const: Any = 0):
        quad = tuple(tuple(_gaussian(x) for x in row) for row in quad)
        lin = tuple(_gaussian(x) for x in lin)
        n = len(lin)
        if len(quad) != n or any(len(row) != n for row in quad):
            raise DimensionMismatch(f"phase with a {len(quad)}-row quadratic part and {n} linear terms")
        if any(quad[i][j] != quad[j][i] for i in range(n) for j in range(i)):
            raise ValueError("the quadratic part of a phase must be symmetric")
        self.quad, self.lin, self.const = quad, lin, _gaussian(const)
        self._hash = None

    @classmethod
    def _make(cls, quad, lin, const) -> "GaussPhase":
        obj = object.__new__(cls)
        obj.quad, obj.lin, obj.const = tuple(tuple(r) for r in quad), tuple(lin), const
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, n: int) -> "GaussPhase":
        return cls._make([[CYCLO_ZERO] * n for _ in range(n)], [CYCLO_ZERO] * n, CYCLO_ZERO)

    @classmethod
    def quadratic(cls, quad: Sequence[Sequence[Any]]) -> "GaussPhase":
        return cls(quad, [0] * len(quad), 0)

    @property
    def n(self) -> int:
        return len(self.lin)

    def __add__(self, other: "GaussPhase") -> "GaussPhase":
        if other.n != self.n:
            raise DimensionMismatch(f"phases over {self.n} and {other.n} variables")
        n = self.n
        return GaussPhase._make(
            [[self.quad[i][j] + other.quad[i][j] for j in range(n)] for i in range(n)],
            [a + b for a, b in zip(self.lin, other.lin)],
            self.const + other.const,
        )

    def scale(self, q: Fraction) -> "GaussPhase":
        return GaussPhase._make(
            [[x.scale(q) for x in row] for row in self.quad],
            [x.scale(q) for x in self.lin],
            self.const.scale(q),
        )

    def conjugate(self) -> "GaussPhase":
        return GaussPhase._make(
            [[x.conjugate() for x in row] for row in self.quad],
            [x.conjugate() for x in self.lin],
            self.const.conjugate(),
        )

    def substitute(self, m: Sequence[Sequence[Fraction]]) -> "GaussPhase":
        """Phase of x -> Mx: Q' = M^T Q M, l' = M^T l"""
        n = self.n
        quad = [[sum((self.quad[j][k].scale(m[j][a] * m[k][b]) for j in range(n) for k in range(n)), CYCLO_ZERO)
                 for b in range(n)] for a in range(n)]
        lin = [sum((self.lin[j].scale(m[j][a]) for j in range(n)), CYCLO_ZERO) for a in range(n)]
        return GaussPhase._make(quad, lin, self.const)

    def translate(self, a: Sequence[Fraction]) -> "GaussPhase":
        """Phase of x -> x - a"""
        n = self.n
        qa = [sum((self.quad[j][k].scale(a[k]) for k in range(n)), CYCLO_ZERO) for j in range(n)]
        lin = [self.lin[j] - qa[j].scale(Fraction(2)) for j in range(n)]
        const = self.const
        for j in range(n):
            const = const - self.lin[j].scale(a[j]) + qa[j].scale(a[j])
        return GaussPhase._make(self.quad, lin, const)

    def embed(self, m: int, positions: Sequence[int]) -> "GaussPhase":
        quad = [[CYCLO_ZERO] * m for _ in range(m)]
        lin = [CYCLO_ZERO] * m
        for i, pi in enumerate(positions):
            lin[pi] = self.lin[i]
            for j, pj in enumerate(positions):
                quad[pi][pj] = self.quad[i][j]
        return GaussPhase._make(quad, lin, self.const)

    def as_polynomial(self, ring: JetRing) -> JetPolynomial:
        n = self.n
        acc: Dict[Exps, Any] = {}
        for j in range(n):
            for k in range(j, n):
                value = self.quad[j][k] if j == k else self.quad[j][k].scale(Fraction(2))
                if not value.is_zero():
                    e = [0] * n
                    e[j] += 1
                    e[k] += 1
                    acc[tuple(e)] = value
            if not self.lin[j].is_zero():
                acc[tuple(1 if i == j else 0 for i in range(n))] = self.lin[j]
        if not self.const.is_zero():
            acc[(0,) * n] = self.const
        return JetPolynomial(n, ring, acc)

    def real_rows(self) -> Tuple[Tuple[Fraction, ...], ...]:
        return tuple(tuple(x.coords[0] for x in row) for row in self.quad)

    def _key(self):
        return (self.quad, self.lin, self.const)

    def __eq__(self, other):
        if not isinstance(other, GaussPhase):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def __repr__(self):
        return f"GaussPhase(Q={[[str(x) for x in r] for r in self.quad]}, l={[str(x) for x in self.lin]}, c={self.const})"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "Q": [[_gaussian_json(x) for x in row] for row in self.quad],
            "l": [_gaussian_json(x) for x in self.lin],
            "c": _gaussian_json(self.const),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "GaussPhase":
        quad = data["Q"]
        return cls(quad, data.get("l", [[0, 0]] * len(quad)), data.get("c", [0, 0]))


@lru_cache(maxsize=4096)
def _negative_semidefinite(rows: Tuple[Tuple[Fraction, ...], ...]) -> bool:
    if not rows or not any(any(row) for row in rows):
        return True
    return bool(Matrix(rows).is_negative_semidefinite)


def split_exponent(psi: JetPolynomial) -> Tuple[GaussPhase, JetPolynomial]:
    """Leading Gaussian phase and nilpotent remainder of a quadratic exponent"""
    n = psi.n
    quad = [[CYCLO_ZERO] * n for _ in range(n)]
    lin = [CYCLO_ZERO] * n
    const = CYCLO_ZERO
    nilpotent = {}
    for exps, coeff in psi.terms.items():
        if sum(exps) > 2:
            raise ValueError(f"exponent monomial {exps} is not quadratic")
        lead = coeff.leading.as_cyclo()
        if lead is None or not lead.is_gaussian():
            raise ConstantPhaseNotExpandable(f"exponent coefficient {coeff.leading} is not a Gaussian rational")
        rest = coeff.nilpotent_part()
        if not rest.is_zero():
            nilpotent[exps] = rest
        support = [j for j, e in enumerate(exps) for _ in range(e)]
        if not support:
            const = const + lead
        elif len(support) == 1:
            lin[support[0]] = lin[support[0]] + lead
        elif support[0] == support[1]:
            quad[support[0]][support[0]] = quad[support[0]][support[0]] + lead
        else:
            half = lead.scale(Fraction(1, 2))
            j, k = support
            quad[j][k] = quad[j][k] + half
            quad[k][j] = quad[k][j] + half
    return GaussPhase._make(quad, lin, const), JetPolynomial._make(n, psi.ring, nilpotent)


def exp_series(x: JetPolynomial) -> JetPolynomial:
    """exp of a polynomial with nilpotent coefficients"""
    out = JetPolynomial.constant(x.n, x.ring)
    power = JetPolynomial.constant(x.n, x.ring)
    for m in range(1, x.ring.order):
        power = power * x
        if power.is_zero():
            break
        out = out + power.scale(Scalar.of(Fraction(1, factorial(m))))
    return out


class GaussVector:
    """Finite sum of polynomial * Gaussian-phase terms with equal phases merged"""

    __slots__ = ("n", "ring", "scaled", "terms")

    def __init__(self, n: int, ring: JetRing, scaled: bool = True,
                 terms: Optional[Dict[GaussPhase, JetPolynomial]] = None):
        self.n = n
        self.ring = ring
        self.scaled = scaled
        self.terms: Dict[GaussPhase, JetPolynomial] = {}
        for phase, poly in (terms or {}).items():
            self._accumulate(phase, poly)

    def _accumulate(self, phase: GaussPhase, poly: JetPolynomial):
        if phase.n != self.n or poly.n != self.n:
            raise DimensionMismatch(f"term over {phase.n} variables in a vector over {self.n}")
        if poly.is_zero():
            return
        if phase in self.terms:
            merged = self.terms[phase] + poly
            if merged.is_zero():
                del self.terms[phase]
            else:
                self.terms[phase] = merged
            return
        rows = phase.real_rows()
        if self.sign < 0:
            rows = tuple(tuple(-x for x in row) for row in rows)
        if not _negative_semidefinite(rows):
            raise NonIntegrablePhase(f"{phase} grows along some direction")
        self.terms[phase] = poly

    def _empty(self, n: Optional[int] = None, scaled: Optional[bool] = None) -> "GaussVector":
        return GaussVector(self.n if n is None else n, self.ring, self.scaled if scaled is None else scaled)

    @property
    def sign(self) -> int:
        return -1 if self.scaled and self.ring.base < 0 else 1

    @property
    def lam(self) -> JetScalar:
        return self.ring.variable() if self.scaled else self.ring.one()

    @classmethod
    def single(cls, poly: JetPolynomial, phase: GaussPhase, scaled: bool = True) -> "GaussVector":
        return cls(poly.n, poly.ring, scaled, {phase: poly})

    @classmethod
    def hermite(cls, ring: JetRing, exps: Any = 0, n: int = 1, scaled: bool = True) -> "GaussVector":
        """x^exps * exp(-tau*|lam|*|x|^2)"""
        exps = (exps,) if isinstance(exps, int) else tuple(exps)
        if len(exps) != n:
            raise DimensionMismatch(f"probe exponent {exps} for {n} variables")
        sign = -1 if scaled and ring.base < 0 else 1
        quad = [[-sign if i == j else 0 for j in range(n)] for i in range(n)]
        return cls.single(JetPolynomial.monomial(n, ring, exps), GaussPhase.quadratic(quad), scaled)

    @classmethod
    def gaussian(cls, ring: JetRing, n: int = 1, scaled: bool = True) -> "GaussVector":
        return cls.hermite(ring, (0,) * n, n, scaled)

    def _check(self, other: "GaussVector"):
        if other.n != self.n:
            raise DimensionMismatch(f"vectors over {self.n} and {other.n} variables")
        if other.ring != self.ring:
            raise BaseMismatch(f"vectors over {self.ring} and {other.ring}")
        if other.scaled != self.scaled:
            raise DimensionMismatch("scaled and classical vectors do not combine")

    def __add__(self, other: "GaussVector") -> "GaussVector":
        self._check(other)
        out = self._empty()
        out.terms = dict(self.terms)
        for phase, poly in other.terms.items():
            out._accumulate(phase, poly)
        return out

    def __neg__(self) -> "GaussVector":
        out = self._empty()
        out.terms = {phase: -poly for phase, poly in self.terms.items()}
        return out

    def __sub__(self, other: "GaussVector") -> "GaussVector":
        return self + (-other)

    def scale(self, value: Any) -> "GaussVector":
        value = self.ring.coerce(value)
        out = self._empty()
        for phase, poly in self.terms.items():
            out._accumulate(phase, poly.scale(value))
        return out

    def map_terms(self, fn, n: Optional[int] = None, scaled: Optional[bool] = None) -> "GaussVector":
        """New vector from fn(phase, poly) -> (phase', poly') per term"""
        out = self._empty(n, scaled)
        for phase, poly in self.terms.items():
            new_phase, new_poly = fn(phase, poly)
            out._accumulate(new_phase, new_poly)
        return out

    def conjugate(self) -> "GaussVector":
        return self.map_terms(lambda phase, poly: (phase.conjugate(), poly.conjugate()))

    def is_zero(self) -> bool:
        return not self.terms

    def as_jet(self) -> JetScalar:
        """Value of a 0-variable vector once no formal constant tag remains"""
        if self.n != 0:
            raise DimensionMismatch("only 0-variable vectors are jets")
        if not self.terms:
            return self.ring.zero()
        if len(self.terms) == 1:
            (phase, poly), = self.terms.items()
            if phase.const.is_zero():
                return poly.terms.get((), self.ring.zero())
        raise ConstantPhaseNotExpandable("vector carries transcendental constant tags")

    def __eq__(self, other):
        if not isinstance(other, GaussVector):
            return NotImplemented
        return (self.n == other.n and self.ring == other.ring and self.scaled == other.scaled
                and self.terms == other.terms)

    def __repr__(self):
        return f"GaussVector(n={self.n}, scaled={self.scaled}, terms={len(self.terms)})"

    def to_dict(self) -> Dict[str, Any]:
        terms = [{"phase": phase.to_dict(), "poly": poly.to_dict()} for phase, poly in self.terms.items()]
        terms.sort(key=lambda t: canonical_json(t["phase"]))
        return {
            "n": self.n,
            "base": rational_str(self.ring.base),
            "order": self.ring.order,
            "scaled": self.scaled,
            "terms": terms,
        }

    @classmethod
    def from_probe(cls, data: Dict[str, Any], ring: JetRing, n: Optional[int] = None) -> "GaussVector":
        """Probe record {poly: [{exps, coeff}], phase: {Q, l, c}, scaled}"""
        phase = GaussPhase.from_dict(data["phase"])
        n = phase.n if n is None else n
        if phase.n != n:
            raise DimensionMismatch(f"probe over {phase.n} variables where {n} were expected")
        terms = {}
        for item in data["poly"]:
            coeff = item["coeff"]
            if isinstance(coeff, dict) and ("jet" in coeff or "scalar" in coeff):
                coeff = coefficient_from_json(coeff)
            else:
                coeff = parse_rational(coeff)
            terms[tuple(item["exps"])] = coeff
        return cls.single(JetPolynomial(n, ring, terms), phase, bool(data.get("scaled", True)))


def mul_poly(v: GaussVector, p: JetPolynomial) -> GaussVector:
    return v.map_terms(lambda phase, poly: (phase, poly * p))


def mul_phase(v: GaussVector, extra: GaussPhase) -> GaussVector:
    return v.map_terms(lambda phase, poly: (phase + extra, poly))


def multiply_exponential(v: GaussVector, psi: JetPolynomial) -> GaussVector:
    """v * exp(tau * lam * psi) for a quadratic psi with jet coefficients"""
    lead, nilpotent = split_exponent(psi)
    factor = None
    if not nilpotent.is_zero():
        factor = exp_series(nilpotent.scale(v.lam * TAU))
    return v.map_terms(lambda phase, poly: (phase + lead, poly if factor is None else poly * factor))


def mul_central_exp(v: GaussVector, psi: GaussPhase, weight: Optional[JetScalar] = None) -> GaussVector:
    """v * exp(tau * weight * psi); weight defaults to the jet of s"""
    weight = v.ring.variable() if weight is None else v.ring.coerce(weight)
    ratio = weight * v.lam.inverse()
    return multiply_exponential(v, psi.as_polynomial(v.ring).scale(ratio))


def translate(v: GaussVector, a: Sequence[Any]) -> GaussVector:
    """x -> v(x - a)"""
    a = [parse_rational(x) if not isinstance(x, Fraction) else x for x in a]
    if len(a) != v.n:
        raise DimensionMismatch(f"shift of length {len(a)} for {v.n} variables")
    images = [JetPolynomial.variable(j, v.n, v.ring) - a[j] for j in range(v.n)]
    return v.map_terms(lambda phase, poly: (phase.translate(a), poly.substitute(images)))


def linear_substitute(v: GaussVector, matrix: Any) -> GaussVector:
    """x -> v(Mx) for an invertible rational M"""
    m = rational_matrix(matrix)
    if m.rows != v.n or m.cols != v.n:
        raise DimensionMismatch(f"{m.rows}x{m.cols} substitution for {v.n} variables")
    if m.det() == 0:
        raise SingularSubstitution(f"{m.tolist()} is not invertible")
    rows = [[to_fraction(m[i, j]) for j in range(v.n)] for i in range(v.n)]
    images = [JetPolynomial(v.n, v.ring, {tuple(1 if i == k else 0 for i in range(v.n)): rows[j][k]
                                          for k in range(v.n) if rows[j][k]})
              for j in range(v.n)]
    return v.map_terms(lambda phase, poly: (phase.substitute(rows), poly.substitute(images)))


def parity(v: GaussVector) -> GaussVector:
    return linear_substitute(v, [[-1 if i == j else 0 for j in range(v.n)] for i in range(v.n)])


def differentiate(v: GaussVector, j: int) -> GaussVector:
    unit = v.lam * TAU

    def term(phase: GaussPhase, poly: JetPolynomial):
        acc = {(0,) * v.n: phase.lin[j]}
        for k in range(v.n):
            e = tuple(1 if i == k else 0 for i in range(v.n))
            value = phase.quad[j][k].scale(Fraction(2))
            acc[e] = acc[e] + value if e in acc else value
        linear = JetPolynomial(v.n, v.ring, acc).scale(unit)
        return phase, poly.derivative(j) + poly * linear

    return v.map_terms(term)


def apply_weyl(op: WeylOp, v: GaussVector) -> GaussVector:
    """Apply a normal-ordered operator: coefficients act after x^alpha d^beta"""
    if op.n != v.n:
        raise DimensionMismatch(f"operator in {op.n} variables on a vector over {v.n}")
    derived: Dict[Exps, GaussVector] = {(0,) * v.n: v}

    def derivative(beta: Exps) -> GaussVector:
        if beta not in derived:
            j = next(i for i, e in enumerate(beta) if e)
            lower = beta[:j] + (beta[j] - 1,) + beta[j + 1:]
            derived[beta] = differentiate(derivative(lower), j)
        return derived[beta]

    out = v._empty()
    for (alpha, beta), coeff in op.terms.items():
        monomial = JetPolynomial.monomial(v.n, v.ring, alpha, v.ring.coerce(coeff))
        out = out + mul_poly(derivative(beta), monomial)
    return out


def embed(v: GaussVector, m: int, positions: Sequence[int]) -> GaussVector:
    return v.map_terms(lambda phase, poly: (phase.embed(m, positions), poly.embed(m, positions)), n=m)


def _double_factorial_odd(r: int) -> int:
    return prod(range(1, 2 * r, 2))


def _integrate_variable(v: GaussVector, j: int) -> GaussVector:
    n, ring = v.n, v.ring
    rest = [k for k in range(n) if k != j]
    lam = v.lam
    out = v._empty(n=n - 1)
    for phase, poly in v.terms.items():
        q = phase.quad[j][j]
        if q.is_zero():
            raise NonIntegrablePhase(f"no quadratic term in variable {j}; the integral is a distribution")
        if q.coords[0] * v.sign > 0:
            raise NonIntegrablePhase(f"quadratic coefficient {q} grows in variable {j}")
        inv_q = q.inverse()
        beta = [phase.quad[j][k].scale(Fraction(2)) for k in rest]
        lj = phase.lin[j]
        quad = [[phase.quad[a][b] - beta[ia] * beta[ib] * inv_q.scale(Fraction(1, 4))
                 for ib, b in enumerate(rest)] for ia, a in enumerate(rest)]
        lin = [phase.lin[a] - beta[ia] * lj * inv_q.scale(Fraction(1, 2)) for ia, a in enumerate(rest)]
        const = phase.const - lj * lj * inv_q.scale(Fraction(1, 4))
        new_phase = GaussPhase._make(quad, lin, const)

        # y = u + shift with shift = -(beta . x + l_j) / (2q)
        half = inv_q.scale(Fraction(-1, 2))
        shift_terms = {(0,) * (n - 1): lj * half}
        for ia in range(n - 1):
            shift_terms[tuple(1 if i == ia else 0 for i in range(n - 1))] = beta[ia] * half
        shift = JetPolynomial(n - 1, ring, shift_terms)

        lam_q = lam * Scalar.of(q)
        root_inv = (-lam_q).sqrt().inverse()
        unit = (lam_q * (TAU * (-2))).inverse()
        top = max((e[j] for e in poly.terms), default=0)
        moments = [root_inv]
        for r in range(1, top // 2 + 1):
            moments.append(moments[-1] * unit)
        shift_powers = [JetPolynomial.constant(n - 1, ring)]
        for _ in range(top):
            shift_powers.append(shift_powers[-1] * shift)

        result = JetPolynomial.zero(n - 1, ring)
        for exps, coeff in poly.terms.items():
            a = exps[j]
            inner = JetPolynomial.zero(n - 1, ring)
            for m in range(0, a + 1, 2):
                weight = moments[m // 2] * (comb(a, m) * _double_factorial_odd(m // 2))
                inner = inner + shift_powers[a - m].scale(weight)
            rest_exps = tuple(exps[k] for k in rest)
            result = result + inner * JetPolynomial.monomial(n - 1, ring, rest_exps, coeff)
        out._accumulate(new_phase, result)
    return out


def gauss_integrate(v: GaussVector, variables: Iterable[int]) -> GaussVector:
    """Integrate out the listed variables over the real line"""
    for j in sorted(set(variables), reverse=True):
        if not 0 <= j < v.n:
            raise DimensionMismatch(f"no variable {j} in a vector over {v.n}")
        v = _integrate_variable(v, j)
    return v


def fourier_prefactor(ring: JetRing, scale: Optional[Any] = None) -> JetScalar:
    """sqrt(|w|) for the kernel weight w (the jet of s unless a constant is given)"""
    if scale is None:
        return ring.sqrt_abs_variable()
    return ring.constant(sqrt_positive_rational(abs(parse_rational(scale))))


def fourier(v: GaussVector, direction: int, scale: Optional[Any] = None,
            prefactor_first: bool = False) -> GaussVector:
    """
    direction -1: sqrt|w|^n * int exp(+2*pi*i*w x.y) v(y) dy
    direction +1: sqrt|w|^n * int exp(-2*pi*i*w x.y) v(y) dy
    with w the jet of s, or the constant `scale`.
    """
    if direction not in (1, -1):
        raise ValueError("direction must be +1 or -1")
    n, ring = v.n, v.ring
    weight = ring.variable() if scale is None else ring.constant(parse_rational(scale))
    prefactor = fourier_prefactor(ring, scale) ** n
    wide = embed(v, 2 * n, [n + j for j in range(n)])
    cross = [[CYCLO_ZERO] * (2 * n) for _ in range(2 * n)]
    entry = CycloRational.gaussian(0, -direction)
    for j in range(n):
        cross[j][n + j] = cross[n + j][j] = entry
    wide = mul_central_exp(wide, GaussPhase._make(cross, [CYCLO_ZERO] * (2 * n), CYCLO_ZERO), weight)
    if prefactor_first:
        wide = wide.scale(prefactor)
    out = gauss_integrate(wide, range(n, 2 * n))
    return out if prefactor_first else out.scale(prefactor)


def pairing(f: GaussVector, g: GaussVector) -> GaussVector:
    """int f * conj(g) over every variable, as a 0-variable vector"""
    f._check(g)
    product = f._empty()
    for pf, poly_f in f.terms.items():
        for pg, poly_g in g.terms.items():
            product._accumulate(pf + pg.conjugate(), poly_f * poly_g.conjugate())
    return gauss_integrate(product, range(f.n))


def central_character(v: GaussVector, t: Any, weight: Optional[JetScalar] = None) -> GaussVector:
    """v * exp(2*pi*i*w*t)"""
    t = parse_rational(t) if not isinstance(t, Fraction) else t
    tag = GaussPhase._make([[CYCLO_ZERO] * v.n for _ in range(v.n)], [CYCLO_ZERO] * v.n,
                           CycloRational.gaussian(0, 2 * t))
    return mul_central_exp(v, tag, weight)
