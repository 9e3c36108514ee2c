#!/usr/bin/env python3
"""
Heisenberg Action and Generalized Weil Operators

Conventions (frozen):

    (a,b,t)(a',b',t') = (a+a', b+b', t+t' + (a.b' - b.a')/2)
    rho(a,b,t) v(x)   = chi_s(t - b.x + a.b/2) * v(x - a),  chi_s(t) = exp(2*pi*i*s*t)

    sigma(DiagA(A)) v = det(A)^(-1/2) v(A^-1 x)   (det < 0: zeta^2 |det|^(-1/2))
    sigma(LowerC(C)) v = exp(-pi*i*s x^T C x) v
    sigma(J) v        = zeta^n F_s^-1 v

Operators marked classical use s = 1 and act on unscaled vectors.
"""

import random
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .errors import DimensionMismatch, NonSquareBase, NotAGenerator
from .gauss import (
    GaussPhase,
    GaussVector,
    JetPolynomial,
    apply_weyl,
    central_character,
    fourier,
    linear_substitute,
    mul_central_exp,
    multiply_exponential,
    pairing,
    parity,
    translate,
)
from .jets import JetRing, JetScalar, exp_nilpotent
from .reports import Case, compare, guarded, sign_case
from .scalars import CYCLO_ZERO, CycloRational, Scalar, parse_rational, rational_str, sqrt_positive_rational
from .symplectic import DiagA, GeneratorWord, JGen, LowerC, SymplecticMatrix, random_rational, to_fraction, word_product
from .weyl import WeylOp

TAU = Scalar.tau()


def _fractions(values: Sequence[Any]) -> Tuple[Fraction, ...]:
    return tuple(v if isinstance(v, Fraction) else parse_rational(v) for v in values)


@dataclass(frozen=True)
class HeisenbergElement:
    a: Tuple[Fraction, ...]
    b: Tuple[Fraction, ...]
    t: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "a", _fractions(self.a))
        object.__setattr__(self, "b", _fractions(self.b))
        object.__setattr__(self, "t", parse_rational(self.t) if not isinstance(self.t, Fraction) else self.t)
        if len(self.a) != len(self.b):
            raise DimensionMismatch(f"a has {len(self.a)} entries but b has {len(self.b)}")

    @property
    def n(self) -> int:
        return len(self.a)

    @classmethod
    def identity(cls, n: int) -> "HeisenbergElement":
        return cls((0,) * n, (0,) * n, 0)

    @classmethod
    def central(cls, t: Any, n: int) -> "HeisenbergElement":
        return cls((0,) * n, (0,) * n, t)

    @classmethod
    def random(cls, rng: random.Random, n: int, central: bool = True) -> "HeisenbergElement":
        a = tuple(random_rational(rng) if rng.random() < 0.8 else Fraction(0) for _ in range(n))
        b = tuple(random_rational(rng) if rng.random() < 0.8 else Fraction(0) for _ in range(n))
        return cls(a, b, random_rational(rng) if central else Fraction(0))

    @staticmethod
    def _dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
        return sum((x * y for x, y in zip(u, v)), Fraction(0))

    def __mul__(self, other: "HeisenbergElement") -> "HeisenbergElement":
        if other.n != self.n:
            raise DimensionMismatch("Heisenberg elements of different rank")
        twist = (self._dot(self.a, other.b) - self._dot(self.b, other.a)) / 2
        return HeisenbergElement(
            tuple(x + y for x, y in zip(self.a, other.a)),
            tuple(x + y for x, y in zip(self.b, other.b)),
            self.t + other.t + twist,
        )

    def inverse(self) -> "HeisenbergElement":
        return HeisenbergElement(tuple(-x for x in self.a), tuple(-x for x in self.b), -self.t)

    def transformed(self, matrix: SymplecticMatrix) -> "HeisenbergElement":
        """(M(a;b), t)"""
        a, b = matrix.act(self.a, self.b)
        return HeisenbergElement(a, b, self.t)

    def label(self) -> str:
        def vec(u):
            return ",".join(rational_str(x) for x in u)
        return f"({vec(self.a)};{vec(self.b)};{rational_str(self.t)})"

    def to_dict(self):
        return {"a": [rational_str(x) for x in self.a], "b": [rational_str(x) for x in self.b],
                "t": rational_str(self.t)}


def _weight(ring: JetRing, classical: bool) -> Optional[JetScalar]:
    return ring.one() if classical else None


def _character_phase(n: int, linear: Sequence[Fraction], const: Fraction) -> GaussPhase:
    """2i * (linear . x + const), the exponent of chi_s in units of tau*s"""
    return GaussPhase._make(
        [[CYCLO_ZERO] * n for _ in range(n)],
        [CycloRational.gaussian(0, 2 * x) for x in linear],
        CycloRational.gaussian(0, 2 * const),
    )


def rho(h: HeisenbergElement, v: GaussVector, classical: bool = False) -> GaussVector:
    if h.n != v.n:
        raise DimensionMismatch(f"element of rank {h.n} on a vector over {v.n} variables")
    shifted = translate(v, h.a)
    half_ab = HeisenbergElement._dot(h.a, h.b) / 2
    phase = _character_phase(v.n, [-x for x in h.b], h.t + half_ab)
    return mul_central_exp(shifted, phase, _weight(v.ring, classical))


def rho_opposite(h: HeisenbergElement, g: GaussVector) -> GaussVector:
    """Action on the model over the opposite Lagrangian: chi_s(t + a.xi - a.b/2) g(xi - b)"""
    if h.n != g.n:
        raise DimensionMismatch(f"element of rank {h.n} on a vector over {g.n} variables")
    shifted = translate(g, h.b)
    half_ab = HeisenbergElement._dot(h.a, h.b) / 2
    return mul_central_exp(shifted, _character_phase(g.n, list(h.a), h.t - half_ab))


def _diag_factor(gen: DiagA) -> Scalar:
    det = to_fraction(gen.a.det())
    factor = sqrt_positive_rational(abs(det)).inverse()
    return factor * Scalar.zeta(2) if det < 0 else factor


def _chirp(gen: LowerC, sign: int) -> GaussPhase:
    n = gen.n
    quad = [[CycloRational.gaussian(0, -sign * to_fraction(gen.c[i, j])) for j in range(n)] for i in range(n)]
    return GaussPhase._make(quad, [CYCLO_ZERO] * n, CYCLO_ZERO)


def sigma_generator(gen: Any, v: GaussVector, classical: bool = False) -> GaussVector:
    if not isinstance(gen, (DiagA, LowerC, JGen)):
        raise NotAGenerator(f"{gen!r} is not DiagA, LowerC or J")
    if gen.n != v.n:
        raise DimensionMismatch(f"generator of size {gen.n} on a vector over {v.n} variables")
    if isinstance(gen, DiagA):
        return linear_substitute(v, gen.a.inv()).scale(_diag_factor(gen))
    if isinstance(gen, LowerC):
        return mul_central_exp(v, _chirp(gen, 1), _weight(v.ring, classical))
    return fourier(v, -1, scale=1 if classical else None).scale(Scalar.zeta(v.n))


def sigma_inverse_generator(gen: Any, v: GaussVector, classical: bool = False) -> GaussVector:
    if not isinstance(gen, (DiagA, LowerC, JGen)):
        raise NotAGenerator(f"{gen!r} is not DiagA, LowerC or J")
    if gen.n != v.n:
        raise DimensionMismatch(f"generator of size {gen.n} on a vector over {v.n} variables")
    if isinstance(gen, DiagA):
        return linear_substitute(v, gen.a).scale(_diag_factor(gen).inverse())
    if isinstance(gen, LowerC):
        return mul_central_exp(v, _chirp(gen, -1), _weight(v.ring, classical))
    return fourier(v, 1, scale=1 if classical else None).scale(Scalar.zeta(-v.n))


def sigma_word(word: GeneratorWord, v: GaussVector, classical: bool = False) -> GaussVector:
    """sigma(g1) o ... o sigma(gm), applied right to left"""
    for gen in reversed(word.generators):
        v = sigma_generator(gen, v, classical)
    return v


def sigma_word_inverse(word: GeneratorWord, v: GaussVector, classical: bool = False) -> GaussVector:
    for gen in word.generators:
        v = sigma_inverse_generator(gen, v, classical)
    return v


def lagrangian_intertwiner(v: GaussVector) -> GaussVector:
    """Partial Fourier transform F_s^-1 onto the opposite-Lagrangian model"""
    return fourier(v, -1)


def lagrangian_intertwiner_inverse(g: GaussVector) -> GaussVector:
    return fourier(g, 1)


def _rational_sqrt(q: Fraction) -> Fraction:
    if q > 0:
        root = sqrt_positive_rational(q)
        if root.is_rational():
            return root.rational_value()
    raise NonSquareBase(f"s0 = {q} is not the square of a rational")


def square_class_intertwiner(v: GaussVector) -> GaussVector:
    """F(x, s) -> F(sqrt(s) x, s); the result is a scaled vector"""
    ring = v.ring
    _rational_sqrt(ring.base)
    s = ring.variable()
    root = s.sqrt()
    inv_s = s.inverse()
    # exponent tau*lam*Phi(root x) rewritten in units of tau*s
    quad_unit, lin_unit, const_unit = (s, root, ring.one()) if v.scaled else (ring.one(), root * inv_s, inv_s)
    out = GaussVector(v.n, ring, True)
    for phase, poly in v.terms.items():
        dilated = JetPolynomial._make(v.n, ring, {
            exps: coeff * root ** sum(exps) for exps, coeff in poly.terms.items()
        })
        psi = JetPolynomial.zero(v.n, ring)
        for exps, coeff in phase.as_polynomial(ring).terms.items():
            unit = {2: quad_unit, 1: lin_unit, 0: const_unit}[sum(exps)]
            psi = psi + JetPolynomial.monomial(v.n, ring, exps, coeff * unit)
        piece = GaussVector.single(dilated, GaussPhase.zero(v.n), scaled=True)
        out = out + multiply_exponential(piece, psi)
    return out


def binomial_operator(op: WeylOp, r: int) -> WeylOp:
    """op (op - 1) ... (op - r + 1) / r!"""
    out = WeylOp.one(op.n)
    for j in range(r):
        out = out * (op - j)
    return out.scale(Scalar.of(Fraction(1, factorial(r))))


def sigma_j_jet_matrix(ring: JetRing, n: int = 1) -> List[List[WeylOp]]:
    """
    F_s^-1 = (s/s0)^E F_s0^-1 with E the symmetrized Euler operator, so on jet
    coefficients sigma(J) is zeta^n times the upper-triangular matrix with
    entries C(E, m - j) * s0^-(m - j).
    """
    euler = WeylOp.euler(n)
    k = ring.order
    entries = {}
    for r in range(k):
        entries[r] = binomial_operator(euler, r).scale(Scalar.of(ring.base ** -r))
    zero = WeylOp.constant(0, n)
    return [[entries[m - j] if m >= j else zero for m in range(k)] for j in range(k)]


def sigma_j_by_matrix(v: GaussVector) -> GaussVector:
    """sigma(J) v for a classical vector, through the fixed-base transform and the jet matrix"""
    if v.scaled:
        raise ValueError("the jet-matrix form of sigma(J) acts on unscaled vectors")
    ring = v.ring
    fixed = fourier(v, -1, scale=ring.base)
    first_row = sigma_j_jet_matrix(ring, v.n)[0]
    eps = ring.epsilon()
    out = GaussVector(v.n, ring, False)
    for r, op in enumerate(first_row):
        out = out + apply_weyl(op, fixed).scale(eps ** r)
    return out.scale(Scalar.zeta(v.n))


# checks


def fourier_inversion_check(ring: JetRing, probes: Dict[str, GaussVector], label: str = "") -> List[Case]:
    cases = []
    for name, v in probes.items():
        n = v.n
        tag = f"{label}{name}"

        def twice(v=v, n=n, tag=tag):
            lhs = sigma_generator(JGen(n), sigma_generator(JGen(n), v))
            return compare(f"sigmaJ^2=i^n*parity/{tag}", lhs, parity(v).scale(Scalar.zeta(2 * n)))

        def round_trip(v=v, tag=tag):
            return compare(f"F(Finv)=id/{tag}", fourier(fourier(v, -1), 1), v)

        def placement(v=v, tag=tag):
            return compare(f"S-placement/{tag}", fourier(v, -1, prefactor_first=True), fourier(v, -1),
                           note="prefactor applied before and after the integral agree")

        cases.append(guarded(f"sigmaJ^2=i^n*parity/{tag}", twice))
        cases.append(guarded(f"F(Finv)=id/{tag}", round_trip))
        cases.append(guarded(f"S-placement/{tag}", placement))
    return cases


def sigma_j_matrix_check(ring: JetRing, probes: Dict[str, GaussVector], label: str = "") -> List[Case]:
    """sigma_s(J) against the jet-matrix form on classical probes"""
    cases = []
    for name, v in probes.items():
        tag = f"{label}{name}"
        cases.append(guarded(f"sigmaJ-matrix/{tag}", lambda v=v, tag=tag: compare(
            f"sigmaJ-matrix/{tag}", sigma_generator(JGen(v.n), v), sigma_j_by_matrix(v))))
    return cases


def covariance_check(word: GeneratorWord, h: HeisenbergElement, probes: Dict[str, GaussVector],
                     name: str) -> Case:
    """sigma(w) rho(h) sigma(w)^-1 = c * rho(M h) with one sign c for all probes"""
    def check():
        image = h.transformed(word_product(word))
        pairs = []
        for v in probes.values():
            lhs = sigma_word(word, rho(h, sigma_word_inverse(word, v)))
            pairs.append((lhs, rho(image, v)))
        return sign_case(name, pairs)
    return guarded(name, check)


def heisenberg_law_check(h1: HeisenbergElement, h2: HeisenbergElement, probes: Dict[str, GaussVector],
                         name: str) -> Case:
    def check():
        pairs = [(rho(h1, rho(h2, v)), rho(h1 * h2, v)) for v in probes.values()]
        return sign_case(name, pairs, projective=False)
    return guarded(name, check)


def central_character_check(t: Fraction, probes: Dict[str, GaussVector], name: str) -> Case:
    """rho(0,0,t) on classical vectors = formal tag exp(2 pi i s0 t) times the jet exp(2 pi i eps t)"""
    def check():
        pairs = []
        for v in probes.values():
            ring = v.ring
            tagged = central_character(v, t, weight=ring.constant(ring.base))
            jet = exp_nilpotent(ring.epsilon() * (TAU * Scalar.imag_unit() * (2 * t)))
            pairs.append((rho(HeisenbergElement.central(t, v.n), v), tagged.scale(jet)))
        return sign_case(name, pairs, projective=False)
    return guarded(name, check)


def lagrangian_checks(probes: Dict[str, GaussVector], elements: Sequence[HeisenbergElement],
                      label: str = "") -> List[Case]:
    cases = []
    for name, v in probes.items():
        tag = f"{label}{name}"
        cases.append(guarded(f"lagrangian-inverse/{tag}", lambda v=v, tag=tag: compare(
            f"lagrangian-inverse/{tag}", lagrangian_intertwiner_inverse(lagrangian_intertwiner(v)), v)))
        cases.append(guarded(f"lagrangian-inverse-opposite/{tag}", lambda v=v, tag=tag: compare(
            f"lagrangian-inverse-opposite/{tag}", lagrangian_intertwiner(lagrangian_intertwiner_inverse(v)), v)))
        for index, h in enumerate(elements):
            case_name = f"lagrangian-equivariance/{tag}/h{index:03d}"
            cases.append(guarded(case_name, lambda v=v, h=h, case_name=case_name: compare(
                case_name, lagrangian_intertwiner(rho(h, v)), rho_opposite(h, lagrangian_intertwiner(v)))))
    return cases


def square_class_checks(probes: Dict[str, GaussVector], generators: Dict[str, Any],
                        label: str = "") -> List[Case]:
    """phi o sigma_1(g) = sigma_s(g) o phi on classical probes"""
    cases = []
    for name, v in probes.items():
        for gen_name, gen in generators.items():
            case_name = f"square-class/{label}{name}/{gen_name}"
            cases.append(guarded(case_name, lambda v=v, gen=gen, case_name=case_name: compare(
                case_name,
                square_class_intertwiner(sigma_generator(gen, v, classical=True)),
                sigma_generator(gen, square_class_intertwiner(v)),
            )))
    return cases


def omega_pairing_invariance(probes: Dict[str, GaussVector], elements: Sequence[HeisenbergElement],
                             words: Sequence[GeneratorWord], label: str = "") -> List[Case]:
    cases = []
    names = sorted(probes)
    pairs = [(f, g) for i, f in enumerate(names) for g in names[i:]]
    for f_name, g_name in pairs:
        f, g = probes[f_name], probes[g_name]
        tag = f"{label}{f_name},{g_name}"

        def reference(f=f, g=g):
            return pairing(f, g)

        for index, h in enumerate(elements):
            flat = HeisenbergElement(h.a, h.b, 0)
            case_name = f"pairing-H/{tag}/h{index:03d}"
            cases.append(guarded(case_name, lambda f=f, g=g, flat=flat, case_name=case_name: compare(
                case_name, pairing(rho(flat, f), rho(flat, g)), reference(f, g))))
            central = HeisenbergElement.central(h.t, f.n)
            case_name = f"pairing-Z/{tag}/h{index:03d}"
            cases.append(guarded(case_name, lambda f=f, g=g, central=central, case_name=case_name: compare(
                case_name, pairing(rho(central, f), g), central_character(reference(f, g), central.t))))
        for index, word in enumerate(words):
            case_name = f"pairing-Sp/{tag}/w{index:03d}"
            cases.append(guarded(case_name, lambda f=f, g=g, word=word, case_name=case_name: compare(
                case_name, pairing(sigma_word(word, f), sigma_word(word, g)), reference(f, g))))
    return cases


def gaussian_pairing_check(ring: JetRing, n: int = 1, label: str = "") -> Case:
    """pairing(G, G) = (2s)^(-n/2)"""
    name = f"pairing(G,G)=(2s)^(-n/2)/{label}n={n}"

    def check():
        g = GaussVector.gaussian(ring, n)
        expected = (ring.variable() * 2).sqrt().inverse() ** n
        return compare(name, pairing(g, g).as_jet(), expected)
    return guarded(name, check)
