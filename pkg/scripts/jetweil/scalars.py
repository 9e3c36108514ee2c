#!/usr/bin/env python3
"""
Exact Scalar Arithmetic

CycloRational is the field Q(zeta) with zeta^4 = -1, so zeta^2 = i and
zeta - zeta^3 = sqrt(2). Scalar extends it by Laurent powers of a formal,
positive, central tau (standing for pi) and by a registry of square roots
of square-free products of Gaussian primes.
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt, lcm
from typing import Any, Dict, Iterable, List, Optional, Tuple, Union

from sympy import factorint
from sympy.ntheory import sqrt_mod

from .errors import BranchUndetermined, DivisionByNonUnit, NegativeRadicand

RationalLike = Union[int, Fraction, str]
GaussianInt = Tuple[int, int]

_ZERO = Fraction(0)
_RATIONAL_PATTERN = re.compile(r"[+-]?\d+(/\d+)?")


def parse_rational(value: RationalLike) -> Fraction:
    """Parse an int, Fraction or "p/q" literal"""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    if isinstance(value, str) and _RATIONAL_PATTERN.fullmatch(value.strip()):
        try:
            return Fraction(value.strip())
        except ZeroDivisionError:
            pass
    raise ValueError(f"not a rational literal: {value!r}")


def rational_str(value: Fraction) -> str:
    return str(Fraction(value))


def rational_json(value: Fraction) -> Union[int, str]:
    """Integers as JSON numbers, everything else as "p/q" """
    value = Fraction(value)
    return value.numerator if value.denominator == 1 else str(value)


class CycloRational:
    """a + b*zeta + c*zeta^2 + d*zeta^3 with rational coordinates"""

    __slots__ = ("coords",)

    def __init__(self, coords: Iterable[RationalLike] = (0, 0, 0, 0)):
        coords = tuple(parse_rational(c) for c in coords)
        if len(coords) != 4:
            raise ValueError("CycloRational needs exactly four coordinates")
        self.coords = coords

    @classmethod
    def _make(cls, coords: Tuple[Fraction, ...]) -> "CycloRational":
        obj = object.__new__(cls)
        obj.coords = coords
        return obj

    @classmethod
    def of(cls, value) -> "CycloRational":
        coerced = _as_cyclo(value)
        if coerced is None:
            raise TypeError(f"cannot read {value!r} as a cyclotomic rational")
        return coerced

    @classmethod
    def gaussian(cls, re_part: RationalLike, im_part: RationalLike = 0) -> "CycloRational":
        return cls._make((parse_rational(re_part), _ZERO, parse_rational(im_part), _ZERO))

    @classmethod
    def zeta_power(cls, k: int) -> "CycloRational":
        k %= 8
        coords = [_ZERO] * 4
        coords[k % 4] = Fraction(1 if k < 4 else -1)
        return cls._make(tuple(coords))

    # arithmetic

    def __add__(self, other):
        other = _as_cyclo(other)
        if other is None:
            return NotImplemented
        return CycloRational._make(tuple(a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self):
        return CycloRational._make(tuple(-a for a in self.coords))

    def __sub__(self, other):
        other = _as_cyclo(other)
        if other is None:
            return NotImplemented
        return CycloRational._make(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __rsub__(self, other):
        other = _as_cyclo(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _as_cyclo(other)
        if other is None:
            return NotImplemented
        a, b = self.coords, other.coords
        out = [_ZERO] * 4
        for i in range(4):
            if not a[i]:
                continue
            for j in range(4):
                if not b[j]:
                    continue
                k = i + j
                if k < 4:
                    out[k] += a[i] * b[j]
                else:
                    out[k - 4] -= a[i] * b[j]
        return CycloRational._make(tuple(out))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_cyclo(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def scale(self, q: Fraction) -> "CycloRational":
        return CycloRational._make(tuple(a * q for a in self.coords))

    def galois(self, k: int) -> "CycloRational":
        """Field automorphism zeta -> zeta^k for odd k"""
        out = [_ZERO] * 4
        for j, c in enumerate(self.coords):
            if c:
                e = (j * k) % 8
                if e < 4:
                    out[e] += c
                else:
                    out[e - 4] -= c
        return CycloRational._make(tuple(out))

    def conjugate(self) -> "CycloRational":
        return self.galois(7)

    def inverse(self) -> "CycloRational":
        if self.is_zero():
            raise DivisionByNonUnit("zero has no inverse in Q(zeta)")
        cofactor = self.galois(3) * self.galois(5) * self.galois(7)
        norm = (self * cofactor).coords[0]
        return cofactor.scale(1 / norm)

    # predicates

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_rational(self) -> bool:
        return not (self.coords[1] or self.coords[2] or self.coords[3])

    def is_gaussian(self) -> bool:
        return not (self.coords[1] or self.coords[3])

    def gaussian_parts(self) -> Tuple[Fraction, Fraction]:
        if not self.is_gaussian():
            raise ValueError(f"{self} is not a Gaussian rational")
        return self.coords[0], self.coords[2]

    def __eq__(self, other):
        other = _as_cyclo(other)
        if other is None:
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self):
        # rational values hash like the Fraction they equal
        return hash(self.coords[0]) if self.is_rational() else hash(self.coords)

    def __repr__(self):
        return f"CycloRational({self})"

    def __str__(self):
        names = ("", "zeta", "zeta^2", "zeta^3")
        parts = []
        for c, name in zip(self.coords, names):
            if not c:
                continue
            if not name:
                parts.append(str(c))
            elif c == 1:
                parts.append(name)
            elif c == -1:
                parts.append(f"-{name}")
            else:
                parts.append(f"{c}*{name}")
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"

    def to_strings(self) -> List[str]:
        return [rational_str(c) for c in self.coords]


def _as_cyclo(value) -> Optional[CycloRational]:
    if isinstance(value, CycloRational):
        return value
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return CycloRational._make((Fraction(value), _ZERO, _ZERO, _ZERO))
    return None


CYCLO_ZERO = CycloRational._make((_ZERO,) * 4)
CYCLO_ONE = CycloRational._make((Fraction(1), _ZERO, _ZERO, _ZERO))


# Gaussian integer helpers for the square-root registry

def _gmul(a: GaussianInt, b: GaussianInt) -> GaussianInt:
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _gpow(a: GaussianInt, e: int) -> GaussianInt:
    out = (1, 0)
    for _ in range(e):
        out = _gmul(out, a)
    return out


def _gdiv_exact(a: GaussianInt, p: GaussianInt) -> Optional[GaussianInt]:
    norm = p[0] * p[0] + p[1] * p[1]
    re_part = a[0] * p[0] + a[1] * p[1]
    im_part = a[1] * p[0] - a[0] * p[1]
    if re_part % norm or im_part % norm:
        return None
    return (re_part // norm, im_part // norm)


def _two_squares(p: int) -> Tuple[int, int]:
    """a, b with a^2 + b^2 = p for a prime p = 1 mod 4"""
    a, b = p, sqrt_mod(p - 1, p)
    limit = isqrt(p)
    while b > limit:
        a, b = b, a % b
    c = isqrt(p - b * b)
    assert b * b + c * c == p
    return b, c


def _primes_over(p: int) -> List[GaussianInt]:
    """Normalized Gaussian primes (re > 0, im >= 0) dividing the rational prime p"""
    if p == 2:
        return [(1, 1)]
    if p % 4 == 3:
        return [(p, 0)]
    a, b = _two_squares(p)
    return [(a, b), (b, a)]


@lru_cache(maxsize=8192)
def _factor_gaussian(g: GaussianInt) -> Tuple[int, Tuple[Tuple[GaussianInt, int], ...]]:
    """g = i^unit * prod(prime^e) over normalized Gaussian primes"""
    factors = []
    for p in sorted(factorint(g[0] * g[0] + g[1] * g[1])):
        for prime in _primes_over(p):
            e = 0
            while True:
                quotient = _gdiv_exact(g, prime)
                if quotient is None:
                    break
                g, e = quotient, e + 1
            if e:
                factors.append((prime, e))
    unit = {(1, 0): 0, (0, 1): 1, (-1, 0): 2, (0, -1): 3}[g]
    return unit, tuple(factors)


def _upper(z: GaussianInt) -> bool:
    # argument in (0, pi]
    return z[1] > 0 or (z[1] == 0 and z[0] < 0)


def _lower(z: GaussianInt) -> bool:
    return z[1] < 0


def _wrap(a: GaussianInt, b: GaussianInt) -> int:
    """m with Arg(a) + Arg(b) = Arg(ab) + 2*pi*m, principal arguments in (-pi, pi]"""
    if _upper(a) and _upper(b):
        return 0 if _upper(_gmul(a, b)) else 1
    if _lower(a) and _lower(b):
        return -1 if _upper(_gmul(a, b)) else 0
    return 0


@dataclass(frozen=True, order=True)
class SqrtSymbol:
    """Product of principal square roots of distinct normalized Gaussian primes"""

    primes: Tuple[GaussianInt, ...] = ()

    def radicand(self) -> CycloRational:
        product = (1, 0)
        for prime in self.primes:
            product = _gmul(product, prime)
        return CycloRational.gaussian(*product)

    def is_trivial(self) -> bool:
        return not self.primes

    def __str__(self):
        if not self.primes:
            return "1"
        factors = []
        for re_part, im_part in self.primes:
            factors.append(str(re_part) if not im_part else f"({re_part}+{im_part}i)")
        return f"sqrt({'*'.join(factors)})"


_TRIVIAL = SqrtSymbol()


@lru_cache(maxsize=None)
def _merge_symbols(r1: SqrtSymbol, r2: SqrtSymbol) -> Tuple[SqrtSymbol, CycloRational]:
    shared = set(r1.primes) & set(r2.primes)
    extra = (1, 0)
    for prime in shared:
        extra = _gmul(extra, prime)
    merged = SqrtSymbol(tuple(sorted(set(r1.primes) ^ set(r2.primes))))
    return merged, CycloRational.gaussian(*extra)


TermKey = Tuple[SqrtSymbol, int]


class Scalar:
    """Finite sum of coefficient * sqrt-symbol * tau^power, kept canonical"""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Optional[Dict[TermKey, Any]] = None):
        cleaned = {}
        for key, coeff in (terms or {}).items():
            coeff = CycloRational.of(coeff)
            if not coeff.is_zero():
                cleaned[key] = coeff
        self.terms = tuple(sorted(cleaned.items(), key=lambda item: item[0]))
        self._hash = None

    @classmethod
    def _from_map(cls, acc: Dict[TermKey, CycloRational]) -> "Scalar":
        obj = object.__new__(cls)
        obj.terms = tuple(sorted(((k, v) for k, v in acc.items() if not v.is_zero()),
                                 key=lambda item: item[0]))
        obj._hash = None
        return obj

    @classmethod
    def _single(cls, symbol: SqrtSymbol, tau: int, coeff: CycloRational) -> "Scalar":
        return cls._from_map({(symbol, tau): coeff})

    @classmethod
    def zero(cls) -> "Scalar":
        return cls._from_map({})

    @classmethod
    def one(cls) -> "Scalar":
        return cls._single(_TRIVIAL, 0, CYCLO_ONE)

    @classmethod
    def of(cls, value) -> "Scalar":
        coerced = _as_scalar(value)
        if coerced is None:
            raise TypeError(f"cannot read {value!r} as a Scalar")
        return coerced

    @classmethod
    def zeta(cls, k: int = 1) -> "Scalar":
        return cls._single(_TRIVIAL, 0, CycloRational.zeta_power(k))

    @classmethod
    def imag_unit(cls) -> "Scalar":
        return cls.zeta(2)

    @classmethod
    def tau(cls, power: int = 1) -> "Scalar":
        return cls._single(_TRIVIAL, power, CYCLO_ONE)

    @classmethod
    def symbol(cls, symbol: SqrtSymbol) -> "Scalar":
        return cls._single(symbol, 0, CYCLO_ONE)

    # arithmetic

    def __add__(self, other):
        other = _as_scalar(other)
        if other is None:
            return NotImplemented
        acc = dict(self.terms)
        for key, coeff in other.terms:
            acc[key] = acc[key] + coeff if key in acc else coeff
        return Scalar._from_map(acc)

    __radd__ = __add__

    def __neg__(self):
        return Scalar._from_map({key: -coeff for key, coeff in self.terms})

    def __sub__(self, other):
        other = _as_scalar(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_scalar(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _as_scalar(other)
        if other is None:
            return NotImplemented
        acc: Dict[TermKey, CycloRational] = {}
        for (r1, t1), c1 in self.terms:
            for (r2, t2), c2 in other.terms:
                symbol, extra = _merge_symbols(r1, r2)
                value = c1 * c2
                if extra != CYCLO_ONE:
                    value = value * extra
                key = (symbol, t1 + t2)
                acc[key] = acc[key] + value if key in acc else value
        return Scalar._from_map(acc)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_scalar(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _as_scalar(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result, base = Scalar.one(), self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def inverse(self) -> "Scalar":
        if not self.terms:
            raise DivisionByNonUnit("zero has no inverse")
        if len(self.terms) == 1:
            (symbol, tau), coeff = self.terms[0]
            # 1/(c*sqrt(r)) = sqrt(r)/(c*r)
            return Scalar._single(symbol, -tau, (coeff * symbol.radicand()).inverse())
        if len({tau for (_, tau), _ in self.terms}) > 1:
            raise DivisionByNonUnit(f"{self} mixes tau powers and is not a unit")
        prime = next(p for (symbol, _), _ in self.terms for p in symbol.primes)
        conjugate = Scalar._from_map({
            (symbol, tau): (-coeff if prime in symbol.primes else coeff)
            for (symbol, tau), coeff in self.terms
        })
        return conjugate * (self * conjugate).inverse()

    def conjugate(self) -> "Scalar":
        """Complex conjugation; tau is real"""
        out = Scalar.zero()
        for (symbol, tau), coeff in self.terms:
            term = Scalar._single(_TRIVIAL, tau, coeff.conjugate())
            for prime in symbol.primes:
                term = term * _conjugate_root(prime)
            out = out + term
        return out

    # predicates and views

    def is_zero(self) -> bool:
        return not self.terms

    def is_unit(self) -> bool:
        try:
            self.inverse()
        except DivisionByNonUnit:
            return False
        return True

    def as_cyclo(self) -> Optional[CycloRational]:
        """The CycloRational value when no radical or tau is involved"""
        if not self.terms:
            return CYCLO_ZERO
        if len(self.terms) == 1 and self.terms[0][0] == (_TRIVIAL, 0):
            return self.terms[0][1]
        return None

    def is_rational(self) -> bool:
        cyclo = self.as_cyclo()
        return cyclo is not None and cyclo.is_rational()

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.as_cyclo().coords[0]

    def __eq__(self, other):
        other = _as_scalar(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            cyclo = self.as_cyclo()
            self._hash = hash(cyclo) if cyclo is not None else hash(self.terms)
        return self._hash

    def __repr__(self):
        return f"Scalar({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (symbol, tau), coeff in self.terms:
            factors = [f"({coeff})"]
            if not symbol.is_trivial():
                factors.append(str(symbol))
            if tau:
                factors.append(f"tau^{tau}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    def to_records(self) -> List[Dict[str, Any]]:
        return [
            {
                "radicand": [list(prime) for prime in symbol.primes],
                "tau_power": tau,
                "cyclo": coeff.to_strings(),
            }
            for (symbol, tau), coeff in self.terms
        ]

    @classmethod
    def from_records(cls, records: List[Dict[str, Any]]) -> "Scalar":
        acc: Dict[TermKey, CycloRational] = {}
        for record in records:
            primes = tuple(sorted(tuple(int(x) for x in prime) for prime in record.get("radicand", [])))
            for re_part, im_part in primes:
                if _factor_gaussian((re_part, im_part)) != (0, (((re_part, im_part), 1),)):
                    raise ValueError(f"radicand entry {re_part}+{im_part}i is not a normalized Gaussian prime")
            if len(set(primes)) != len(primes):
                raise ValueError("radicand primes must be distinct")
            key = (SqrtSymbol(primes), int(record.get("tau_power", 0)))
            coeff = CycloRational(record["cyclo"])
            acc[key] = acc[key] + coeff if key in acc else coeff
        return cls._from_map(acc)


def _as_scalar(value) -> Optional[Scalar]:
    if isinstance(value, Scalar):
        return value
    cyclo = _as_cyclo(value)
    if cyclo is None:
        return None
    return Scalar._single(_TRIVIAL, 0, cyclo)


@lru_cache(maxsize=None)
def _conjugate_root(prime: GaussianInt) -> Scalar:
    """conj(sqrt(p)) = sqrt(conj p); for non-real p that is zeta^-1 * sqrt(i*conj p)"""
    if prime[1] == 0:
        return Scalar.symbol(SqrtSymbol((prime,)))
    partner = SqrtSymbol(((prime[1], prime[0]),))
    return Scalar._single(partner, 0, CycloRational.zeta_power(7))


_UNIT_ROOT_POWER = {0: 0, 1: 1, 2: 2, 3: 7}
_UNITS = [(1, 0), (0, 1), (-1, 0), (0, -1)]


def _principal_sqrt(re_part: Fraction, im_part: Fraction) -> Scalar:
    """Principal square root of a non-zero Gaussian rational"""
    den = lcm(re_part.denominator, im_part.denominator)
    # w * den^2 is a Gaussian integer, and sqrt(w) = sqrt(w * den^2) / den
    g = (int(re_part * den) * den, int(im_part * den) * den)
    unit, factors = _factor_gaussian(g)
    partial = _UNITS[unit]
    wraps = 0
    square_part = (1, 0)
    odd = []
    for prime, e in factors:
        for _ in range(e):
            wraps += _wrap(partial, prime)
            partial = _gmul(partial, prime)
        square_part = _gmul(square_part, _gpow(prime, e // 2))
        if e % 2:
            odd.append(prime)
    coeff = CycloRational.zeta_power(_UNIT_ROOT_POWER[unit]) * CycloRational.gaussian(*square_part)
    coeff = coeff.scale(Fraction(1, den))
    if wraps % 2:
        coeff = -coeff
    return Scalar._single(SqrtSymbol(tuple(sorted(odd))), 0, coeff)


def sqrt_positive_rational(q: RationalLike) -> Scalar:
    """r with r^2 = q and r > 0"""
    q = parse_rational(q)
    if q <= 0:
        raise NegativeRadicand(f"no positive square root of {q}")
    return _principal_sqrt(q, _ZERO)


def sqrt_special(a: Scalar) -> Scalar:
    """
    Principal square root of c * tau^(2m) with c a Gaussian rational off the
    negative real axis. Anything else has no branch we can decide exactly.
    """
    a = Scalar.of(a)
    if a.is_zero():
        return a
    if len(a.terms) != 1:
        raise BranchUndetermined(f"cannot choose a square root branch for {a}")
    (symbol, tau), coeff = a.terms[0]
    if not symbol.is_trivial() or tau % 2 or not coeff.is_gaussian():
        raise BranchUndetermined(f"cannot choose a square root branch for {a}")
    re_part, im_part = coeff.gaussian_parts()
    if im_part == 0 and re_part < 0:
        raise BranchUndetermined(f"{a} lies on the branch cut")
    return _principal_sqrt(re_part, im_part) * Scalar.tau(tau // 2)


ZERO = Scalar.zero()
ONE = Scalar.one()
ZETA = Scalar.zeta(1)
I = Scalar.imag_unit()
TAU = Scalar.tau(1)
