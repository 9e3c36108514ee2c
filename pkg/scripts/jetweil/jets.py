#!/usr/bin/env python3
"""
Truncated Jets of the Central Parameter

A JetScalar a_0 + a_1*eps + ... + a_{k-1}*eps^(k-1) is a function of the
central parameter s = s0 + eps known to order k at a rational base s0.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Any, Dict, Iterable, List, Sequence

from .errors import BaseMismatch, DivisionByNonUnit, NonUnitLeadingCoefficient, SingularBase
from .scalars import RationalLike, Scalar, parse_rational, rational_str, sqrt_positive_rational, sqrt_special


class JetScalar:
    """Element of Scalar[eps]/(eps^k) at base s0"""

    __slots__ = ("base", "coeffs", "_hash")

    def __init__(self, base: RationalLike, coeffs: Iterable[Any]):
        base = parse_rational(base)
        if base == 0:
            raise SingularBase("jets live at a non-zero base s0")
        coeffs = tuple(Scalar.of(c) for c in coeffs)
        if not coeffs:
            raise ValueError("a jet needs order >= 1")
        self.base = base
        self.coeffs = coeffs
        self._hash = None

    @classmethod
    def _make(cls, base: Fraction, coeffs: Sequence[Scalar]) -> "JetScalar":
        obj = object.__new__(cls)
        obj.base = base
        obj.coeffs = tuple(coeffs)
        obj._hash = None
        return obj

    @property
    def order(self) -> int:
        return len(self.coeffs)

    @property
    def leading(self) -> Scalar:
        return self.coeffs[0]

    @property
    def ring(self) -> "JetRing":
        return JetRing(self.base, self.order)

    def _coerce(self, other) -> "JetScalar":
        if isinstance(other, JetScalar):
            if other.base != self.base or other.order != self.order:
                raise BaseMismatch(
                    f"jets at ({self.base}, k={self.order}) and ({other.base}, k={other.order}) do not combine"
                )
            return other
        value = Scalar.of(other)
        return JetScalar._make(self.base, (value,) + (Scalar.zero(),) * (self.order - 1))

    def __add__(self, other):
        if not _jet_compatible(other):
            return NotImplemented
        other = self._coerce(other)
        return JetScalar._make(self.base, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return JetScalar._make(self.base, [-a for a in self.coeffs])

    def __sub__(self, other):
        if not _jet_compatible(other):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        if not _jet_compatible(other):
            return NotImplemented
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        if not _jet_compatible(other):
            return NotImplemented
        if not isinstance(other, JetScalar):
            value = Scalar.of(other)
            return JetScalar._make(self.base, [a * value for a in self.coeffs])
        other = self._coerce(other)
        k = self.order
        out = [Scalar.zero()] * k
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j in range(k - i):
                b = other.coeffs[j]
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return JetScalar._make(self.base, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not _jet_compatible(other):
            return NotImplemented
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        if not _jet_compatible(other):
            return NotImplemented
        return self._coerce(other) * self.inverse()

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = JetRing(self.base, self.order).one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def inverse(self) -> "JetScalar":
        """Truncated geometric series; needs a unit leading coefficient"""
        try:
            b0 = self.coeffs[0].inverse()
        except DivisionByNonUnit as exc:
            raise NonUnitLeadingCoefficient(f"leading coefficient {self.coeffs[0]} is not a unit") from exc
        out = [b0]
        for m in range(1, self.order):
            acc = Scalar.zero()
            for j in range(1, m + 1):
                if not self.coeffs[j].is_zero():
                    acc = acc + self.coeffs[j] * out[m - j]
            out.append(-(b0 * acc))
        return JetScalar._make(self.base, out)

    def sqrt(self) -> "JetScalar":
        """Principal root on the leading term, then r*r = a order by order"""
        r0 = sqrt_special(self.coeffs[0])
        if self.order == 1:
            return JetScalar._make(self.base, [r0])
        try:
            half_inv = (r0 * 2).inverse()
        except DivisionByNonUnit as exc:
            raise NonUnitLeadingCoefficient("square root of a jet with zero leading term") from exc
        out = [r0]
        for m in range(1, self.order):
            acc = self.coeffs[m]
            for j in range(1, m):
                acc = acc - out[j] * out[m - j]
            out.append(acc * half_inv)
        return JetScalar._make(self.base, out)

    def conjugate(self) -> "JetScalar":
        return JetScalar._make(self.base, [a.conjugate() for a in self.coeffs])

    def nilpotent_part(self) -> "JetScalar":
        return JetScalar._make(self.base, (Scalar.zero(),) + self.coeffs[1:])

    def is_zero(self) -> bool:
        return all(a.is_zero() for a in self.coeffs)

    def is_nilpotent(self) -> bool:
        return self.coeffs[0].is_zero()

    def is_unit(self) -> bool:
        return self.coeffs[0].is_unit()

    def __eq__(self, other):
        if isinstance(other, JetScalar):
            return self.base == other.base and self.coeffs == other.coeffs
        if _jet_compatible(other):
            return self.coeffs == self._coerce(other).coeffs
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            # constant jets compare equal to bare scalars, so they hash like them
            if all(a.is_zero() for a in self.coeffs[1:]):
                self._hash = hash(self.coeffs[0])
            else:
                self._hash = hash((self.base, self.coeffs))
        return self._hash

    def __repr__(self):
        return f"JetScalar({self})"

    def __str__(self):
        return f"[{', '.join(str(a) for a in self.coeffs)}]@{self.base}"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "base": rational_str(self.base),
            "order": self.order,
            "coeffs": [a.to_records() for a in self.coeffs],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "JetScalar":
        coeffs = [Scalar.from_records(records) for records in data["coeffs"]]
        if "order" in data and int(data["order"]) != len(coeffs):
            raise ValueError("jet order does not match the number of coefficients")
        return cls(data["base"], coeffs)


def _jet_compatible(value) -> bool:
    if isinstance(value, JetScalar):
        return True
    try:
        Scalar.of(value)
    except TypeError:
        return False
    return True


@dataclass(frozen=True)
class JetRing:
    """The ring of jets of order k at base s0"""

    base: Fraction
    order: int

    def __post_init__(self):
        object.__setattr__(self, "base", parse_rational(self.base))
        if self.base == 0:
            raise SingularBase("jets live at a non-zero base s0")
        if self.order < 1:
            raise ValueError("jet order must be at least 1")

    def from_coeffs(self, coeffs: Sequence[Any]) -> JetScalar:
        coeffs = [Scalar.of(c) for c in coeffs]
        if len(coeffs) > self.order:
            raise ValueError(f"{len(coeffs)} coefficients exceed order {self.order}")
        return JetScalar._make(self.base, coeffs + [Scalar.zero()] * (self.order - len(coeffs)))

    def constant(self, value: Any) -> JetScalar:
        return self.from_coeffs([value])

    def zero(self) -> JetScalar:
        return self.from_coeffs([])

    def one(self) -> JetScalar:
        return self.from_coeffs([1])

    def variable(self) -> JetScalar:
        """The jet of s itself"""
        return self.from_coeffs([self.base, 1][: self.order])

    def epsilon(self) -> JetScalar:
        return self.from_coeffs([0, 1][: self.order])

    def abs_variable(self) -> JetScalar:
        """|s| near s0"""
        return self.variable() if self.base > 0 else -self.variable()

    def sqrt_abs_variable(self) -> JetScalar:
        return self.abs_variable().sqrt()

    def coerce(self, value: Any) -> JetScalar:
        if isinstance(value, JetScalar):
            if value.base != self.base or value.order != self.order:
                raise BaseMismatch(f"jet {value} does not live in {self}")
            return value
        return self.constant(value)

    def sqrt_constant(self, q: RationalLike) -> JetScalar:
        return self.constant(sqrt_positive_rational(q))


def invert(a: JetScalar) -> JetScalar:
    return a.inverse()


def sqrt(a: JetScalar) -> JetScalar:
    return a.sqrt()


def exp_nilpotent(a: JetScalar) -> JetScalar:
    """exp(a) for a jet with vanishing constant term, as a finite series"""
    if not a.is_nilpotent():
        raise ValueError(f"exp of {a} needs a transcendental constant")
    ring = a.ring
    out, power = ring.one(), ring.one()
    for m in range(1, a.order):
        power = power * a
        out = out + power * Fraction(1, factorial(m))
    return out


def mult_matrix(f: JetScalar) -> List[List[Scalar]]:
    """Matrix of multiplication by f on the coefficient basis; entry (j, m) = f_{m-j}"""
    k = f.order
    return [[f.coeffs[m - j] if m >= j else Scalar.zero() for m in range(k)] for j in range(k)]


def involution(a: JetScalar) -> JetScalar:
    """Re-expand a(s) in the variable 1/s around 1/s0"""
    s0, k = a.base, a.order
    target = JetRing(1 / s0, k)
    # s = 1/(1/s0 + delta) = s0 + sum_{m>=1} s0 * (-s0 * delta)^m
    shift = target.from_coeffs([0] + [s0 * (-s0) ** m for m in range(1, k)])
    out, power = target.zero(), target.one()
    for coeff in a.coeffs:
        out = out + power * coeff
        power = power * shift
    return out


def coefficient_json(value: Any) -> Any:
    """Serialize a Scalar or JetScalar coefficient"""
    if isinstance(value, JetScalar):
        return {"jet": value.to_dict()}
    return {"scalar": Scalar.of(value).to_records()}


def coefficient_from_json(data: Dict[str, Any]) -> Any:
    if "jet" in data:
        return JetScalar.from_dict(data["jet"])
    return Scalar.from_records(data["scalar"])
