"""Exact arithmetic in Q(beta) = Q[X]/(G) for an integer polynomial G.

Elements are stored as reduced coefficient vectors over ``fractions.Fraction``,
so two elements are equal exactly when their vectors are equal.  Nothing here
touches floating point.

Irreducibility of G is not checked.  With a reducible G the quotient ring is
not a field; equality in it still implies equality at every root of G, so it
remains a sound (if stricter than necessary) oracle for sum preservation, but
``inverse`` may then raise for nonzero elements.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .digits import DigitString
from .errors import BaseMismatchError, InvalidBaseError


def _trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a: list, b: list) -> tuple[list, list]:
    """Quotient and remainder of LSB-first polynomials over Q."""
    a = [Fraction(c) for c in a]
    _trim(a)
    b = _trim([Fraction(c) for c in b])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(a) >= len(b):
        c = a[-1] / lead
        shift = len(a) - len(b)
        q[shift] = c
        for j, bj in enumerate(b):
            a[shift + j] -= c * bj
        a.pop()
        _trim(a)
    return q, a


def _poly_mul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _poly_sub(a: Sequence, b: Sequence) -> list:
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]


@dataclass(frozen=True)
class AlgebraicBase:
    """The base beta, given by an integer polynomial with coefficients most significant first.

    ``AlgebraicBase((1, -1, -1))`` is the Golden Mean, root of X^2 - X - 1.
    """

    min_poly: tuple
    monic_poly: tuple = field(init=False, repr=False, compare=False)
    # X^d = -(r_0 + r_1 X + ... + r_{d-1} X^{d-1}); r is LSB-first
    _tail: tuple = field(init=False, repr=False, compare=False)
    _integral: bool = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.min_poly)
        while coeffs and coeffs[0] == 0:
            coeffs = coeffs[1:]
        if len(coeffs) < 2:
            raise InvalidBaseError(f"minimal polynomial must have degree >= 1, got {self.min_poly}")
        if coeffs[-1] == 0:
            raise InvalidBaseError("constant coefficient is zero, so beta = 0 is a root")
        lead = coeffs[0]
        monic = tuple(Fraction(c, lead) for c in coeffs)
        object.__setattr__(self, "min_poly", coeffs)
        object.__setattr__(self, "monic_poly", monic)
        object.__setattr__(self, "_tail", tuple(reversed(monic[1:])))
        object.__setattr__(self, "_integral", all(c.denominator == 1 for c in monic))

    @property
    def degree(self) -> int:
        return len(self.min_poly) - 1

    def reduce(self, poly: Sequence) -> tuple:
        """Reduce an LSB-first polynomial modulo the monic polynomial."""
        d = self.degree
        tail = self._tail
        if self._integral and all(isinstance(c, int) for c in poly):
            p = list(poly)
            tail = [int(r) for r in tail]
        else:
            p = [Fraction(c) for c in poly]
        for k in range(len(p) - 1, d - 1, -1):
            c = p[k]
            if c:
                base = k - d
                for j in range(d):
                    if tail[j]:
                        p[base + j] -= c * tail[j]
        p = p[:d] + [0] * (d - len(p))
        return tuple(Fraction(c) for c in p)

    def element(self, coeffs: Sequence) -> "FieldElement":
        """The element c_0 + c_1 beta + ... from LSB-first coefficients of any length."""
        return FieldElement(self, self.reduce(coeffs))

    def from_int(self, n) -> "FieldElement":
        return self.element([n])

    def zero(self) -> "FieldElement":
        return self.element([])

    def one(self) -> "FieldElement":
        return self.element([1])

    def beta(self) -> "FieldElement":
        return self.element([0, 1])

    @functools.lru_cache(maxsize=256)
    def power(self, n: int) -> "FieldElement":
        """beta**n for any integer n (negative powers through the inverse)."""
        if n >= 0:
            return self.element([0] * n + [1])
        return self.power(-1) ** (-n) if n != -1 else fe_inverse(self.beta())

    def __str__(self):
        return poly_str(self.min_poly)


def make_base(min_poly: Sequence[int]) -> AlgebraicBase:
    return AlgebraicBase(tuple(min_poly))


def poly_str(coeffs: Sequence, var: str = "X") -> str:
    """Render MSB-first coefficients, e.g. (1, -1, -1) -> 'X^2 - X - 1'."""
    n = len(coeffs) - 1
    parts = []
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        e = n - i
        mag = abs(c)
        mono = "" if e == 0 else (var if e == 1 else f"{var}^{e}")
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}{mono}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    if not parts:
        return "0"
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


@dataclass(frozen=True)
class FieldElement:
    base: AlgebraicBase
    coeffs: tuple  # LSB-first, length = degree, reduced

    def _check(self, other) -> "FieldElement":
        if isinstance(other, (int, Fraction)):
            return self.base.from_int(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.base != self.base:
            raise BaseMismatchError(f"elements of Q[X]/({self.base}) and Q[X]/({other.base})")
        return other

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.base, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.base, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.base, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self.base.element(_poly_mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self * fe_inverse(other)

    def __pow__(self, n: int):
        if n < 0:
            return fe_inverse(self) ** (-n)
        result = self.base.one()
        acc = self
        while n:
            if n & 1:
                result = result * acc
            acc = acc * acc
            n >>= 1
        return result

    def __str__(self):
        terms = [f"({c})*b^{i}" for i, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) or "0"


def fe_add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def fe_sub(a: FieldElement, b: FieldElement) -> FieldElement:
    return a - b


def fe_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def fe_inverse(a: FieldElement) -> FieldElement:
    """Inverse via the extended Euclidean algorithm against the monic polynomial."""
    if a.is_zero():
        raise ZeroDivisionError("zero has no inverse")
    modulus = list(reversed(a.base.monic_poly))
    r0, r1 = modulus, _trim(list(a.coeffs))
    s0, s1 = [], [Fraction(1)]
    while r1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _trim(_poly_sub(s0, _poly_mul(q, s1)))
    if len(r0) != 1:
        raise ZeroDivisionError(f"element shares a factor with {a.base}; the polynomial is reducible")
    return a.base.element([c / r0[0] for c in s0])


def eval_digits(x: DigitString, base: AlgebraicBase) -> FieldElement:
    """The exact value sum x_i beta^i."""
    if x.is_zero():
        return base.zero()
    poly = list(reversed(x.digits))
    value = base.element(poly)
    if x.low_exp:
        value = value * base.power(x.low_exp)
    return value
