"""Building t-polynomials from a minimal polynomial, and the unit-circle test.

For a base with minimal polynomial G, the characteristic polynomial G_n of the
n-th power of the companion matrix has the n-th powers of the conjugates as
roots.  If no conjugate lies on the unit circle, one coefficient of G_n
eventually dominates the rest; clearing denominators and substituting X^n
gives an integer polynomial Q vanishing at the base with that dominance,
i.e. a representation of zero usable by the parallel adders.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath
import numpy as np

from .digits import DigitString
from .errors import InvalidBaseError, NotFoundError, UnitConjugateError
from .numberfield import AlgebraicBase, _poly_divmod, _trim, eval_digits, poly_str
from .paradd import ZeroRep, make_zero_rep

DEFAULT_NMAX = 64
COARSE_TOL = 1e-9
FINE_TOL = mpmath.mpf(10) ** -30
FINE_DPS = 60  # about 200 bits


def _mat_mul(a, b):
    n = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def _mat_pow(m, n: int):
    d = len(m)
    result = [[Fraction(int(i == j)) for j in range(d)] for i in range(d)]
    while n:
        if n & 1:
            result = _mat_mul(result, m)
        m = _mat_mul(m, m)
        n >>= 1
    return result


def companion_matrix(base: AlgebraicBase) -> list[list[Fraction]]:
    """First column -g_1..-g_d, ones on the superdiagonal."""
    g = base.monic_poly
    d = base.degree
    return [[-g[i + 1] if j == 0 else Fraction(int(j == i + 1)) for j in range(d)] for i in range(d)]


def char_poly(a: Sequence[Sequence[Fraction]]) -> tuple:
    """det(X I - A) by Faddeev-LeVerrier, coefficients most significant first."""
    n = len(a)
    coeffs = [Fraction(1)]
    m = [[Fraction(0)] * n for _ in range(n)]
    c = Fraction(1)
    for k in range(1, n + 1):
        m = [[m[i][j] + (c if i == j else 0) for j in range(n)] for i in range(n)]
        m = _mat_mul(a, m)
        c = -sum(m[i][i] for i in range(n)) / k
        coeffs.append(c)
    return tuple(coeffs)


@dataclass(frozen=True)
class GnPolynomial:
    """G_n(X) = prod (X - alpha_j^n), coefficients g_0(n) = 1, ..., g_d(n)."""

    n: int
    coeffs: tuple

    def integer_coeffs(self) -> tuple[int, tuple]:
        """(K, K * coeffs) with K the lcm of the denominators."""
        K = math.lcm(*(c.denominator for c in self.coeffs))
        return K, tuple(int(c * K) for c in self.coeffs)

    def __str__(self):
        return poly_str(self.coeffs)


def char_poly_of_power(base: AlgebraicBase, n: int) -> GnPolynomial:
    if n < 1:
        raise ValueError("n must be positive")
    return GnPolynomial(n, char_poly(_mat_pow(companion_matrix(base), n)))


def is_t_dominant(coeffs: Sequence[int], t: int = 1) -> int | None:
    """Index i0 with |c[i0]| > t * sum of the other |c[i]|, or None."""
    if t < 1:
        raise ValueError("t must be >= 1")
    total = sum(abs(c) for c in coeffs)
    for i, c in enumerate(coeffs):
        if abs(c) > t * (total - abs(c)):
            return i
    return None


@dataclass(frozen=True)
class SearchResult:
    """Q(X) = K * G_n0(X^n0) with dominant coefficient at degree i0.

    ``Q`` is least significant first: ``Q[j]`` multiplies X^j.
    """

    base: AlgebraicBase
    t: int
    n0: int
    K: int
    Q: tuple
    i0: int
    gn: GnPolynomial

    @property
    def j0(self) -> int:
        return self.i0 // self.n0

    def q_string(self) -> str:
        return poly_str(tuple(reversed(self.Q)))


def _verify_root(base: AlgebraicBase, Q: Sequence[int]):
    if not eval_digits(DigitString.from_lsb(Q), base).is_zero():
        raise RuntimeError(f"constructed polynomial does not vanish at a root of {base}")


def _result_for(base, t, n, gn) -> SearchResult | None:
    K, ints = gn.integer_coeffs()
    top = is_t_dominant(ints, t)
    if top is None:
        return None
    d = len(ints) - 1
    Q = [0] * (d * n + 1)
    for idx, c in enumerate(ints):
        Q[(d - idx) * n] = c
    result = SearchResult(base, t, n, K, tuple(Q), (d - top) * n, gn)
    _verify_root(base, result.Q)
    return result


def find_t_polynomial(base: AlgebraicBase, t: int = 2, n_max: int = DEFAULT_NMAX,
                      check_conjugates: bool = True) -> SearchResult:
    """First n in 1..n_max whose G_n has a t-dominant coefficient.

    With ``check_conjugates`` the base is first classified; a conjugate on the
    unit circle means no t-polynomial exists and ``UnitConjugateError`` is
    raised without searching.
    """
    if t < 1:
        raise ValueError("t must be >= 1")
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if check_conjugates:
        cls = check_unit_circle(base)
        if cls.verdict == "has_unit_conjugate":
            raise UnitConjugateError(
                f"{base} has a conjugate of modulus 1; no {t}-polynomial exists", cls)
    m = companion_matrix(base)
    power = m
    for n in range(1, n_max + 1):
        if n > 1:
            power = _mat_mul(power, m)
        found = _result_for(base, t, n, GnPolynomial(n, char_poly(power)))
        if found is not None:
            return found
    raise NotFoundError(f"no {t}-polynomial for {base} with n <= {n_max}")


def to_zero_rep(result: SearchResult) -> ZeroRep:
    """Laurent form of Q centred on its dominant coefficient, with b_0 > 0."""
    coeffs = {j - result.i0: c for j, c in enumerate(result.Q) if c}
    return make_zero_rep(coeffs, result.base)


# -- unit circle -------------------------------------------------------------


@dataclass(frozen=True)
class ConjugateClass:
    verdict: str  # no_unit_conjugate | has_unit_conjugate | indeterminate
    method: str  # odd_degree | degree_two | non_reciprocal | numeric
    root_moduli: tuple
    certified: bool = False  # numeric verdict confirmed by an exact root count


def root_moduli(coeffs: Sequence[int], dps: int | None = None) -> list:
    """Moduli of all complex roots; double precision by default, mpmath at ``dps`` digits."""
    if dps is None:
        return sorted(float(abs(r)) for r in np.roots([float(c) for c in coeffs]))
    with mpmath.workdps(dps):
        roots = mpmath.polyroots([int(c) for c in coeffs], maxsteps=400, extraprec=4 * dps)
        return sorted(abs(r) for r in roots)


def is_reciprocal(coeffs: Sequence[int]) -> bool:
    """G(X) = +-X^d G(1/X)."""
    rev = tuple(reversed(coeffs))
    return tuple(coeffs) == rev or tuple(coeffs) == tuple(-c for c in rev)


def trace_polynomial(coeffs: Sequence[int]) -> list[Fraction]:
    """H with G(x) = x^m H(x + 1/x) for a palindromic G of degree 2m (LSB-first)."""
    g = list(reversed(coeffs))  # LSB-first
    m = (len(g) - 1) // 2
    # T_k(y) = x^k + x^-k: T_0 = 2, T_1 = y, T_{k+1} = y T_k - T_{k-1}
    t_prev, t_cur = [Fraction(2)], [Fraction(0), Fraction(1)]
    h = [Fraction(g[m])]
    for k in range(1, m + 1):
        tk = t_cur
        h = [(h[i] if i < len(h) else 0) + g[m + k] * (tk[i] if i < len(tk) else 0)
             for i in range(max(len(h), len(tk)))]
        shifted = [Fraction(0)] + t_cur
        t_prev, t_cur = t_cur, [shifted[i] - (t_prev[i] if i < len(t_prev) else 0)
                                for i in range(len(shifted))]
    return h


def _peval(p: Sequence[Fraction], x) -> Fraction:
    v = Fraction(0)
    for c in reversed(p):
        v = v * x + c
    return v


def _sturm_count(p: list[Fraction], lo, hi) -> int:
    """Distinct real roots of p in the open interval (lo, hi); endpoints must not be roots."""
    p = _trim(list(p))
    seq = [p, _trim([i * c for i, c in enumerate(p)][1:])]
    while seq[-1] and len(seq[-1]) > 1:
        _, r = _poly_divmod(seq[-2], seq[-1])
        if not r:
            break
        seq.append([-c for c in r])

    def changes(x):
        signs = [s for s in (_peval(q, x) for q in seq if q) if s != 0]
        return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))

    return changes(lo) - changes(hi)


def unit_circle_root_count(coeffs: Sequence[int]) -> int | None:
    """Exact count of conjugate pairs on the unit circle for a palindromic polynomial.

    Roots x = e^{i theta} other than +-1 correspond to real roots
    y = 2 cos(theta) of the trace polynomial in (-2, 2).  Returns None when
    the polynomial is not palindromic of even degree or has +-1 as a root.
    """
    coeffs = list(coeffs)
    if len(coeffs) % 2 == 0 or coeffs != coeffs[::-1]:
        return None
    h = trace_polynomial(coeffs)
    if _peval(h, 2) == 0 or _peval(h, -2) == 0:
        return None
    return _sturm_count(h, Fraction(-2), Fraction(2))


def check_unit_circle(base: AlgebraicBase, shortcuts: bool = True) -> ConjugateClass:
    """Decide whether some conjugate of the base has modulus 1.

    Structural shortcuts first (odd degree, degree two, non-reciprocal); then
    root moduli at double precision, escalated to ~200 bits for any modulus
    within 1e-9 of 1.  A modulus still within 1e-30 of 1 is reported as a unit
    conjugate only when an exact Sturm count on the trace polynomial agrees;
    otherwise the verdict is ``indeterminate``.
    """
    coeffs = base.min_poly
    d = base.degree
    moduli = root_moduli(coeffs)
    if max(moduli) <= 1 + COARSE_TOL:
        fine = root_moduli(coeffs, FINE_DPS)
        if max(fine) <= 1:
            raise InvalidBaseError(f"{base} has no root of modulus > 1")
    diag = tuple(moduli)
    if shortcuts:
        if d % 2 == 1:
            return ConjugateClass("no_unit_conjugate", "odd_degree", diag)
        if d == 2:
            return ConjugateClass("no_unit_conjugate", "degree_two", diag)
        if not is_reciprocal(coeffs):
            return ConjugateClass("no_unit_conjugate", "non_reciprocal", diag)

    if all(abs(m - 1) > COARSE_TOL for m in moduli):
        return ConjugateClass("no_unit_conjugate", "numeric", diag)
    fine = root_moduli(coeffs, FINE_DPS)
    diag = tuple(float(m) for m in fine)
    near = [m for m in fine if abs(m - 1) <= FINE_TOL]
    exact = unit_circle_root_count(coeffs)
    if not near:
        return ConjugateClass("no_unit_conjugate", "numeric", diag, certified=exact == 0)
    if exact:
        return ConjugateClass("has_unit_conjugate", "numeric", diag, certified=True)
    return ConjugateClass("indeterminate", "numeric", diag)
