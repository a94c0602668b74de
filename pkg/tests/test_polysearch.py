from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from parallel_addition.digits import DigitString
from parallel_addition.errors import InvalidBaseError, NotFoundError, UnitConjugateError
from parallel_addition.numberfield import eval_digits, make_base
from parallel_addition.polysearch import (char_poly, char_poly_of_power, check_unit_circle, companion_matrix,
                                          find_t_polynomial, is_reciprocal, is_t_dominant, root_moduli,
                                          to_zero_rep, trace_polynomial, unit_circle_root_count)

GOLDEN = (1, -1, -1)
SALEM_QUARTIC = (1, -1, -1, -1, 1)
X = sympy.Symbol("X")


def _sympy_charpoly_of_power(min_poly, n):
    m = sympy.Matrix(companion_matrix(make_base(min_poly))).applyfunc(sympy.Rational)
    return tuple(Fraction(int(c.p), int(c.q)) for c in (m ** n).charpoly(X).all_coeffs())


def test_companion_matrix_golden():
    assert companion_matrix(make_base(GOLDEN)) == [[1, 1], [1, 0]]


def test_char_poly_of_companion_is_monic_polynomial():
    for poly in [GOLDEN, (1, 2, 2), (2, -7), (1, 0, -1, -1), SALEM_QUARTIC]:
        base = make_base(poly)
        assert char_poly(companion_matrix(base)) == base.monic_poly


polys = st.lists(st.integers(-4, 4), min_size=2, max_size=4).map(lambda c: [1] + c).filter(lambda c: c[-1] != 0)


@settings(max_examples=40, deadline=None)
@given(polys, st.integers(1, 6))
def test_char_poly_of_power_matches_sympy(poly, n):
    assert char_poly_of_power(make_base(poly), n).coeffs == _sympy_charpoly_of_power(poly, n)


@settings(max_examples=40, deadline=None)
@given(polys, st.integers(1, 5))
def test_char_poly_of_power_has_powered_roots(poly, n):
    roots = np.roots([float(c) for c in poly])
    expected = np.poly(roots ** n).real
    got = np.array([float(c) for c in char_poly_of_power(make_base(poly), n).coeffs])
    assert np.allclose(got, expected, rtol=1e-8, atol=1e-6 * max(1.0, np.abs(expected).max()))


def test_golden_powers():
    assert char_poly_of_power(make_base(GOLDEN), 4).coeffs == (1, -7, 1)
    assert char_poly_of_power(make_base(GOLDEN), 2).coeffs == (1, -3, 1)


def test_t_dominance():
    assert is_t_dominant([1, -7, 1], 2) == 1
    assert is_t_dominant([1, -3, 1], 2) is None
    assert is_t_dominant([1, -3, 1], 1) == 1
    assert is_t_dominant([1, 2, 1]) is None
    with pytest.raises(ValueError):
        is_t_dominant([1], 0)


@pytest.mark.parametrize("poly,t,n0,q,K", [
    ((1, -2), 2, 2, "X^2 - 4", 1),
    (GOLDEN, 2, 4, "X^8 - 7X^4 + 1", 1),
    (GOLDEN, 1, 2, "X^4 - 3X^2 + 1", 1),
    ((1, 2, 2), 2, 2, "X^4 + 4", 1),
    ((2, -7), 2, 1, "2X - 7", 2),
])
def test_find_t_polynomial(poly, t, n0, q, K):
    base = make_base(poly)
    found = find_t_polynomial(base, t)
    assert (found.n0, found.q_string(), found.K) == (n0, q, K)
    assert eval_digits(DigitString.from_lsb(found.Q), base).is_zero()


def test_zero_rep_from_search():
    golden = make_base(GOLDEN)
    assert str(to_zero_rep(find_t_polynomial(golden, 2))) == "4:-1,0:7,-4:-1"
    assert str(to_zero_rep(find_t_polynomial(golden, 1))) == "2:-1,0:3,-2:-1"
    assert str(to_zero_rep(find_t_polynomial(make_base((1, 2, 2)), 2))) == "4:1,0:4"
    assert str(to_zero_rep(find_t_polynomial(make_base((1, -2)), 2))) == "2:-1,0:4"


def test_search_strength_follows_t():
    z = to_zero_rep(find_t_polynomial(make_base((1, 0, -1, -1)), 2))
    assert z.strong
    z = to_zero_rep(find_t_polynomial(make_base((1, 0, -1, -1)), 1))
    assert z.B > z.M


def test_unit_conjugate_base():
    base = make_base(SALEM_QUARTIC)
    cls = check_unit_circle(base)
    assert cls.verdict == "has_unit_conjugate" and cls.certified
    with pytest.raises(UnitConjugateError) as info:
        find_t_polynomial(base, 1)
    assert info.value.classification.verdict == "has_unit_conjugate"
    with pytest.raises(NotFoundError):
        find_t_polynomial(base, 1, n_max=64, check_conjugates=False)


def test_search_bound():
    with pytest.raises(NotFoundError):
        find_t_polynomial(make_base(GOLDEN), 2, n_max=3)


@pytest.mark.parametrize("poly,verdict,method", [
    (GOLDEN, "no_unit_conjugate", "degree_two"),
    ((1, 0, -1, -1), "no_unit_conjugate", "odd_degree"),
    ((1, 0, 0, -1, -1), "no_unit_conjugate", "non_reciprocal"),
    (SALEM_QUARTIC, "has_unit_conjugate", "numeric"),
    ((1, -3, 1, -3, 1), "has_unit_conjugate", "numeric"),
    ((1, 0, -5, 0, 1), "no_unit_conjugate", "numeric"),
])
def test_check_unit_circle(poly, verdict, method):
    cls = check_unit_circle(make_base(poly))
    assert (cls.verdict, cls.method) == (verdict, method)


@pytest.mark.parametrize("poly", [GOLDEN, (1, 0, -1, -1), (1, 0, 0, -1, -1), SALEM_QUARTIC, (1, 2, 2),
                                  (1, -3, 1, -3, 1), (1, -1, 0, -1, 1)])
def test_shortcuts_agree_with_numeric(poly):
    base = make_base(poly)
    assert check_unit_circle(base).verdict == check_unit_circle(base, shortcuts=False).verdict


@pytest.mark.parametrize("poly", [(1, 1), (1, 0, 1), (1, -1), (2, 1)])
def test_no_expanding_root(poly):
    with pytest.raises(InvalidBaseError):
        check_unit_circle(make_base(poly))


def test_root_moduli_precision():
    coarse = root_moduli(SALEM_QUARTIC)
    fine = root_moduli(SALEM_QUARTIC, dps=60)
    assert len(coarse) == len(fine) == 4
    assert sum(1 for m in fine if abs(m - 1) < 1e-40) == 2


def test_reciprocal():
    assert is_reciprocal(SALEM_QUARTIC)
    assert is_reciprocal((1, 0, -1))
    assert not is_reciprocal(GOLDEN)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=1, max_size=3), st.integers(-5, 5))
def test_trace_polynomial_identity(half, middle):
    coeffs = [1] + half + [middle] + half[::-1] + [1]
    h = trace_polynomial(coeffs)
    m = (len(coeffs) - 1) // 2
    lhs = sympy.expand(X ** m * sum(sympy.Rational(c.numerator, c.denominator) * (X + 1 / X) ** i
                                    for i, c in enumerate(h)))
    assert sympy.Poly(lhs, X).all_coeffs() == [sympy.Integer(c) for c in coeffs]


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=1, max_size=3), st.integers(-6, 6))
def test_sturm_count_matches_roots(half, middle):
    coeffs = [1] + half + [middle] + half[::-1] + [1]
    count = unit_circle_root_count(coeffs)
    if count is None:
        return
    poly = sympy.Poly(coeffs, X)
    if sympy.gcd(poly, poly.diff(X)).degree() > 0:
        return  # repeated roots: the count is of distinct ones
    on_circle = sum(1 for r in sympy.Poly(coeffs, X).nroots(n=40)
                    if abs(sympy.Abs(r).evalf(40) - 1) < 1e-20 and abs(sympy.im(r)) > 1e-20)
    assert 2 * count == on_circle
