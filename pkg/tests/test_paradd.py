from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from parallel_addition.digits import Alphabet, DigitString, in_alphabet, parse
from parallel_addition.errors import AlphabetError, InconsistentZeroRepError, ZeroRepError
from parallel_addition.numberfield import eval_digits, make_base
from parallel_addition.paradd import (ParamsI, ZeroRep, add_I, add_II, apply_carries, avizienis_add,
                                      chow_robertson_add, derive_params_I, derive_params_II, locality_of,
                                      make_zero_rep, parse_zero_rep, select_q_I)

GOLDEN = make_base((1, -1, -1))
BINARY = make_base((1, -2))
DECIMAL = make_base((1, -10))
GAUSS = make_base((1, 2, 2))
SEVEN_HALVES = make_base((2, -7))

STRONG = make_zero_rep({4: -1, 0: 7, -4: -1}, GOLDEN)
WEAK = make_zero_rep({2: -1, 0: 3, -2: -1}, GOLDEN)
DECIMAL_REP = make_zero_rep({1: -1, 0: 10}, DECIMAL)


def test_zero_rep_classification():
    assert (STRONG.B, STRONG.M, STRONG.strong, STRONG.k, STRONG.h) == (7, 2, True, 4, 4)
    assert (WEAK.B, WEAK.M, WEAK.strong, WEAK.k, WEAK.h) == (3, 2, False, 2, 2)
    binary = make_zero_rep({1: -1, 0: 2}, BINARY)
    assert (binary.B, binary.M, binary.strength) == (2, 1, "weak")


def test_zero_rep_sign_normalised():
    z = make_zero_rep({4: 1, 0: -7, -4: 1}, GOLDEN)
    assert z == STRONG
    assert str(z) == "4:-1,0:7,-4:-1"


def test_zero_rep_errors():
    with pytest.raises(ZeroRepError):
        make_zero_rep({1: 1, -1: 1})
    with pytest.raises(ZeroRepError):
        make_zero_rep({1: -2, 0: 2}, None)  # B = M
    with pytest.raises(InconsistentZeroRepError):
        make_zero_rep({4: -1, 0: 8, -4: -1}, GOLDEN)
    with pytest.raises(ZeroRepError):
        parse_zero_rep("1:2,x")


def test_parse_zero_rep():
    assert parse_zero_rep("2:-1, 0:3,-2:-1") == {2: -1, 0: 3, -2: -1}


@pytest.mark.parametrize("B,M,expected", [(10, 1, (1, 5, 6)), (4, 1, (1, 2, 3)), (7, 2, (1, 3, 5))])
def test_params_I(B, M, expected):
    p = derive_params_I(ZeroRep(((1, -M), (0, B))))
    assert (p.c, p.a_prime, p.a) == expected
    assert all(p.inequalities())


def test_params_I_needs_strong():
    with pytest.raises(ZeroRepError):
        derive_params_I(WEAK)


@pytest.mark.parametrize("B,M,expected", [(3, 2, (3, 1, 3)), (7, 2, (5, 3, 1)), (2, 1, (2, 1, 2))])
def test_params_II(B, M, expected):
    p = derive_params_II(ZeroRep(((1, -M), (0, B))))
    assert (p.a, p.a_prime, p.s) == expected


def test_stage_alphabets_shrink():
    p = derive_params_II(WEAK)
    stages = [p.stage_alphabet(step) for step in range(p.s + 1)]
    assert stages[0] == Alphabet.symmetric(6)
    assert stages[-1] == p.alphabet
    assert all(a.lo <= b.lo and b.hi <= a.hi for a, b in zip(stages, stages[1:]))


@pytest.mark.parametrize("z,q", [(10, 1), (3, 0), (-9, -1), (-3, 0), (4, 1), (-10, -1)])
def test_select_q_I_golden(z, q):
    assert select_q_I(z, derive_params_I(STRONG)) == q


def test_select_q_I_out_of_range():
    with pytest.raises(AlphabetError):
        select_q_I(11, derive_params_I(STRONG))


@pytest.mark.parametrize("B,M", [(7, 2), (10, 1), (4, 1), (7, 3), (15, 7), (9, 1), (5, 2)])
def test_select_q_I_bounds(B, M):
    p = derive_params_I(ZeroRep(((1, -M), (0, B))))
    for z in range(-2 * p.a, 2 * p.a + 1):
        q = select_q_I(z, p)
        assert abs(q) <= p.c
        assert abs(z - q * B) <= p.a_prime


def test_example_golden_strong(fixture_lines):
    x, y, q, expected = fixture_lines("golden_strong_sum.txt")
    out, trace = add_I(x, y, STRONG)
    assert out == expected
    assert (out.high_exp, out.low_exp) == (12, -4)
    assert trace.rounds[0].q == q
    assert trace.replay() == out


def test_example_golden_weak(fixture_lines):
    x, y, r1, r2, expected = fixture_lines("golden_weak_sum.txt")
    out, trace = add_II(x, y, WEAK)
    assert [r.z for r in trace.rounds] == [r1, r2, expected]
    assert (r1.high_exp, r1.low_exp) == (6, -2)
    assert (out.high_exp, out.low_exp) == (8, -4)
    assert trace.replay() == out


def test_add_zero():
    assert add_I(DigitString(), DigitString(), STRONG)[0].is_zero()
    assert add_II(DigitString(), DigitString(), WEAK)[0].is_zero()


def test_add_I_decimal():
    assert add_I(parse("6"), parse("6"), DECIMAL_REP)[0] == parse("1 2")


def test_input_alphabet_enforced():
    with pytest.raises(AlphabetError):
        add_I(parse("6"), parse("1"), STRONG)
    with pytest.raises(AlphabetError):
        add_II(parse("4"), parse("1"), WEAK)


def test_replay_detects_tampering():
    _, trace = add_II(parse("3 -1 3"), parse("2 2"), WEAK)
    from dataclasses import replace
    bad = replace(trace, rounds=(replace(trace.rounds[0], q=parse("1")),) + trace.rounds[1:])
    with pytest.raises(ValueError):
        bad.replay()


def test_apply_carries():
    assert apply_carries(parse("2"), parse("1"), WEAK.terms) == DigitString.from_mapping({2: 1, 0: -1, -2: 1})


@pytest.mark.parametrize("b,a,x,y,out", [(10, 6, "5", "5", "1 0"), (10, 6, "1", "1", "2"), (3, 2, "2", "2", "1 1")])
def test_avizienis_examples(b, a, x, y, out):
    assert avizienis_add(parse(x), parse(y), b, a) == parse(out)


@pytest.mark.parametrize("b,a", [(2, 2), (10, 5), (10, 10)])
def test_avizienis_parameters(b, a):
    with pytest.raises(ValueError):
        avizienis_add(parse("1"), parse("1"), b, a)


@pytest.mark.parametrize("x,y,out", [("1", "1", "1 0"), ("1 1", "0", "1 -1 1"), ("0", "0", "0")])
def test_chow_robertson_examples(x, y, out):
    assert chow_robertson_add(parse(x), parse(y), 1) == parse(out)


def test_chow_robertson_range():
    with pytest.raises(AlphabetError):
        chow_robertson_add(parse("2"), parse("0"), 1)


def test_locality_table():
    assert (locality_of("I", STRONG).memory, locality_of("I", STRONG).anticipation) == (4, 4)
    assert locality_of("I", STRONG).window == 9
    ii = locality_of("II", WEAK)
    assert (ii.memory, ii.anticipation, ii.window) == (6, 6, 13)
    assert locality_of("avizienis").window == 2
    assert (locality_of("cr").memory, locality_of("cr").anticipation) == (2, 0)
    assert locality_of("III").window == 21


def test_executor_matches_sequential():
    x = parse("3 -1 3 0 3 -2 -3 1 0 2 2 3 -1 . 1 -3 2 0 1")
    y = parse("2 0 3 -2 3 3 3 -1 -2 0 . 1 1 2 -3")
    with ThreadPoolExecutor(max_workers=3) as ex:
        for z, add in ((WEAK, add_II), (STRONG, add_I)):
            p = derive_params_II(z) if add is add_II else derive_params_I(z)
            xs = DigitString.from_mapping({e: max(-p.a, min(p.a, d)) for e, d in x.items()})
            ys = DigitString.from_mapping({e: max(-p.a, min(p.a, d)) for e, d in y.items()})
            seq_out, seq_trace = add(xs, ys, z)
            par_out, par_trace = add(xs, ys, z, executor=ex)
            assert seq_out == par_out and seq_trace == par_trace


# -- alphabet comparison of the two adders ---------------------------------

STRONG_FIXTURES = [
    (GOLDEN, {4: -1, 0: 7, -4: -1}),
    (DECIMAL, {1: -1, 0: 10}),
    (BINARY, {2: -1, 0: 4}),
    (GAUSS, {4: 1, 0: 4}),
    (SEVEN_HALVES, {1: -2, 0: 7}),
    (BINARY, {3: -1, 0: 7, -1: 2}),
]


@pytest.mark.parametrize("base,coeffs", STRONG_FIXTURES)
def test_alphabet_comparison(base, coeffs):
    z = make_zero_rep(coeffs, base)
    a_I, a_II = derive_params_I(z).a, derive_params_II(z).a
    assert a_II <= a_I
    assert (a_II == a_I) == (z.B >= 4 * z.M - 1)
    if z.B >= 4 * z.M - 1:
        assert derive_params_II(z).s == 1


def test_strict_alphabet_comparison_case():
    z = make_zero_rep({3: -1, 0: 7, -1: 2}, BINARY)
    assert (derive_params_I(z).a, derive_params_II(z).a) == (12, 6)


# -- value preservation -------------------------------------------------------


def digit_strings(a, max_len=12):
    return st.builds(lambda ds, lo: DigitString(tuple(ds), lo),
                     st.lists(st.integers(-a, a), max_size=max_len), st.integers(-4, 4))


def _integer_value(x, b):
    return sum((Fraction(b) ** e * d for e, d in x.items()), Fraction(0))


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_add_I_preserves_value(data):
    base, coeffs = data.draw(st.sampled_from(STRONG_FIXTURES))
    z = make_zero_rep(coeffs, base)
    p = derive_params_I(z)
    x, y = data.draw(digit_strings(p.a)), data.draw(digit_strings(p.a))
    out, trace = add_I(x, y, z)
    assert eval_digits(out, base) == eval_digits(x, base) + eval_digits(y, base)
    assert in_alphabet(out, p.alphabet)
    assert all(abs(q) <= p.c for _, q in trace.rounds[0].q.items())
    if not out.is_zero():
        support = [s for s in (x, y) if not s.is_zero()]
        assert out.high_exp <= max(s.high_exp for s in support) + z.k
        assert out.low_exp >= min(s.low_exp for s in support) - z.h


WEAK_FIXTURES = [(GOLDEN, {2: -1, 0: 3, -2: -1}), (BINARY, {1: -1, 0: 2}), (make_base((2, -3)), {1: -2, 0: 3})]


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_add_II_preserves_value_and_stages(data):
    base, coeffs = data.draw(st.sampled_from(WEAK_FIXTURES))
    z = make_zero_rep(coeffs, base)
    p = derive_params_II(z)
    x, y = data.draw(digit_strings(p.a)), data.draw(digit_strings(p.a))
    out, trace = add_II(x, y, z)
    assert eval_digits(out, base) == eval_digits(x, base) + eval_digits(y, base)
    assert len(trace.rounds) == p.s
    for step, r in enumerate(trace.rounds, 1):
        assert in_alphabet(r.z, p.stage_alphabet(step))
        assert all(q in (-1, 0, 1) for _, q in r.q.items())
    assert trace.replay() == out


@settings(max_examples=200)
@given(digit_strings(6), digit_strings(6))
def test_avizienis_value(x, y):
    out = avizienis_add(x, y, 10, 6)
    assert _integer_value(out, 10) == _integer_value(x, 10) + _integer_value(y, 10)
    assert in_alphabet(out, Alphabet.symmetric(6))


@settings(max_examples=200)
@given(st.integers(1, 4), st.data())
def test_chow_robertson_value(a, data):
    x, y = data.draw(digit_strings(a)), data.draw(digit_strings(a))
    out = chow_robertson_add(x, y, a)
    assert _integer_value(out, 2 * a) == _integer_value(x, 2 * a) + _integer_value(y, 2 * a)
    assert in_alphabet(out, Alphabet.symmetric(a))
