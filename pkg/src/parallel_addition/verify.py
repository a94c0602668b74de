"""Property harness: value preservation, alphabet closure, locality, exhaustive sweeps.

Every randomised check takes a seed and draws all its inputs from one
``random.Random``, so a report is reproducible and each recorded failure can
be re-run on its own from the digit strings it stores.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from . import golden
from .digits import Alphabet, DigitString, in_alphabet, random_string
from .numberfield import AlgebraicBase, eval_digits, make_base
from .paradd import (ZeroRep, add_I, add_II, avizienis_add, chow_robertson_add, derive_params_I,
                     derive_params_II, locality_of, make_zero_rep)

DEFAULT_TRIALS = 10_000
FIB = "fib"


@dataclass
class PropertyReport:
    name: str
    cases_run: int = 0
    failures: list = field(default_factory=list)
    seed: int | None = None

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, **witness):
        self.failures.append({k: str(v) for k, v in witness.items()})

    def finish(self) -> "PropertyReport":
        self.failures.sort(key=lambda f: sorted(f.items()))
        return self

    def summary(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        line = f"{self.name}: {verdict} ({self.cases_run} cases, {len(self.failures)} failures, seed={self.seed})"
        if self.failures:
            line += f"\n  first witness: {self.failures[0]}"
        return line


@dataclass(frozen=True)
class Adder:
    """An adder with everything the harness needs to judge it."""

    name: str
    add: Callable[[DigitString, DigitString], DigitString]
    base: object  # AlgebraicBase, an integer base, or FIB
    alphabet: Alphabet
    memory: int
    anticipation: int
    tracer: Callable | None = None
    stage_alphabets: tuple = ()  # digit range after each traced round
    exp_range: tuple = (-5, 5)
    min_exp: int | None = None  # lowest output exponent the locality claim covers


def value(x: DigitString, base):
    """Exact value of ``x``: a field element, a Fraction, or an int for Fibonacci."""
    if isinstance(base, AlgebraicBase):
        return eval_digits(x, base)
    if base == FIB:
        return golden.fib_value(x)
    return sum((Fraction(base) ** e * d for e, d in x.items()), Fraction(0))


def _pair(rng, alphabet, max_len, exp_range):
    x = random_string(alphabet, rng.randint(0, max_len), exp_range, rng)
    y = random_string(alphabet, rng.randint(0, max_len), exp_range, rng)
    return x, y


def check_sum(adder, base, alphabet: Alphabet, trials: int = DEFAULT_TRIALS, seed: int = 0,
              max_len: int = 20, exp_range=(-5, 5), name: str = "sum") -> PropertyReport:
    """value(adder(x, y)) == value(x) + value(y) on random pairs."""
    rng = random.Random(seed)
    report = PropertyReport(name, seed=seed)
    for _ in range(trials):
        x, y = _pair(rng, alphabet, max_len, exp_range)
        out = adder(x, y)
        report.cases_run += 1
        expected = value(x, base) + value(y, base)
        if value(out, base) != expected:
            report.fail(x=x, y=y, expected=expected, actual=out)
    return report.finish()


def check_alphabet(adder, alphabet: Alphabet, trials: int = DEFAULT_TRIALS, seed: int = 0,
                   max_len: int = 20, exp_range=(-5, 5), tracer=None, stage_alphabets=(),
                   name: str = "alphabet") -> PropertyReport:
    """Outputs stay in ``alphabet``; with a tracer, round r stays in ``stage_alphabets[r]``."""
    rng = random.Random(seed)
    report = PropertyReport(name, seed=seed)
    for _ in range(trials):
        x, y = _pair(rng, alphabet, max_len, exp_range)
        report.cases_run += 1
        out = adder(x, y)
        if not in_alphabet(out, alphabet):
            report.fail(x=x, y=y, expected=alphabet, actual=out)
            continue
        if tracer is not None:
            for r, (rnd, allowed) in enumerate(zip(tracer(x, y).rounds, stage_alphabets), 1):
                if not in_alphabet(rnd.z, allowed):
                    report.fail(x=x, y=y, expected=f"round {r} in {allowed}", actual=rnd.z)
                    break
    return report.finish()


def _perturb(rng, x: DigitString, alphabet, lo, hi, keep) -> DigitString:
    digits = {e: (x.digit(e) if keep(e) else rng.randint(alphabet.lo, alphabet.hi)) for e in range(lo, hi + 1)}
    return DigitString.from_mapping(digits)


def check_locality(adder, alphabet: Alphabet, memory: int, anticipation: int,
                   trials: int = DEFAULT_TRIALS, seed: int = 0, max_len: int = 20,
                   exp_range=(-5, 5), same_parity: bool = False, min_exp: int | None = None,
                   name: str = "locality") -> PropertyReport:
    """Differential window test.

    Output digit i is claimed to depend only on input digits at exponents
    i - memory .. i + anticipation.  Each trial picks i, rerandomises every
    input digit outside that window (over the support plus a margin) and
    requires digit i of the output to stay put.  With ``same_parity`` the
    digits of the other parity inside the window are rerandomised too.
    """
    rng = random.Random(seed)
    report = PropertyReport(name, seed=seed)
    margin = memory + anticipation + 2
    for _ in range(trials):
        x, y = _pair(rng, alphabet, max_len, exp_range)
        lo = exp_range[0] - margin
        hi = exp_range[1] + max_len + margin
        if min_exp is not None:
            lo = max(lo, 0)
        i = rng.randint(max(lo, min_exp) if min_exp is not None else lo, hi)

        def keep(e):
            inside = i - memory <= e <= i + anticipation
            return inside and (not same_parity or (e - i) % 2 == 0)

        x2 = _perturb(rng, x, alphabet, lo, hi, keep)
        y2 = _perturb(rng, y, alphabet, lo, hi, keep)
        report.cases_run += 1
        before, after = adder(x, y).digit(i), adder(x2, y2).digit(i)
        if before != after:
            report.fail(x=x, y=y, x2=x2, y2=y2, position=i, expected=before, actual=after)
    return report.finish()


def check_parity_independence(adder, alphabet: Alphabet, trials: int = DEFAULT_TRIALS, seed: int = 0,
                              max_len: int = 20, exp_range=(-5, 5),
                              name: str = "parity independence") -> PropertyReport:
    """Output digits of one parity ignore every input digit of the other parity."""
    rng = random.Random(seed)
    report = PropertyReport(name, seed=seed)
    for _ in range(trials):
        x, y = _pair(rng, alphabet, max_len, exp_range)
        parity = rng.randint(0, 1)
        lo, hi = exp_range[0] - 2, exp_range[1] + max_len + 2
        keep = lambda e: e % 2 == parity  # noqa: E731
        x2 = _perturb(rng, x, alphabet, lo, hi, keep)
        y2 = _perturb(rng, y, alphabet, lo, hi, keep)
        out, out2 = adder(x, y), adder(x2, y2)
        report.cases_run += 1
        span = range(min(out.low_exp, out2.low_exp, lo) - 5, max(out.high_exp, out2.high_exp, hi) + 6)
        for e in span:
            if e % 2 == parity and out.digit(e) != out2.digit(e):
                report.fail(x=x, y=y, x2=x2, y2=y2, position=e, expected=out.digit(e), actual=out2.digit(e))
                break
    return report.finish()


def exhaustive_sweep(adder, base, alphabet: Alphabet, max_len: int, name: str = "exhaustive") -> PropertyReport:
    """Every pair of strings supported on exponents 0..max_len-1: value and alphabet."""
    report = PropertyReport(name)
    strings = [DigitString.from_lsb(ds) for ds in itertools.product(alphabet, repeat=max_len)]
    values = [value(s, base) for s in strings]
    for (x, vx), (y, vy) in itertools.product(zip(strings, values), repeat=2):
        out = adder(x, y)
        report.cases_run += 1
        if not in_alphabet(out, alphabet) or value(out, base) != vx + vy:
            report.fail(x=x, y=y, expected=vx + vy, actual=out)
    return report.finish()


# -- vectorised sweeps for the Golden Mean and Fibonacci adders ---------------


def _all_rows(alphabet, n: int) -> np.ndarray:
    digits = np.arange(alphabet.lo, alphabet.hi + 1, dtype=np.int8)
    grids = np.meshgrid(*([digits] * n), indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=1) if n else np.zeros((1, 0), np.int8)


def _golden_powers(lo: int, hi: int) -> tuple[np.ndarray, np.ndarray]:
    """beta^e = A[e] + B[e] beta for e in lo..hi, from beta^n = f_n beta + f_{n-1}."""
    def fib(n):
        if n < 0:
            return (-1) ** (n + 1) * fib(-n)
        a, b = 0, 1
        for _ in range(n):
            a, b = b, a + b
        return a

    exps = range(lo, hi + 1)
    return (np.array([fib(e - 1) for e in exps], dtype=np.int64),
            np.array([fib(e) for e in exps], dtype=np.int64))


def _pad(rows: np.ndarray, left: int, right: int) -> np.ndarray:
    return np.pad(rows, ((0, 0), (left, right)))


def sweep_golden_pairs(max_len: int = 5) -> PropertyReport:
    """add_III on every pair of {-1,0,1} strings supported on 0..max_len-1."""
    report = PropertyReport(f"add_III exhaustive, length <= {max_len}")
    singles = _all_rows(golden.DIGITS, max_len)
    n = len(singles)
    v = (singles[:, None, :] + singles[None, :, :]).reshape(n * n, max_len)
    pad = 2 * golden._PAD
    out = golden.add_batch(_pad(v, pad, pad).astype(np.int64))
    A, B = _golden_powers(-pad, max_len - 1 + pad)
    Av, Bv = _golden_powers(0, max_len - 1)
    same = (out @ A == v @ Av) & (out @ B == v @ Bv)
    closed = (np.abs(out) <= 1).all(axis=1)
    report.cases_run = n * n
    for r in np.flatnonzero(~(same & closed))[:50]:
        x, y = divmod(int(r), n)
        report.fail(x=DigitString.from_lsb(singles[x]), y=DigitString.from_lsb(singles[y]),
                    actual=DigitString.from_lsb(out[r], -pad))
    return report.finish()


def sweep_phase_closure(max_len: int = 8) -> list[PropertyReport]:
    """Phase A maps {-2..2} into {-1..2}, phase B maps {-1..2} into {-1,0,1}; values kept."""
    reports = []
    for label, phase, alphabet, bound in (("A", golden.phase_A, golden.SUM_DIGITS, (-1, 2)),
                                          ("B", golden.phase_B, golden.MID_DIGITS, (-1, 1))):
        report = PropertyReport(f"phase {label} closure, length <= {max_len}")
        rows = _all_rows(alphabet, max_len)
        _, out = phase(_pad(rows, 2, 2).astype(np.int64))
        A, B = _golden_powers(-2, max_len + 1)
        Av, Bv = _golden_powers(0, max_len - 1)
        ok = ((out >= bound[0]) & (out <= bound[1])).all(axis=1)
        ok &= (out @ A == rows @ Av) & (out @ B == rows @ Bv)
        report.cases_run = len(rows)
        for r in np.flatnonzero(~ok)[:50]:
            report.fail(z=DigitString.from_lsb(rows[r]), actual=DigitString.from_lsb(out[r], -2))
        reports.append(report.finish())
    return reports


def sweep_facts(max_len: int = 9) -> PropertyReport:
    """The seven carry facts behind phase B, over every {-1,0,1,2} window up to ``max_len``."""
    report = PropertyReport(f"phase B facts, windows <= {max_len}")
    for n in range(1, max_len + 1):
        rows = _pad(_all_rows(golden.MID_DIGITS, n), 6, 6)
        for fact, ok in golden.facts_B(rows).items():
            report.cases_run += len(rows)
            for r in np.flatnonzero(~ok)[:10]:
                report.fail(fact=fact, z=DigitString.from_lsb(rows[r], -6))
    return report.finish()


def _fib_run(v: np.ndarray):
    """Both Fibonacci phases on rows with headroom; returns (q1 of A, q1 of B, output)."""
    qa, w = golden.phase_A(v, fib=True)
    qb, z = golden.phase_B(w, fib=True)
    return qa[:, 1], qb[:, 1], z


def sweep_fib_positions(max_pos: int = 12, seed: int = 0, samples: int = 100_000) -> PropertyReport:
    """fib_add on every pair of strings supported on positions 0..max_pos.

    Only the digitwise sum matters, so this covers every sum in {-2..2}^(max_pos+1).
    Rather than running all of them, the sweep uses how the kernel splits:
    odd positions never read even ones, and even positions see the odd chain
    only through the two carries chosen at position 1.  So it runs every odd
    chain once, every even chain once per reachable pair of position-1
    carries, and checks that the two parts' value changes cancel.  The split
    itself is checked on ``samples`` random full sums.
    """
    report = PropertyReport(f"fib_add exhaustive, positions <= {max_pos}", seed=seed)
    n = max_pos + 1
    width = n + 2 * golden._PAD
    F = np.array(golden.fib_numbers(width), dtype=np.int64)
    odd_pos = np.arange(1, n, 2)
    even_pos = np.arange(0, n, 2)

    def embed(part, positions):
        v = np.zeros((len(part), width), dtype=np.int64)
        v[:, positions] = part
        return v

    odd = embed(_all_rows(golden.SUM_DIGITS, len(odd_pos)), odd_pos)
    qa, qb, out_odd = _fib_run(odd)
    odd_cols = np.arange(1, width, 2)
    even_cols = np.arange(0, width, 2)
    closed = (np.abs(out_odd[:, odd_cols]) <= 1).all(axis=1)
    drift_odd = odd @ F - out_odd[:, odd_cols] @ F[odd_cols]
    report.cases_run += len(odd)
    for r in np.flatnonzero(~closed)[:10]:
        report.fail(v=DigitString.from_lsb(odd[r]), actual=DigitString.from_lsb(out_odd[r]))

    evens = embed(_all_rows(golden.SUM_DIGITS, len(even_pos)), even_pos)
    classes = {}
    for c in sorted(set(zip(qa.tolist(), qb.tolist()))):
        rep = int(np.flatnonzero((qa == c[0]) & (qb == c[1]))[0])
        full = evens + odd[rep]
        _, _, out = _fib_run(full)
        drift = out[:, even_cols] @ F[even_cols] - evens @ F
        report.cases_run += len(evens)
        bad = ~(np.abs(out[:, even_cols]) <= 1).all(axis=1) | (drift != drift[0])
        for r in np.flatnonzero(bad)[:10]:
            report.fail(v=DigitString.from_lsb(full[r]), actual=DigitString.from_lsb(out[r]))
        classes[c] = (int(drift[0]), out_odd[rep])
        members = (qa == c[0]) & (qb == c[1])
        for r in np.flatnonzero(members & (drift_odd != drift[0]))[:10]:
            report.fail(v=DigitString.from_lsb(odd[r]), expected=drift[0], actual=drift_odd[r])

    # the split: a random full sum behaves like its two halves
    rng = np.random.default_rng(seed)
    pick_o = rng.integers(0, len(odd), samples)
    pick_e = rng.integers(0, len(evens), samples)
    full = odd[pick_o] + evens[pick_e]
    fa, fb, out = _fib_run(full)
    split_ok = (out[:, odd_cols] == out_odd[pick_o][:, odd_cols]).all(axis=1)
    split_ok &= (fa == qa[pick_o]) & (fb == qb[pick_o])
    split_ok &= out @ F == full @ F
    split_ok &= (np.abs(out) <= 1).all(axis=1)
    report.cases_run += samples
    for r in np.flatnonzero(~split_ok)[:10]:
        report.fail(v=DigitString.from_lsb(full[r]), actual=DigitString.from_lsb(out[r]))
    return report.finish()


def sweep_fib_integers(limit: int = 5000, chunk: int = 1 << 20) -> PropertyReport:
    """fib_add on the Zeckendorf expansions of every pair 0 <= m, n <= limit."""
    report = PropertyReport(f"fib_add integer pairs <= {limit}")
    zs = [golden.zeckendorf(k) for k in range(limit + 1)]
    top = max(z.high_exp for z in zs if z) + 1
    width = top + 2 * golden._PAD
    table = np.array([z.lsb(0, width - 1) for z in zs], dtype=np.int8)
    F = np.array(golden.fib_numbers(width), dtype=np.int64)
    ns = np.arange(limit + 1)
    block = max(1, chunk // (limit + 1))
    for m0 in range(0, limit + 1, block):
        ms = np.arange(m0, min(m0 + block, limit + 1))
        v = (table[ms][:, None, :] + table[None, :, :]).reshape(-1, width)
        out = golden.add_batch(v, fib=True)
        expected = (ms[:, None] + ns[None, :]).ravel()
        ok = (out.astype(np.int64) @ F == expected) & (np.abs(out) <= 1).all(axis=1)
        report.cases_run += len(v)
        for r in np.flatnonzero(~ok)[:10]:
            m, n = divmod(int(r), limit + 1)
            report.fail(m=int(ms[m]), n=n, actual=DigitString.from_lsb(out[r]))
    return report.finish()


# -- the standard adders -----------------------------------------------------

GOLDEN = make_base(golden.GOLDEN_MIN_POLY)
GOLDEN_STRONG = {4: -1, 0: 7, -4: -1}
GOLDEN_WEAK = {2: -1, 0: 3, -2: -1}
BINARY_WEAK = {1: -1, 0: 2}


def adder_I(z: ZeroRep, base, name: str) -> Adder:
    p = derive_params_I(z)
    loc = locality_of("i", z)
    return Adder(name, lambda x, y: add_I(x, y, z)[0], base, p.alphabet, loc.memory, loc.anticipation,
                     tracer=lambda x, y: add_I(x, y, z)[1], stage_alphabets=(p.alphabet,))


def adder_II(z: ZeroRep, base, name: str) -> Adder:
    p = derive_params_II(z)
    loc = locality_of("ii", z)
    return Adder(name, lambda x, y: add_II(x, y, z)[0], base, p.alphabet, loc.memory, loc.anticipation,
                     tracer=lambda x, y: add_II(x, y, z)[1],
                     stage_alphabets=tuple(p.stage_alphabet(r) for r in range(1, p.s + 1)))


def standard_adders() -> dict[str, Adder]:
    binary = make_base((1, -2))
    return {
        "I": adder_I(make_zero_rep(GOLDEN_STRONG, GOLDEN), GOLDEN, "add_I golden strong"),
        "II": adder_II(make_zero_rep(GOLDEN_WEAK, GOLDEN), GOLDEN, "add_II golden weak"),
        "II-binary": adder_II(make_zero_rep(BINARY_WEAK, binary), binary, "add_II base 2 weak"),
        "III": Adder("add_III", golden.add_III, GOLDEN, golden.DIGITS, 10, 10,
                         tracer=golden.trace_III, stage_alphabets=(golden.MID_DIGITS, golden.DIGITS)),
        "avizienis": Adder("avizienis b=10 a=6", lambda x, y: avizienis_add(x, y, 10, 6), 10,
                               Alphabet.symmetric(6), 1, 0),
        "cr": Adder("chow-robertson a=1", lambda x, y: chow_robertson_add(x, y, 1), 2,
                        Alphabet.symmetric(1), 2, 0),
        "fib": Adder("fib_add", golden.fib_add, FIB, golden.DIGITS, 10, 10,
                         exp_range=(0, 0), min_exp=14),
    }


def run_standard(adder: Adder, trials: int = DEFAULT_TRIALS, seed: int = 0,
                 max_len: int = 20) -> list[PropertyReport]:
    """Sum, alphabet and locality reports for one adder."""
    return [
        check_sum(adder.add, adder.base, adder.alphabet, trials, seed, max_len, adder.exp_range,
                  name=f"{adder.name} sum"),
        check_alphabet(adder.add, adder.alphabet, trials, seed, max_len, adder.exp_range, adder.tracer,
                       adder.stage_alphabets, name=f"{adder.name} alphabet"),
        check_locality(adder.add, adder.alphabet, adder.memory, adder.anticipation, max(1, trials // 10), seed,
                       max_len, adder.exp_range, min_exp=adder.min_exp, name=f"{adder.name} locality"),
    ]
