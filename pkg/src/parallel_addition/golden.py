"""Addition on {-1, 0, 1} in base the Golden Mean, and in Fibonacci numeration.

Both phases use the rewriting rule -X^2 + 3 - X^-2, i.e. every position
updates as z_i - 3 q_i + q_{i+2} + q_{i-2}.  Phase A takes digits in
{-2,...,2} to {-1,...,2}; phase B takes {-1,...,2} to {-1, 0, 1}.

The kernels work on integer arrays of shape (batch, positions), least
significant position in column 0, so exhaustive sweeps run vectorised.  The
DigitString functions are thin wrappers that pad the support first.

Fibonacci mode (weights F_0 = 1, F_1 = 2, F_{n+2} = F_{n+1} + F_n) has no
positions below 0.  The rule at position 1 lands on {3, 1, 0} and the rule at
position 0 lands on {2, 0}.  Decisions near the bottom read a couple of
virtual digits below position 0, chosen so that the result stays inside the
alphabet; see ``_fib_phase_A`` and ``_fib_phase_B``.
"""

from __future__ import annotations

import numpy as np

from .digits import Alphabet, DigitString, digitwise_sum, in_alphabet, parse
from .errors import AlphabetError, DigitParseError
from .paradd import Round, Trace

GOLDEN_MIN_POLY = (1, -1, -1)
GOLDEN_RULE = ((2, -1), (0, 3), (-2, -1))

DIGITS = Alphabet(-1, 1)
SUM_DIGITS = Alphabet(-2, 2)
MID_DIGITS = Alphabet(-1, 2)

# each phase reaches 2 positions past the support on either side
_PAD = 2


def _at(a: np.ndarray, k: int) -> np.ndarray:
    """Column c of the result holds column c + k of ``a``; zero outside."""
    out = np.zeros_like(a)
    n = a.shape[1]
    if abs(k) >= n:
        return out
    if k >= 0:
        out[:, : n - k] = a[:, k:]
    else:
        out[:, -k:] = a[:, : n + k]
    return out


def q_A(z: np.ndarray) -> np.ndarray:
    fire = (z <= -1) | ((z == 0) & (_at(z, 2) < 0) & (_at(z, -2) < 0))
    return -fire.astype(z.dtype)


def q_B(z: np.ndarray) -> np.ndarray:
    up, down = _at(z, 2), _at(z, -2)
    up2, down2 = _at(z, 4), _at(z, -4)
    zero = z == 0
    fire = (
        (z == 2)
        | ((z == 1) & ((up >= 1) | (down >= 1)))
        | (zero & (up == 2) & (down == 2))
        | (zero & (up == 1) & (down == 1) & (up2 >= 1) & (down2 >= 1))
        | (zero & (up == 2) & (down == 1) & (down2 >= 1))
        | (zero & (down == 2) & (up == 1) & (up2 >= 1))
    )
    return fire.astype(z.dtype)


def _update(z: np.ndarray, q: np.ndarray) -> np.ndarray:
    return z - 3 * q + _at(q, 2) + _at(q, -2)


def phase_A(z: np.ndarray, fib: bool = False) -> tuple[np.ndarray, np.ndarray]:
    """One round of phase A on a batch; returns (q, new digits)."""
    if fib:
        return _fib_phase_A(z)
    q = q_A(z)
    return q, _update(z, q)


def phase_B(z: np.ndarray, fib: bool = False) -> tuple[np.ndarray, np.ndarray]:
    if fib:
        return _fib_phase_B(z)
    q = q_B(z)
    return q, _update(z, q)


def _fib_phase_A(z):
    # virtual positions -2, -1 in front of position 0.  A 2 at -1 keeps a 0 at
    # position 1 from firing through its missing lower partner; position 0
    # sees a negative partner exactly when position 1 fires.
    q1 = np.where(z[:, 1] <= -1, -1, 0).astype(z.dtype)
    vm2 = np.where(q1 == -1, -2, 2).astype(z.dtype)
    vm1 = np.full_like(q1, 2)
    ext = np.concatenate([vm2[:, None], vm1[:, None], z], axis=1)
    q = q_A(ext)
    return _fib_finish(ext, q, 2)


def _fib_phase_B(z):
    # virtual positions -4..-1.  Position 0 is treated as having a partner of
    # value 2 when position 1 fires, and -1 otherwise.
    n = z.shape[0]
    zeros = np.zeros(n, dtype=z.dtype)
    ones = np.full(n, -1, dtype=z.dtype)
    ext = np.stack([zeros, zeros, ones, ones], axis=1)
    ext = np.concatenate([ext, z], axis=1)
    q1 = q_B(ext)[:, 5]
    ext[:, 2] = np.where(q1 == 1, 2, -1)
    q = q_B(ext)
    return _fib_finish(ext, q, 4)


def _fib_finish(ext, q, offset):
    """Apply the Fibonacci carries: position 1 also lands on 0, position 0 lands nowhere below."""
    q = q.copy()
    q[:, :offset] = 0
    # the carry reaching position 0 from below stands for position 1's rule
    q[:, offset - 2] = q[:, offset + 1]
    new = _update(ext, q)
    return q[:, offset:], new[:, offset:]


def add_batch(v: np.ndarray, fib: bool = False) -> np.ndarray:
    """Phases A then B on digitwise sums; rows need 4 zero columns of headroom on each side."""
    _, w = phase_A(v, fib)
    _, z = phase_B(w, fib)
    return z


# -- digit strings -----------------------------------------------------------


def _check(x: DigitString, alphabet: Alphabet):
    if not in_alphabet(x, alphabet):
        raise AlphabetError(f"{x} has digits outside {alphabet}")


def _run(z: DigitString, phases, pad: int) -> tuple[DigitString, list[Round]]:
    if z.is_zero():
        return z, [Round(DigitString(), z) for _ in phases]
    lo = z.low_exp - pad
    hi = z.high_exp + pad
    buf = np.array([z.lsb(lo, hi)], dtype=np.int64)
    rounds = []
    for phase in phases:
        q, buf = phase(buf)
        rounds.append(Round(DigitString.from_lsb(q[0].tolist(), lo),
                            DigitString.from_lsb(buf[0].tolist(), lo)))
    return rounds[-1].z, rounds


def alg_A(z: DigitString) -> DigitString:
    """{-2,...,2} to {-1,...,2}, value preserved."""
    _check(z, SUM_DIGITS)
    return _run(z, [phase_A], _PAD)[0]


def alg_B(z: DigitString) -> DigitString:
    """{-1,...,2} to {-1, 0, 1}, value preserved."""
    _check(z, MID_DIGITS)
    return _run(z, [phase_B], _PAD)[0]


def trace_III(x: DigitString, y: DigitString) -> Trace:
    _check(x, DIGITS)
    _check(y, DIGITS)
    v = digitwise_sum(x, y)
    _, rounds = _run(v, [phase_A, phase_B], 2 * _PAD)
    return Trace(GOLDEN_RULE, v, tuple(rounds))


def add_III(x: DigitString, y: DigitString) -> DigitString:
    """Parallel addition on {-1, 0, 1} in base the Golden Mean."""
    return trace_III(x, y).output


# -- Fibonacci numeration ----------------------------------------------------


def fib_numbers(n: int) -> list[int]:
    """F_0..F_{n-1} with F_0 = 1, F_1 = 2."""
    out = [1, 2]
    while len(out) < n:
        out.append(out[-1] + out[-2])
    return out[:n]


def fib_value(x: DigitString) -> int:
    if x.is_zero():
        return 0
    if x.low_exp < 0:
        raise ValueError("Fibonacci strings have no negative positions")
    f = fib_numbers(x.high_exp + 1)
    return sum(d * f[e] for e, d in x.items())


def zeckendorf(n: int) -> DigitString:
    """Greedy expansion with no two adjacent ones."""
    if n < 0:
        raise ValueError("n must be non-negative")
    f = [1, 2]
    while f[-1] <= n:
        f.append(f[-1] + f[-2])
    digits = {}
    for i in range(len(f) - 1, -1, -1):
        if f[i] <= n:
            digits[i] = 1
            n -= f[i]
    return DigitString.from_mapping(digits)


def parse_fib(text: str) -> DigitString:
    """Digit-string text without a radix point."""
    if "." in text.split():
        raise DigitParseError("Fibonacci strings cannot contain '.'")
    return parse(text)


def fib_trace(x: DigitString, y: DigitString) -> Trace:
    """Both phases of ``fib_add``.

    The q rows hold the carries at real positions only; the carry that
    position 1 also drops on position 0 is not a shift of the rule, so
    ``replay`` does not apply to these traces.
    """
    _check(x, DIGITS)
    _check(y, DIGITS)
    if (x and x.low_exp < 0) or (y and y.low_exp < 0):
        raise ValueError("Fibonacci strings have no negative positions")
    v = digitwise_sum(x, y)
    if v.is_zero():
        return Trace(GOLDEN_RULE, v, (Round(DigitString(), v), Round(DigitString(), v)))
    width = v.high_exp + 1 + 2 * _PAD
    buf = np.array([v.lsb(0, width - 1)], dtype=np.int64)
    rounds = []
    for phase in (phase_A, phase_B):
        q, buf = phase(buf, fib=True)
        rounds.append(Round(DigitString.from_lsb(q[0].tolist()), DigitString.from_lsb(buf[0].tolist())))
    return Trace(GOLDEN_RULE, v, tuple(rounds))


def fib_add(x: DigitString, y: DigitString) -> DigitString:
    """Parallel addition of Fibonacci-weighted strings over {-1, 0, 1}."""
    return fib_trace(x, y).output


# -- the Facts behind phase B ------------------------------------------------


def facts_B(z: np.ndarray) -> dict[int, np.ndarray]:
    """Per-row truth of the seven facts about phase B's carries, keyed 1-7, on zero-padded rows.

    Rows need 6 zero columns on each side so every position is judged with its
    full neighbourhood.
    """
    q = q_B(z)
    zu, zd = _at(z, 2), _at(z, -2)
    qu, qd = _at(q, 2), _at(q, -2)

    def holds(premise, conclusion):
        return ~(premise & ~conclusion).any(axis=1)

    return {
        1: holds((z >= 1) & (zu >= 1), (q == 1) & (qu == 1)),
        2: holds((z <= 0) & (zu <= 0), (q == 0) & (qu == 0)),
        3: holds((zu <= 0) & (z == 1) & (zd <= 0), q == 0),
        4: holds((z == 0) & (q == 1), (qu == 1) & (qd == 1)),
        5: holds((z == 1) & (q == 0), (qu == 0) & (qd == 0)),
        6: holds((z == 0) & (q == 0), (qu == 0) | (qd == 0)),
        7: holds((z == 1) & (q == 1), (qu == 1) | (qd == 1)),
    }
