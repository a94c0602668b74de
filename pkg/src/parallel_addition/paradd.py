"""Parallel adders driven by a representation of zero.

A representation of zero is an integer Laurent polynomial
``b_k X^k + ... + b_0 + ... + b_{-h} X^{-h}`` vanishing at the base, with
central coefficient ``B = b_0`` and ``M`` the sum of the moduli of the others.
Adding ``q`` times its coefficient string at position ``i`` never changes the
represented value, which is the only carry mechanism used here.

``add_I`` needs ``B > 2M`` and does a single carry round.  ``add_II`` needs
only ``B > M``, works over a smaller alphabet, and runs ``s`` rounds.  The
integer-base adders of Avizienis and of Chow and Robertson are included for
reference.

Every carry round is computed position by position from the previous buffer
only, so positions may be split across workers; see ``executor`` arguments.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

from .digits import Alphabet, DigitString, digitwise_sum, in_alphabet
from .errors import AlphabetError, InconsistentZeroRepError, ZeroRepError
from .numberfield import AlgebraicBase, eval_digits


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _sign(v: int) -> int:
    return (v > 0) - (v < 0)


@dataclass(frozen=True)
class ZeroRep:
    """Laurent coefficients of a representation of zero, as ``(exponent, coefficient)`` pairs.

    Pairs are sorted by decreasing exponent, zero coefficients dropped.  The
    central coefficient is positive and exceeds the sum of the others' moduli.
    """

    terms: tuple

    def __post_init__(self):
        terms = tuple(sorted(((int(e), int(c)) for e, c in self.terms if c), reverse=True))
        object.__setattr__(self, "terms", terms)
        if self.B <= 0:
            raise ZeroRepError("central coefficient b_0 must be positive")
        if self.B <= self.M:
            raise ZeroRepError(f"not a weak representation of zero: B={self.B} <= M={self.M}")

    @classmethod
    def from_mapping(cls, coeffs: Mapping[int, int]) -> "ZeroRep":
        return cls(tuple(coeffs.items()))

    def coeff(self, exp: int) -> int:
        return dict(self.terms).get(exp, 0)

    @property
    def B(self) -> int:
        return self.coeff(0)

    @property
    def M(self) -> int:
        return sum(abs(c) for e, c in self.terms if e != 0)

    @property
    def k(self) -> int:
        return max(0, self.terms[0][0])

    @property
    def h(self) -> int:
        return max(0, -self.terms[-1][0])

    @property
    def strong(self) -> bool:
        return self.B > 2 * self.M

    @property
    def strength(self) -> str:
        return "strong" if self.strong else "weak"

    def as_digits(self) -> DigitString:
        return DigitString.from_mapping(dict(self.terms))

    def __str__(self):
        return ",".join(f"{e}:{c}" for e, c in self.terms)


def make_zero_rep(coeffs: Mapping[int, int], base: AlgebraicBase | None = None) -> ZeroRep:
    """Normalize the sign so that b_0 > 0, classify, and verify the value is zero at ``base``."""
    coeffs = {int(e): int(c) for e, c in coeffs.items() if c}
    b0 = coeffs.get(0, 0)
    if b0 == 0:
        raise ZeroRepError("coefficient b_0 must be nonzero")
    if b0 < 0:
        coeffs = {e: -c for e, c in coeffs.items()}
    z = ZeroRep.from_mapping(coeffs)
    if base is not None and not eval_digits(z.as_digits(), base).is_zero():
        raise InconsistentZeroRepError(f"{z} does not vanish at a root of {base}")
    return z


def parse_zero_rep(text: str) -> dict[int, int]:
    """Parse ``"e:b,e:b,..."`` into an exponent -> coefficient mapping."""
    out = {}
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        try:
            e, c = item.split(":")
            out[int(e)] = out.get(int(e), 0) + int(c)
        except ValueError:
            raise ZeroRepError(f"malformed zero-representation term {item!r}") from None
    return out


@dataclass(frozen=True)
class ParamsI:
    B: int
    M: int
    a: int
    a_prime: int
    c: int

    @property
    def alphabet(self) -> Alphabet:
        return Alphabet.symmetric(self.a)

    @property
    def inner(self) -> Alphabet:
        return Alphabet.symmetric(self.a_prime)

    def inequalities(self) -> tuple[bool, bool, bool]:
        return (
            2 * self.a_prime + 1 >= self.B,
            self.a_prime + self.c * self.M <= self.a,
            2 * self.a - self.c * self.B <= self.a_prime,
        )


@dataclass(frozen=True)
class ParamsII:
    B: int
    M: int
    a: int
    a_prime: int
    s: int

    @property
    def alphabet(self) -> Alphabet:
        return Alphabet.symmetric(self.a)

    @property
    def inner(self) -> Alphabet:
        return Alphabet.symmetric(self.a_prime)

    def stage_alphabet(self, step: int) -> Alphabet:
        """Digit range after ``step`` rounds (step 0 is the plain digitwise sum)."""
        if step >= self.s:
            return self.alphabet
        return Alphabet.symmetric(2 * self.a - step * (self.B - self.M))


def derive_params_I(z: ZeroRep) -> ParamsI:
    if not z.strong:
        raise ZeroRepError(f"single-round addition needs B > 2M, got B={z.B}, M={z.M}")
    B, M = z.B, z.M
    a_prime = _ceil_div(B - 1, 2)
    c = _ceil_div(B - 1, 2 * (B - 2 * M))
    p = ParamsI(B, M, a_prime + c * M, a_prime, c)
    assert all(p.inequalities()), p
    return p


def derive_params_II(z: ZeroRep) -> ParamsII:
    a_prime = _ceil_div(z.B - 1, 2)
    a = a_prime + z.M
    return ParamsII(z.B, z.M, a, a_prime, _ceil_div(a, z.B - z.M))


def select_q_I(z: int, p: ParamsI) -> int:
    """Smallest-magnitude q with z - q*B in the inner alphabet."""
    if abs(z) > 2 * p.a:
        raise AlphabetError(f"digit {z} outside {{-{2 * p.a},...,{2 * p.a}}}")
    if abs(z) <= p.a_prime:
        return 0
    return _sign(z) * _ceil_div(abs(z) - p.a_prime, p.B)


# -- carry rounds ------------------------------------------------------------


@dataclass(frozen=True)
class Round:
    q: DigitString  # carry choices, indexed like digits
    z: DigitString  # digits after the round


@dataclass(frozen=True)
class Trace:
    """Starting digits plus, for each carry round, the q vector and the resulting digits."""

    rule: tuple  # (exponent, coefficient) pairs of the rewriting rule
    start: DigitString
    rounds: tuple = ()

    @property
    def output(self) -> DigitString:
        return self.rounds[-1].z if self.rounds else self.start

    def replay(self) -> DigitString:
        """Re-apply every q row to the start digits; raises if a snapshot disagrees."""
        z = self.start
        for n, r in enumerate(self.rounds, 1):
            z = apply_carries(z, r.q, self.rule)
            if z != r.z:
                raise ValueError(f"round {n} does not reproduce its snapshot")
        return z


def apply_carries(z: DigitString, q: DigitString, rule: Sequence[tuple[int, int]]) -> DigitString:
    """z_i - sum_j q_{i-j} b_j for every i."""
    out = z.to_mapping()
    for m, qm in q.items():
        if qm:
            for j, bj in rule:
                out[m + j] = out.get(m + j, 0) - qm * bj
    return DigitString.from_mapping(out)


def _partition(n: int, executor) -> list[range]:
    if executor is None:
        return [range(n)]
    workers = getattr(executor, "_max_workers", 4) or 4
    size = max(1, -(-n // workers))
    return [range(i, min(i + size, n)) for i in range(0, n, size)]


def _map_positions(fn: Callable[[int], int], n: int, executor) -> list[int]:
    chunks = _partition(n, executor)
    if executor is None:
        return [fn(i) for i in chunks[0]]
    parts = executor.map(lambda r: [fn(i) for i in r], chunks)
    return [v for part in parts for v in part]


def _carry_round(buf: list[int], rule, choose: Callable[[int], int], executor=None):
    """One parallel round over a padded buffer; returns (q, new_buf).

    The buffer is LSB-first; the rule's exponents are offsets.  Both phases read
    only the previous values, so the result does not depend on chunking.
    """
    n = len(buf)
    q = _map_positions(lambda i: choose(buf[i]), n, executor)

    def update(i):
        v = buf[i]
        for j, bj in rule:
            src = i - j
            if 0 <= src < n and q[src]:
                v -= q[src] * bj
        return v

    return q, _map_positions(update, n, executor)


def _check_inputs(alphabet: Alphabet, *xs: DigitString):
    for x in xs:
        if not in_alphabet(x, alphabet):
            raise AlphabetError(f"input {x} has digits outside {alphabet}")


def _run_rounds(x, y, z: ZeroRep, rounds: int, choose, executor):
    v = digitwise_sum(x, y)
    rule = z.terms
    if v.is_zero():
        return Trace(rule, v, tuple(Round(DigitString(), v) for _ in range(rounds)))
    lo = v.low_exp - z.h * rounds
    hi = v.high_exp + z.k * rounds
    buf = v.lsb(lo, hi)
    snapshots = []
    for _ in range(rounds):
        q, buf = _carry_round(buf, rule, choose, executor)
        snapshots.append(Round(DigitString.from_lsb(q, lo), DigitString.from_lsb(buf, lo)))
    return Trace(rule, v, tuple(snapshots))


def add_I(x: DigitString, y: DigitString, z: ZeroRep, executor=None) -> tuple[DigitString, Trace]:
    """Single-round addition over {-a,...,a} for a strong representation of zero."""
    p = derive_params_I(z)
    _check_inputs(p.alphabet, x, y)
    trace = _run_rounds(x, y, z, 1, lambda v: select_q_I(v, p), executor)
    return trace.output, trace


def add_II(x: DigitString, y: DigitString, z: ZeroRep, executor=None) -> tuple[DigitString, Trace]:
    """``s``-round addition over {-a,...,a} with a = ceil((B-1)/2) + M."""
    p = derive_params_II(z)
    _check_inputs(p.alphabet, x, y)

    def choose(v):
        return 0 if abs(v) <= p.a_prime else _sign(v)

    trace = _run_rounds(x, y, z, p.s, choose, executor)
    return trace.output, trace


# -- integer bases -----------------------------------------------------------


def avizienis_add(x: DigitString, y: DigitString, b: int, a: int) -> DigitString:
    if b < 3 or not (b < 2 * a and a <= b - 1):
        raise ValueError(f"need b >= 3 and b/2 < a <= b-1, got b={b}, a={a}")
    _check_inputs(Alphabet.symmetric(a), x, y)
    v = digitwise_sum(x, y)
    if v.is_zero():
        return v
    lo, hi = v.low_exp, v.high_exp + 1
    zs = v.lsb(lo, hi)
    q, r = [], []
    for zi in zs:
        if zi >= a:
            qi, ri = 1, zi - b
        elif zi <= -a:
            qi, ri = -1, zi + b
        else:
            qi, ri = 0, zi
        q.append(qi)
        r.append(ri)
    return DigitString.from_lsb([(q[i - 1] if i else 0) + r[i] for i in range(len(zs))], lo)


def chow_robertson_add(x: DigitString, y: DigitString, a: int) -> DigitString:
    """Base b = 2a over {-a,...,a}; the carry at i also looks at the sum digit at i-1."""
    if a < 1:
        raise ValueError(f"need a >= 1, got {a}")
    b = 2 * a
    _check_inputs(Alphabet.symmetric(a), x, y)
    v = digitwise_sum(x, y)
    if v.is_zero():
        return v
    lo, hi = v.low_exp, v.high_exp + 1
    zs = v.lsb(lo, hi)
    q, r = [], []
    for i, zi in enumerate(zs):
        below = zs[i - 1] if i else 0
        if a + 1 <= zi <= b:
            qi, ri = 1, zi - b
        elif -b <= zi <= -a - 1:
            qi, ri = -1, zi + b
        elif -a + 1 <= zi <= a - 1:
            qi, ri = 0, zi
        elif zi == a:
            qi, ri = (1, -a) if below > 0 else (0, a)
        else:  # zi == -a
            qi, ri = (-1, a) if below < 0 else (0, -a)
        q.append(qi)
        r.append(ri)
    return DigitString.from_lsb([(q[i - 1] if i else 0) + r[i] for i in range(len(zs))], lo)


# -- locality ----------------------------------------------------------------


@dataclass(frozen=True)
class LocalityInfo:
    """Output digit i depends on inputs at exponents i - memory ... i + anticipation."""

    memory: int
    anticipation: int

    @property
    def window(self) -> int:
        return self.memory + self.anticipation + 1


def locality_of(algorithm: str, z: ZeroRep | None = None) -> LocalityInfo:
    algorithm = algorithm.lower()
    if algorithm == "i":
        return LocalityInfo(z.k, z.h)
    if algorithm == "ii":
        s = derive_params_II(z).s
        return LocalityInfo(z.k * s, z.h * s)
    if algorithm == "avizienis":
        return LocalityInfo(1, 0)
    if algorithm in ("chow_robertson", "cr"):
        return LocalityInfo(2, 0)
    if algorithm in ("iii", "golden"):
        return LocalityInfo(10, 10)
    raise ValueError(f"unknown algorithm {algorithm!r}")
