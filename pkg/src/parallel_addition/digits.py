"""Finite signed-digit strings indexed by integer exponents.

A ``DigitString`` stores its digits most significant first together with the
exponent of the last digit.  Instances are always canonical: no leading or
trailing zero digits, and the empty tuple stands for zero.  Reading a digit at
an exponent outside the support yields 0.

Text format: whitespace-separated signed integers, most significant first,
with an optional single ``.`` token marking the radix point::

    "1 0 . 0 1"   ->  digits (1, 0, 0, 1), low_exp -2
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .errors import DigitParseError


@dataclass(frozen=True)
class Alphabet:
    """Contiguous digit set {lo, ..., hi}."""

    lo: int
    hi: int

    def __post_init__(self):
        if not self.lo <= 0 <= self.hi:
            raise ValueError(f"alphabet must contain 0, got {{{self.lo},...,{self.hi}}}")

    @classmethod
    def symmetric(cls, a: int) -> "Alphabet":
        return cls(-a, a)

    def __contains__(self, d) -> bool:
        return self.lo <= d <= self.hi

    def __iter__(self) -> Iterator[int]:
        return iter(range(self.lo, self.hi + 1))

    def __len__(self) -> int:
        return self.hi - self.lo + 1

    @property
    def is_symmetric(self) -> bool:
        return self.lo == -self.hi

    def __str__(self):
        return f"{{{self.lo},...,{self.hi}}}"


@dataclass(frozen=True)
class DigitString:
    """Digits ``digits[0]`` at exponent ``high_exp`` down to ``digits[-1]`` at ``low_exp``."""

    digits: tuple = ()
    low_exp: int = 0

    def __post_init__(self):
        ds = tuple(int(d) for d in self.digits)
        start, end = 0, len(ds)
        while start < end and ds[start] == 0:
            start += 1
        while end > start and ds[end - 1] == 0:
            end -= 1
        low = self.low_exp + (len(ds) - end) if end > start else 0
        object.__setattr__(self, "digits", ds[start:end])
        object.__setattr__(self, "low_exp", low)

    @classmethod
    def from_mapping(cls, coeffs: Mapping[int, int]) -> "DigitString":
        """Build from an ``{exponent: digit}`` mapping."""
        items = {e: d for e, d in coeffs.items() if d}
        if not items:
            return cls()
        lo, hi = min(items), max(items)
        return cls(tuple(items.get(e, 0) for e in range(hi, lo - 1, -1)), lo)

    @classmethod
    def from_lsb(cls, digits: Iterable[int], low_exp: int = 0) -> "DigitString":
        """Build from digits listed least significant first."""
        return cls(tuple(reversed(list(digits))), low_exp)

    @property
    def high_exp(self) -> int:
        return self.low_exp + len(self.digits) - 1

    def is_zero(self) -> bool:
        return not self.digits

    def __len__(self):
        return len(self.digits)

    def __bool__(self):
        return bool(self.digits)

    def digit(self, exp: int) -> int:
        if not self.digits or exp < self.low_exp or exp > self.high_exp:
            return 0
        return self.digits[self.high_exp - exp]

    def items(self) -> Iterator[tuple[int, int]]:
        """Yield ``(exponent, digit)`` pairs, most significant first."""
        for offset, d in enumerate(self.digits):
            yield self.high_exp - offset, d

    def to_mapping(self) -> dict[int, int]:
        return {e: d for e, d in self.items() if d}

    def lsb(self, lo: int, hi: int) -> list[int]:
        """Digits at exponents ``lo..hi`` as a list, least significant first."""
        return [self.digit(e) for e in range(lo, hi + 1)]

    def shift(self, k: int) -> "DigitString":
        """Multiply by base**k."""
        return DigitString(self.digits, self.low_exp + k) if self.digits else self

    def __neg__(self):
        return DigitString(tuple(-d for d in self.digits), self.low_exp)

    def __str__(self):
        return format_digits(self)

    def __repr__(self):
        return f"DigitString({format_digits(self)!r})"


ZERO = DigitString()


def parse(text: str) -> DigitString:
    tokens = text.split()
    if tokens.count(".") > 1:
        raise DigitParseError(f"more than one radix point in {text!r}")
    frac = 0
    if "." in tokens:
        frac = len(tokens) - tokens.index(".") - 1
        tokens.remove(".")
    try:
        digits = tuple(int(tok) for tok in tokens)
    except ValueError:
        raise DigitParseError(f"malformed digit string {text!r}") from None
    return DigitString(digits, -frac)


def format_digits(x: DigitString) -> str:
    if x.is_zero():
        return "0"
    lo = min(x.low_exp, 0)
    hi = max(x.high_exp, 0)
    words = [str(x.digit(e)) for e in range(hi, lo - 1, -1)]
    if lo < 0:
        words.insert(hi + 1, ".")
    return " ".join(words)


def parse_lines(text: str) -> list[DigitString]:
    """Parse a fixture file body: one digit string per line, ``#`` starts a comment line."""
    out = []
    for line in text.splitlines():
        if line.lstrip().startswith("#"):
            continue
        out.append(parse(line))
    return out


def digitwise_sum(x: DigitString, y: DigitString) -> DigitString:
    if x.is_zero():
        return y
    if y.is_zero():
        return x
    lo = min(x.low_exp, y.low_exp)
    hi = max(x.high_exp, y.high_exp)
    return DigitString(tuple(x.digit(e) + y.digit(e) for e in range(hi, lo - 1, -1)), lo)


def in_alphabet(x: DigitString, alphabet: Alphabet) -> bool:
    return all(d in alphabet for d in x.digits)


def random_string(alphabet: Alphabet, length: int, exp_range=(0, 0), seed=None) -> DigitString:
    """Uniform random digits over ``alphabet``.

    ``length`` digits are drawn; the exponent of the last one is drawn
    uniformly from the inclusive ``exp_range``.  ``seed`` may be an int or a
    ``random.Random`` instance.
    """
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    low = rng.randint(exp_range[0], exp_range[1])
    digits = tuple(rng.randint(alphabet.lo, alphabet.hi) for _ in range(length))
    return DigitString(digits, low)
