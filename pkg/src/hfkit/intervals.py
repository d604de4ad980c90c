"""Exact rationals and closed intervals.

Rationals are :class:`fractions.Fraction` throughout; this module only adds
strict parsing/formatting and the closed-interval types built on top.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Union

from .errors import ParseError

Rat = Fraction
RatLike = Union[Fraction, int, str]

_RAT_RE = re.compile(r"^(-?)(0|[1-9][0-9]*)(?:/([1-9][0-9]*))?$")


def parse_rat(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` in lowest terms.

    Unnormalized spellings (``"2/4"``, ``"3/1"``, ``"-0"``, ``"01"``) are
    rejected so that every serialized rational has exactly one spelling.
    """
    if not isinstance(text, str):
        raise ParseError(f"expected rational string, got {text!r}")
    m = _RAT_RE.match(text)
    if m is None:
        raise ParseError(f"malformed rational {text!r}")
    sign, num, den = m.groups()
    p = int(num)
    if sign and p == 0:
        raise ParseError(f"unnormalized rational {text!r} (negative zero)")
    if den is None:
        return Fraction(-p if sign else p)
    q = int(den)
    if q == 1 or gcd(p, q) != 1:
        raise ParseError(f"unnormalized rational {text!r}")
    return Fraction(-p if sign else p, q)


def fmt_rat(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def as_rat(x: RatLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rat(x)
    raise TypeError(f"not an exact rational: {x!r}")


@dataclass(frozen=True)
class Interval:
    """Closed interval ``[lo, hi]``; ``lo == hi`` is a singleton."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        lo, hi = as_rat(self.lo), as_rat(self.hi)
        if lo > hi:
            raise ValueError(f"empty interval [{fmt_rat(lo)}, {fmt_rat(hi)}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def point(cls, x: RatLike) -> Interval:
        return cls(x, x)

    @property
    def diam(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def is_degenerate(self) -> bool:
        return self.lo == self.hi

    def __contains__(self, x) -> bool:
        if isinstance(x, Interval):
            return self.lo <= x.lo and x.hi <= self.hi
        return self.lo <= x <= self.hi

    def intersects(self, other: Interval) -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def interiors_meet(self, other: Interval) -> bool:
        """True iff the intersection has positive length."""
        return max(self.lo, other.lo) < min(self.hi, other.hi)

    def intersection(self, other: Interval) -> Interval | None:
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        return Interval(lo, hi) if lo <= hi else None

    def hull(self, other: Interval) -> Interval:
        return Interval(min(self.lo, other.lo), max(self.hi, other.hi))

    def to_json(self) -> list[str]:
        return [fmt_rat(self.lo), fmt_rat(self.hi)]

    def __str__(self):
        return f"[{fmt_rat(self.lo)}, {fmt_rat(self.hi)}]"


def hull_of(items: Iterable[Interval]) -> Interval:
    items = list(items)
    return Interval(min(i.lo for i in items), max(i.hi for i in items))


@dataclass(frozen=True)
class IntervalSet:
    """Finite union of pairwise disjoint closed intervals, sorted by ``lo``."""

    items: tuple[Interval, ...] = ()

    def __post_init__(self):
        items = tuple(self.items)
        for a, b in zip(items, items[1:]):
            if not a.hi < b.lo:
                raise ValueError(f"intervals {a} and {b} overlap or are unsorted")
        object.__setattr__(self, "items", items)

    @classmethod
    def merged(cls, intervals: Iterable[Interval]) -> IntervalSet:
        """Union of arbitrary closed intervals; touching ones are fused."""
        out: list[Interval] = []
        for iv in sorted(intervals, key=lambda i: (i.lo, i.hi)):
            if out and iv.lo <= out[-1].hi:
                if iv.hi > out[-1].hi:
                    out[-1] = Interval(out[-1].lo, iv.hi)
            else:
                out.append(iv)
        return cls(tuple(out))

    def __contains__(self, x) -> bool:
        return any(x in iv for iv in self.items)

    def __iter__(self):
        return iter(self.items)

    def __len__(self):
        return len(self.items)

    def __bool__(self):
        return bool(self.items)

    def to_json(self) -> list[list[str]]:
        return [iv.to_json() for iv in self.items]

    def __str__(self):
        return " u ".join(map(str, self.items)) or "{}"
