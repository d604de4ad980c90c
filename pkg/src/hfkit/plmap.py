"""Piecewise-linear self-maps of a closed interval, with exact arithmetic.

A :class:`PLMap` is the affine interpolation of finitely many rational
breakpoints.  Representations are normalized (collinear interior breakpoints
removed), so two maps are equal iff they agree pointwise.
"""

from __future__ import annotations

import math
import os
from bisect import bisect_left, bisect_right
from decimal import ROUND_HALF_EVEN, Decimal
from fractions import Fraction
from typing import Iterable, Iterator, NamedTuple

from .errors import DomainError, ResourceError
from .intervals import Interval, IntervalSet, RatLike, as_rat, fmt_rat

DEFAULT_BREAKPOINT_CAP = 5_000_000
CAP_ENV = "HF_BREAKPOINT_CAP"


def breakpoint_cap() -> int:
    raw = os.environ.get(CAP_ENV)
    return int(raw) if raw else DEFAULT_BREAKPOINT_CAP


class PLMap:
    """Continuous piecewise-linear map given by its breakpoints.

    >>> g = PLMap([(0, 0), (Fraction(1, 3), 1), (Fraction(2, 3), 1), (1, 0)])
    >>> g(Fraction(3, 4))
    Fraction(3, 4)
    """

    __slots__ = ("xs", "ys")

    def __init__(self, breakpoints: Iterable[tuple[RatLike, RatLike]]):
        pts = [(as_rat(x), as_rat(y)) for x, y in breakpoints]
        if len(pts) < 2:
            raise ValueError("a PLMap needs at least two breakpoints")
        for (xa, _), (xb, _) in zip(pts, pts[1:]):
            if not xa < xb:
                raise ValueError(
                    f"breakpoint x-coordinates must increase strictly: {fmt_rat(xa)} then {fmt_rat(xb)}"
                )
        xs, ys = _normalize([p[0] for p in pts], [p[1] for p in pts])
        self.xs: tuple[Fraction, ...] = xs
        self.ys: tuple[Fraction, ...] = ys

    @classmethod
    def _trusted(cls, xs, ys) -> PLMap:
        # xs already strictly increasing Fractions
        obj = cls.__new__(cls)
        obj.xs, obj.ys = _normalize(xs, ys)
        return obj

    @property
    def domain(self) -> Interval:
        return Interval(self.xs[0], self.xs[-1])

    @property
    def range(self) -> Interval:
        return Interval(min(self.ys), max(self.ys))

    @property
    def breakpoints(self) -> list[tuple[Fraction, Fraction]]:
        return list(zip(self.xs, self.ys))

    def is_self_map(self) -> bool:
        return self.range in self.domain

    def pieces(self) -> Iterator[tuple[Fraction, Fraction, Fraction, Fraction]]:
        xs, ys = self.xs, self.ys
        for i in range(len(xs) - 1):
            yield xs[i], xs[i + 1], ys[i], ys[i + 1]

    def slopes(self) -> list[Fraction]:
        return [(y1 - y0) / (x1 - x0) for x0, x1, y0, y1 in self.pieces()]

    def __call__(self, x: RatLike) -> Fraction:
        return pl_eval(self, x)

    def __len__(self):
        return len(self.xs)

    def __eq__(self, other):
        if not isinstance(other, PLMap):
            return NotImplemented
        return self.xs == other.xs and self.ys == other.ys

    def __hash__(self):
        return hash((self.xs, self.ys))

    def __repr__(self):
        pts = ", ".join(f"({fmt_rat(x)}, {fmt_rat(y)})" for x, y in zip(self.xs[:6], self.ys[:6]))
        more = ", ..." if len(self.xs) > 6 else ""
        return f"PLMap([{pts}{more}])"


def _normalize(xs, ys):
    """Drop interior breakpoints lying on the segment of their neighbours."""
    out_x = [xs[0]]
    out_y = [ys[0]]
    for i in range(1, len(xs) - 1):
        x0, y0 = out_x[-1], out_y[-1]
        x1, y1 = xs[i], ys[i]
        x2, y2 = xs[i + 1], ys[i + 1]
        if (y1 - y0) * (x2 - x1) == (y2 - y1) * (x1 - x0):
            continue
        out_x.append(x1)
        out_y.append(y1)
    out_x.append(xs[-1])
    out_y.append(ys[-1])
    return tuple(out_x), tuple(out_y)


def affine(domain: Interval, y_lo: RatLike, y_hi: RatLike) -> PLMap:
    return PLMap([(domain.lo, y_lo), (domain.hi, y_hi)])


def identity(domain: Interval) -> PLMap:
    return affine(domain, domain.lo, domain.hi)


def _eval(xs, ys, x):
    i = bisect_right(xs, x) - 1
    if i >= len(xs) - 1:
        return ys[-1]
    x0, y0 = xs[i], ys[i]
    if x == x0:
        return y0
    x1, y1 = xs[i + 1], ys[i + 1]
    return y0 + (y1 - y0) * (x - x0) / (x1 - x0)


def pl_eval(m: PLMap, x: RatLike) -> Fraction:
    x = as_rat(x)
    if not m.xs[0] <= x <= m.xs[-1]:
        raise DomainError(f"{fmt_rat(x)} is outside the domain {m.domain}")
    return _eval(m.xs, m.ys, x)


def pl_compose(outer: PLMap, inner: PLMap) -> PLMap:
    """Exact ``outer o inner``.

    Breakpoints of the result are those of ``inner`` together with the
    inner-preimages of the breakpoints of ``outer``.
    """
    if inner.range not in outer.domain:
        raise DomainError(f"image {inner.range} of inner map is not inside {outer.domain}")
    oxs, oys = outer.xs, outer.ys
    ixs, iys = inner.xs, inner.ys
    xs: list[Fraction] = []
    ys: list[Fraction] = []
    for i in range(len(ixs) - 1):
        x0, x1, y0, y1 = ixs[i], ixs[i + 1], iys[i], iys[i + 1]
        xs.append(x0)
        ys.append(_eval(oxs, oys, y0))
        if y0 == y1:
            continue
        lo, hi = (y0, y1) if y0 < y1 else (y1, y0)
        a, b = bisect_right(oxs, lo), bisect_left(oxs, hi)
        if a >= b:
            continue
        rate = (x1 - x0) / (y1 - y0)
        ks = range(a, b) if y0 < y1 else range(b - 1, a - 1, -1)
        for k in ks:
            xs.append(x0 + (oxs[k] - y0) * rate)
            ys.append(oys[k])
    xs.append(ixs[-1])
    ys.append(_eval(oxs, oys, iys[-1]))
    return PLMap._trusted(xs, ys)


def pl_power(m: PLMap, n: int, cap: int | None = None) -> PLMap:
    """n-fold composition of a self-map; raises ResourceError past ``cap`` breakpoints."""
    if n < 1:
        raise ValueError("power must be a positive integer")
    if not m.is_self_map():
        raise DomainError(f"not a self-map: image {m.range} not inside {m.domain}")
    cap = breakpoint_cap() if cap is None else cap
    result = m
    for _ in range(n - 1):
        result = pl_compose(m, result)
        if len(result) > cap:
            raise ResourceError(f"breakpoint count {len(result)} exceeds cap {cap}")
    return result


def pl_restrict(m: PLMap, J: Interval) -> PLMap:
    """The restriction of ``m`` to a nondegenerate subinterval of its domain."""
    if J not in m.domain:
        raise DomainError(f"{J} is not inside {m.domain}")
    if J.is_degenerate:
        raise ValueError("cannot restrict to a single point")
    inner = [(x, y) for x, y in zip(m.xs, m.ys) if J.lo < x < J.hi]
    return PLMap([(J.lo, _eval(m.xs, m.ys, J.lo)), *inner, (J.hi, _eval(m.xs, m.ys, J.hi))])


def pl_image(m: PLMap, J: Interval) -> Interval:
    """Exact image of a closed interval (min/max over endpoints and breakpoints)."""
    if J not in m.domain:
        raise DomainError(f"{J} is not inside {m.domain}")
    xs, ys = m.xs, m.ys
    vals = [_eval(xs, ys, J.lo), _eval(xs, ys, J.hi)]
    vals.extend(ys[bisect_right(xs, J.lo): bisect_left(xs, J.hi)])
    return Interval(min(vals), max(vals))


def pl_preimage(m: PLMap, J: Interval) -> IntervalSet:
    """``{x : m(x) in J}`` as a union of disjoint closed intervals."""
    parts: list[Interval] = []
    for x0, x1, y0, y1 in m.pieces():
        if y0 == y1:
            if y0 in J:
                parts.append(Interval(x0, x1))
            continue
        lo, hi = max(min(y0, y1), J.lo), min(max(y0, y1), J.hi)
        if lo > hi:
            continue
        ta = x0 + (lo - y0) * (x1 - x0) / (y1 - y0)
        tb = x0 + (hi - y0) * (x1 - x0) / (y1 - y0)
        parts.append(Interval(min(ta, tb), max(ta, tb)))
    return IntervalSet.merged(parts)


class Lap(NamedTuple):
    interval: Interval
    sign: int  # +1, 0 or -1


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def laps(m: PLMap) -> list[Lap]:
    """Maximal intervals of constant slope sign, left to right."""
    out: list[Lap] = []
    start = m.xs[0]
    cur = None
    for x0, x1, y0, y1 in m.pieces():
        s = _sign(y1 - y0)
        if cur is None:
            cur = s
        elif s != cur:
            out.append(Lap(Interval(start, x0), cur))
            start, cur = x0, s
    out.append(Lap(Interval(start, m.xs[-1]), cur))
    return out


def lap_count(m: PLMap) -> int:
    ys = m.ys
    count, prev = 0, None
    for i in range(len(ys) - 1):
        s = _sign(ys[i + 1] - ys[i])
        if s != prev:
            count += 1
            prev = s
    return count


class LapEstimate(NamedTuple):
    laps: int
    estimate: Decimal  # log(laps)/n, display only


def display_decimal(value: float, places: int = 6) -> Decimal:
    return Decimal(repr(value)).quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_EVEN)


def lap_entropy_estimate(m: PLMap, n: int, cap: int | None = None) -> LapEstimate:
    ell = lap_count(pl_power(m, n, cap))
    return LapEstimate(ell, display_decimal(math.log(ell) / n))
