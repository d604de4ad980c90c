"""Horseshoe search, certification and the nested-interval coding.

A certificate ``(r, J0, J1)`` asserts that ``J0`` lies strictly left of
``J1`` and that ``f^r`` maps each of them onto an interval containing both.
Pulling ``J0`` and ``J1`` back along a word ``w`` gives nested intervals
``J_w`` with ``f^r(J_w) = J_{tail(w)}``; when ``f^r`` is expanding on the
two cells these shrink to points and code the full 2-shift.
"""

from __future__ import annotations

import math
import random
from bisect import bisect_left
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import NamedTuple

from .errors import CertError
from .intervals import Interval, fmt_rat
from .plmap import PLMap, _eval, display_decimal, laps, pl_image, pl_power
from .shift import Word, as_word, itinerary


@dataclass(frozen=True)
class HorseshoeCert:
    r: int
    J0: Interval
    J1: Interval
    images: tuple[Interval, Interval] | None = field(default=None, compare=False)

    @property
    def hull(self) -> Interval:
        return Interval(self.J0.lo, self.J1.hi)

    @property
    def gap(self) -> tuple[Fraction, Fraction]:
        """``(max J0, min J1)``: the open gap between the two cells."""
        return self.J0.hi, self.J1.lo

    def cell(self, symbol: int) -> Interval:
        return (self.J0, self.J1)[symbol]

    def to_json(self) -> dict:
        return {"r": self.r, "J0": self.J0.to_json(), "J1": self.J1.to_json()}


class _Branch:
    """A strictly monotone PL map restricted to an interval, with exact inverse."""

    def __init__(self, h: PLMap, J: Interval):
        lo_i = bisect_left(h.xs, J.lo)
        xs = [J.lo] + [x for x in h.xs[lo_i:] if J.lo < x < J.hi] + [J.hi]
        ys = [_eval(h.xs, h.ys, x) for x in xs]
        self.increasing = ys[-1] > ys[0]
        diffs = [b - a for a, b in zip(ys, ys[1:])]
        if not all((d > 0) if self.increasing else (d < 0) for d in diffs):
            raise CertError(f"f^r is not strictly monotone on {J}")
        if not self.increasing:
            xs.reverse()
            ys.reverse()
        self.xs, self.ys = xs, ys
        self.slopes = [abs(d) / abs(xb - xa) for d, xa, xb in zip(diffs, xs, xs[1:])]

    @property
    def image(self) -> Interval:
        return Interval(self.ys[0], self.ys[-1])

    def inverse(self, y: Fraction) -> Fraction:
        ys, xs = self.ys, self.xs
        i = bisect_left(ys, y)
        if i < len(ys) and ys[i] == y:
            return xs[i]
        if i == 0 or i == len(ys):
            raise CertError(f"{fmt_rat(y)} is not in the branch image {self.image}")
        x0, x1, y0, y1 = xs[i - 1], xs[i], ys[i - 1], ys[i]
        return x0 + (y - y0) * (x1 - x0) / (y1 - y0)

    def preimage(self, K: Interval) -> Interval:
        a, b = self.inverse(K.lo), self.inverse(K.hi)
        return Interval(min(a, b), max(a, b))


def _certify(f: PLMap, cert: HorseshoeCert, h: PLMap | None = None) -> tuple[bool, tuple[Interval, Interval] | None]:
    if cert.r < 1:
        return False, None
    if not (cert.J0.hi < cert.J1.lo and cert.J0 in f.domain and cert.J1 in f.domain):
        return False, None
    h = pl_power(f, cert.r) if h is None else h
    images = (pl_image(h, cert.J0), pl_image(h, cert.J1))
    ok = all(J in img for img in images for J in (cert.J0, cert.J1))
    return ok, images


def verify_horseshoe(f: PLMap, cert: HorseshoeCert) -> bool:
    """Recompute the images under ``f^r``; check disjointness and double covering."""
    return _certify(f, cert)[0]


def find_horseshoe(f: PLMap, r_max: int) -> HorseshoeCert | None:
    """Bounded search over pairs of laps of ``f^r`` for ``r = 1..r_max``.

    For a pair of laps whose images both contain the hull ``K`` of the pair,
    each lap is shrunk to the exact subinterval mapped onto ``K``; the pair is
    accepted when the shrunk intervals are disjoint.  Among the candidates of
    the smallest ``r`` the one with the leftmost ``J0`` (then ``J1``) wins.
    ``None`` means nothing was found within the bound, not that no horseshoe
    exists.
    """
    for r in range(1, r_max + 1):
        h = pl_power(f, r)
        monotone = [lap.interval for lap in laps(h) if lap.sign != 0]
        images = [pl_image(h, L) for L in monotone]
        best = None
        for i, Li in enumerate(monotone):
            if not images[i].lo <= Li.lo:
                continue
            for j in range(i + 1, len(monotone)):
                Lj = monotone[j]
                if Lj.hi > images[i].hi:
                    break
                K = Interval(Li.lo, Lj.hi)
                if K not in images[j]:
                    continue
                A = _Branch(h, Li).preimage(K)
                B = _Branch(h, Lj).preimage(K)
                if not A.hi < B.lo:
                    continue
                key = (A.lo, B.lo, A.hi, B.hi)
                if best is None or key < best[0]:
                    best = (key, A, B)
        if best is not None:
            _, A, B = best
            cert = HorseshoeCert(r, A, B)
            ok, imgs = _certify(f, cert, h)
            assert ok
            return HorseshoeCert(r, A, B, imgs)
    return None


class WordIntervalTable:
    """Lazily filled cache ``w -> J_w`` for one verified certificate.

    Entries are computed back to front, ``J_w = branch_{w_1}^{-1}(J_{tail(w)})``,
    where the branch is ``f^r`` restricted to ``J_{w_1}``.
    """

    def __init__(self, f: PLMap, cert: HorseshoeCert):
        self.f = f
        self.cert = cert
        self.h = pl_power(f, cert.r)
        ok, _ = _certify(f, cert, self.h)
        if not ok:
            raise CertError(f"certificate {cert.to_json()} does not verify")
        self.branches = (_Branch(self.h, cert.J0), _Branch(self.h, cert.J1))
        self._table: dict[tuple[int, ...], Interval] = {
            (): cert.hull,
            (0,): cert.J0,
            (1,): cert.J1,
        }

    def __getitem__(self, w) -> Interval:
        syms = as_word(w).symbols
        table = self._table
        if syms in table:
            return table[syms]
        i = len(syms) - 1
        while syms[i:] in table:
            i -= 1
        for k in range(i, -1, -1):
            tail = syms[k + 1:]
            table[syms[k:]] = self.branches[syms[k]].preimage(table[tail])
        return table[syms]

    def __len__(self):
        return len(self._table)


def pullback(f: PLMap, cert: HorseshoeCert, w, table: WordIntervalTable | None = None) -> Interval:
    """``J_w``; the empty word gives the hull ``[J0.lo, J1.hi]``."""
    w = as_word(w)
    table = WordIntervalTable(f, cert) if table is None else table
    return table[w]


def point_for_itinerary(f: PLMap, cert: HorseshoeCert, w, table: WordIntervalTable | None = None) -> Interval:
    """Enclosure of the point coded by any sequence starting with ``w``."""
    return pullback(f, cert, w, table)


def singleton_rate(f: PLMap, cert: HorseshoeCert) -> Fraction | None:
    """Least ``|slope|`` of ``f^r`` on pieces meeting ``J0`` or ``J1``, if it exceeds 1."""
    h = pl_power(f, cert.r)
    if not _certify(f, cert, h)[0]:
        raise CertError(f"certificate {cert.to_json()} does not verify")
    cells = (cert.J0, cert.J1)
    lam = None
    for x0, x1, y0, y1 in h.pieces():
        piece = Interval(x0, x1)
        if any(piece.interiors_meet(J) for J in cells):
            s = abs((y1 - y0) / (x1 - x0))
            lam = s if lam is None else min(lam, s)
    if lam is None or lam <= 1:
        return None
    return lam


def diameter_bound(cert: HorseshoeCert, rate: Fraction, length: int) -> Fraction:
    """Upper bound on ``diam(J_w)`` for ``|w| = length`` given the expansion rate.

    ``J_w`` maps onto ``J_{tail(w)}`` with stretch at least ``rate``, and the
    last step lands in ``J0`` or ``J1``, hence
    ``diam(J_w) <= max(diam J0, diam J1) * rate^-(|w|-1)``.
    """
    if length == 0:
        return cert.hull.diam
    return max(cert.J0.diam, cert.J1.diam) / rate ** (length - 1)


@dataclass
class SelfTestReport:
    depth: int
    words_checked: int
    failed: list[str]
    max_diam: list[Fraction]  # index k-1 holds the max over checked words of length k
    exhaustive: bool

    @property
    def passed(self) -> int:
        return self.words_checked - len(self.failed)

    @property
    def ok(self) -> bool:
        return not self.failed and self.words_checked > 0

    def to_json(self) -> dict:
        return {
            "depth": self.depth,
            "exhaustive": self.exhaustive,
            "words_checked": self.words_checked,
            "passed": self.passed,
            "failed": len(self.failed),
            "failed_words": self.failed[:20],
            "max_diam": [fmt_rat(d) for d in self.max_diam],
        }


def conjugacy_self_test(
    f: PLMap,
    cert: HorseshoeCert,
    depth: int,
    samples: int = 500,
    exhaustive_limit: int = 4096,
    seed: int = 0,
    table: WordIntervalTable | None = None,
) -> SelfTestReport:
    """Check that the midpoint of ``J_w`` has itinerary ``w`` under ``f^r``.

    Every word of length ``depth`` is tried when there are at most
    ``exhaustive_limit`` of them; otherwise ``samples`` words are drawn with a
    seeded generator.
    """
    table = WordIntervalTable(f, cert) if table is None else table
    cells = [(0, cert.J0), (1, cert.J1)]
    if 2**depth <= exhaustive_limit:
        words = list(product((0, 1), repeat=depth))
        exhaustive = True
    else:
        rng = random.Random(seed)
        words = [tuple(rng.randrange(2) for _ in range(depth)) for _ in range(samples)]
        exhaustive = False
    failed = []
    max_diam = [Fraction(0)] * depth
    for syms in words:
        w = Word(syms)
        J = table[w]
        for k in range(1, depth + 1):
            d = table[syms[:k]].diam
            if d > max_diam[k - 1]:
                max_diam[k - 1] = d
        code = itinerary(table.h, cells, J.midpoint, depth)
        if code is None or code.symbols != syms:
            failed.append(str(w))
    return SelfTestReport(depth, len(words), failed, max_diam, exhaustive)


class EntropyBound(NamedTuple):
    r: int
    expr: str  # symbolic "log2/r"

    @property
    def display(self):
        return display_decimal(math.log(2) / self.r)


def entropy_lower_bound(cert: HorseshoeCert) -> EntropyBound:
    """Entropy of ``f`` is at least ``log 2 / r`` when ``f^r`` has a horseshoe."""
    return EntropyBound(cert.r, f"log2/{cert.r}")
