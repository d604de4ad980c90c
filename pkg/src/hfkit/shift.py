"""One-sided symbolic sequences and shift-space decision procedures.

Points of the full shift that a computer can hold exactly are the eventually
periodic ones; :class:`EPSeq` stores them in a canonical form (primitive
period, shortest preperiod) so that ``==`` is equality of sequences.
"""

from __future__ import annotations

import string
from collections import deque
from dataclasses import dataclass
from math import gcd
from typing import Iterable, NamedTuple, Sequence

from .errors import AlphabetMismatch, DomainError, ParseError
from .intervals import Interval, RatLike, as_rat
from .plmap import PLMap, _eval

_DIGITS = string.digits + string.ascii_lowercase


def _sym_char(s: int) -> str:
    return _DIGITS[s]


@dataclass(frozen=True)
class Word:
    """Finite word over the alphabet ``{0, ..., m-1}``."""

    symbols: tuple[int, ...]
    m: int = 2

    def __post_init__(self):
        syms = tuple(int(s) for s in self.symbols)
        if self.m < 2:
            raise ValueError("alphabet size must be at least 2")
        for s in syms:
            if not 0 <= s < self.m:
                raise AlphabetMismatch(f"symbol {s} not in alphabet of size {self.m}")
        object.__setattr__(self, "symbols", syms)

    @classmethod
    def parse(cls, text: str, m: int = 2) -> Word:
        if m > len(_DIGITS):
            raise ValueError("text notation supports alphabets up to 36 symbols")
        syms = []
        for ch in text.strip():
            v = _DIGITS.find(ch.lower())
            if v < 0 or v >= m:
                raise ParseError(f"invalid symbol {ch!r} for alphabet of size {m}")
            syms.append(v)
        return cls(tuple(syms), m)

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return Word(self.symbols[i], self.m)
        return self.symbols[i]

    def __add__(self, other: Word) -> Word:
        if other.m != self.m:
            raise AlphabetMismatch("cannot concatenate words over different alphabets")
        return Word(self.symbols + other.symbols, self.m)

    def __str__(self):
        return "".join(map(_sym_char, self.symbols))


def as_word(w, m: int = 2) -> Word:
    if isinstance(w, Word):
        return w
    if isinstance(w, str):
        return Word.parse(w, m)
    return Word(tuple(w), m)


def _primitive_root(p: tuple[int, ...]) -> tuple[int, ...]:
    n = len(p)
    for d in range(1, n + 1):
        if n % d == 0 and p[:d] * (n // d) == p:
            return p[:d]
    return p


@dataclass(frozen=True)
class EPSeq:
    """Eventually periodic sequence ``u v v v ...`` over ``{0, ..., m-1}``.

    The constructor canonicalizes, e.g. ``EPSeq((1, 1), (0, 1))`` is stored
    as preperiod ``1`` and period ``10``.
    """

    preperiod: tuple[int, ...]
    period: tuple[int, ...]
    m: int = 2

    def __post_init__(self):
        pre = tuple(int(s) for s in self.preperiod)
        per = tuple(int(s) for s in self.period)
        if not per:
            raise ValueError("period must be nonempty")
        if self.m < 2:
            raise ValueError("alphabet size must be at least 2")
        if any(not 0 <= s < self.m for s in pre + per):
            raise AlphabetMismatch(f"symbol outside alphabet of size {self.m}")
        per = _primitive_root(per)
        while pre and pre[-1] == per[-1]:
            per = per[-1:] + per[:-1]
            pre = pre[:-1]
        object.__setattr__(self, "preperiod", pre)
        object.__setattr__(self, "period", per)

    @classmethod
    def parse(cls, text: str, m: int = 2) -> EPSeq:
        """Read the ``u(v)`` notation, e.g. ``"01(1)"``."""
        text = text.strip()
        if text.count("(") != 1 or not text.endswith(")") or text.count(")") != 1:
            raise ParseError(f"expected notation u(v), got {text!r}")
        head, tail = text[:-1].split("(")
        pre, per = Word.parse(head, m), Word.parse(tail, m)
        if not per.symbols:
            raise ParseError(f"empty period in {text!r}")
        return cls(pre.symbols, per.symbols, m)

    def __getitem__(self, i: int) -> int:
        n = len(self.preperiod)
        if i < n:
            return self.preperiod[i]
        return self.period[(i - n) % len(self.period)]

    def prefix(self, n: int) -> tuple[int, ...]:
        return tuple(self[i] for i in range(n))

    def __str__(self):
        return "".join(map(_sym_char, self.preperiod)) + "(" + "".join(map(_sym_char, self.period)) + ")"


def shift(s: EPSeq, n: int = 1) -> EPSeq:
    """Drop the first ``n`` symbols."""
    pre, per = s.preperiod, s.period
    if n <= len(pre):
        return EPSeq(pre[n:], per, s.m)
    k = (n - len(pre)) % len(per)
    return EPSeq((), per[k:] + per[:k], s.m)


def asymptotic_resolve(p: EPSeq, q: EPSeq) -> int | None:
    """Least ``n`` with ``shift(p, n) == shift(q, n)``, or ``None`` if never."""
    if p.m != q.m:
        raise AlphabetMismatch(f"alphabets differ: {p.m} vs {q.m}")
    # canonical periods: tails can merge only if the periods are conjugate words
    P = len(p.period)
    if len(q.period) != P or not any(p.period[i:] + p.period[:i] == q.period for i in range(P)):
        return None
    n0 = max(len(p.preperiod), len(q.preperiod))
    end = n0 + P
    # from n0 on both are periodic with the same period length, so one window decides
    last = -1
    for i in range(end):
        if p[i] != q[i]:
            if i >= n0:
                return None
            last = i
    return last + 1


def power_block_encode(s: EPSeq, k: int) -> EPSeq:
    """Recode ``(Sigma_m, shift^k)`` as ``(Sigma_{m^k}, shift)`` with big-endian blocks."""
    if k < 1:
        raise ValueError("block length must be positive")
    m = s.m

    def block(i):
        v = 0
        for j in range(k):
            v = v * m + s[i * k + j]
        return v

    n_pre = -(-len(s.preperiod) // k)
    P = len(s.period)
    n_per = P // gcd(P, k)
    pre = tuple(block(i) for i in range(n_pre))
    per = tuple(block(n_pre + i) for i in range(n_per))
    return EPSeq(pre, per, m**k)


@dataclass(frozen=True)
class LabeledGraph:
    """Labeled graph presentation; vertices are ``0..vertices-1``."""

    vertices: int
    edges: tuple[tuple[int, int, str], ...]

    def __post_init__(self):
        edges = tuple((int(a), int(b), str(lab)) for a, b, lab in self.edges)
        if self.vertices < 1:
            raise ValueError("graph needs at least one vertex")
        out = [0] * self.vertices
        for a, b, _ in edges:
            if not (0 <= a < self.vertices and 0 <= b < self.vertices):
                raise ValueError(f"edge {a}->{b} references a missing vertex")
            out[a] += 1
        missing = [v for v, d in enumerate(out) if d == 0]
        if missing:
            raise ValueError(f"vertices {missing} have no outgoing edge")
        object.__setattr__(self, "edges", edges)

    def successors(self) -> list[set[int]]:
        succ = [set() for _ in range(self.vertices)]
        for a, b, _ in self.edges:
            succ[a].add(b)
        return succ


class Primitivity(NamedTuple):
    primitive: bool
    k: int | None
    reason: str  # "positive power", "reducible" or "period d"


def _reachable(succ, start):
    seen = {start}
    todo = [start]
    while todo:
        v = todo.pop()
        for w in succ[v]:
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return seen


def graph_is_primitive(G: LabeledGraph) -> Primitivity:
    """Primitivity of the 0/1 adjacency pattern of ``G``.

    Decided structurally (strong connectivity, then the period as the gcd of
    BFS level differences along edges); when primitive, the least exponent
    with an entrywise positive power is found by boolean powering, which
    terminates by Wielandt's bound ``(n-1)^2 + 1``.
    """
    n = G.vertices
    succ = G.successors()
    everything = set(range(n))
    if _reachable(succ, 0) != everything:
        return Primitivity(False, None, "reducible")
    pred = [set() for _ in range(n)]
    for a, nbrs in enumerate(succ):
        for b in nbrs:
            pred[b].add(a)
    if _reachable(pred, 0) != everything:
        return Primitivity(False, None, "reducible")

    level = {0: 0}
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for w in succ[v]:
            if w not in level:
                level[w] = level[v] + 1
                queue.append(w)
    d = 0
    for a in range(n):
        for b in succ[a]:
            d = gcd(d, level[a] + 1 - level[b])
    if d != 1:
        return Primitivity(False, None, f"period {d}")

    # rows of A^k as sets of reachable vertices
    rows = [set(s) for s in succ]
    k = 1
    while any(len(r) < n for r in rows):
        rows = [set().union(*(succ[v] for v in r)) for r in rows]
        k += 1
    return Primitivity(True, k, "positive power")


Cell = tuple[int, Interval]


def _check_cells(cells: Sequence[Cell]):
    ordered = sorted(cells, key=lambda c: c[1].lo)
    for (la, a), (lb, b) in zip(ordered, ordered[1:]):
        if a.intersects(b):
            raise ValueError(f"cells {la} {a} and {lb} {b} are not disjoint")


def itinerary(m: PLMap, cells: Iterable[Cell], x: RatLike, steps: int, alphabet: int | None = None) -> Word | None:
    """Labels of the cells visited by ``x, m(x), ..., m^(steps-1)(x)``.

    Returns ``None`` as soon as an iterate lies in no cell.
    """
    cells = list(cells)
    _check_cells(cells)
    x = as_rat(x)
    if x not in m.domain:
        raise DomainError(f"{x} is outside the domain {m.domain}")
    if alphabet is None:
        alphabet = max(2, 1 + max(lab for lab, _ in cells))
    out = []
    for j in range(steps):
        lab = next((lab for lab, iv in cells if x in iv), None)
        if lab is None:
            return None
        out.append(lab)
        if j + 1 < steps:
            x = _eval(m.xs, m.ys, x)
    return Word(tuple(out), alphabet)


def cantor_depth_check(m: PLMap, cells: Iterable[Cell], x: RatLike, steps: int) -> bool:
    """Finite-depth surrogate for membership in the invariant set of the cells."""
    return itinerary(m, cells, x, steps) is not None
