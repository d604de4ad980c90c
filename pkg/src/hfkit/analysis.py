"""Swap decompositions, interval cycles and the map -> horseshoe pipeline."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .horseshoe import (
    WordIntervalTable,
    conjugacy_self_test,
    entropy_lower_bound,
    find_horseshoe,
    singleton_rate,
)
from .intervals import Interval, fmt_rat
from .plmap import PLMap, pl_image, pl_power, pl_restrict


def swap_map() -> PLMap:
    """Test fixture: swaps ``[0,1/2]`` and ``[1/2,1]``; its square is a full tent on each half."""
    h = Fraction(1, 2)
    return PLMap([(0, h), (Fraction(1, 4), 1), (h, h), (1, 0)])


def fixed_points(f: PLMap) -> list[Fraction]:
    """Isolated fixed points, plus the endpoints of pieces lying on the diagonal."""
    out = set()
    for x0, x1, y0, y1 in f.pieces():
        d0, d1 = y0 - x0, y1 - x1
        if d0 == 0 and d1 == 0:
            out.update((x0, x1))
        elif d0 == 0 or d1 == 0:
            out.add(x0 if d0 == 0 else x1)
        elif (d0 < 0) != (d1 < 0):
            out.add(x0 + d0 * (x1 - x0) / (d0 - d1))
    return sorted(out)


@dataclass(frozen=True)
class SwapDecomposition:
    c: Fraction
    left: Interval
    right: Interval
    left_image: Interval
    right_image: Interval

    def to_json(self) -> dict:
        return {
            "c": fmt_rat(self.c),
            "left": self.left.to_json(),
            "right": self.right.to_json(),
            "left_image": self.left_image.to_json(),
            "right_image": self.right_image.to_json(),
        }


def mixing_decomposition(f: PLMap) -> SwapDecomposition | None:
    """First interior fixed point ``c`` such that ``f`` swaps ``[lo, c]`` and ``[c, hi]``."""
    D = f.domain
    for c in fixed_points(f):
        if not D.lo < c < D.hi:
            continue
        left, right = Interval(D.lo, c), Interval(c, D.hi)
        li, ri = pl_image(f, left), pl_image(f, right)
        if li in right and ri in left:
            return SwapDecomposition(c, left, right, li, ri)
    return None


def cycle_verify(f: PLMap, cycle: Sequence[Interval]) -> bool:
    """True iff ``f(L_i) = L_{i+1}`` exactly, indices mod the cycle length."""
    if not cycle:
        return False
    p = len(cycle)
    try:
        return all(pl_image(f, cycle[i]) == cycle[(i + 1) % p] for i in range(p))
    except ValueError:
        return False


def pipeline(f: PLMap, r_max: int, depth: int = 8) -> dict:
    """Swap decomposition, then a horseshoe for ``f`` (or ``f^2`` on the left half).

    The verdict is ``"certificate found"`` or ``"inconclusive"``; transitivity
    itself is never decided.
    """
    report: dict = {"decomposition": None, "base_power": 1, "search_domain": f.domain.to_json()}
    target = f
    dec = mixing_decomposition(f)
    if dec is not None:
        report["decomposition"] = dec.to_json()
        report["base_power"] = 2
        target = pl_restrict(pl_power(f, 2), dec.left)
        report["search_domain"] = dec.left.to_json()
    report["max_power"] = r_max
    cert = find_horseshoe(target, r_max)
    if cert is None:
        report.update(certificate=None, rate=None, self_test=None, entropy_bound=None, status="inconclusive")
        return report
    rate = singleton_rate(target, cert)
    test = conjugacy_self_test(target, cert, depth, table=WordIntervalTable(target, cert))
    bound = entropy_lower_bound(cert)
    k = report["base_power"] * cert.r
    report.update(
        certificate=cert.to_json(),
        rate=None if rate is None else fmt_rat(rate),
        rate_status="expanding" if rate is not None else "unverified",
        self_test=test.to_json(),
        entropy_bound={
            "r": cert.r,
            "relative_to_search_map": bound.expr,
            "relative_to_input_map": f"log2/{k}",
            "display_only": str(bound.display),
        },
        status="certificate found" if test.ok else "self-test failed",
    )
    return report
