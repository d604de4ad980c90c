"""Denjoy-style blow-up of a finite invariant orbit set.

Each orbit point ``z_j`` of the base map ``g`` is replaced by an interval
``I_j`` of length ``l_j``.  The collapse ``proj`` sends ``I_j`` to ``z_j`` and
is a translation elsewhere; the lifted map ``lifted`` sends ``I_j`` affinely
onto ``I_{tau(j)}`` (orientation given by the sign of the slope of ``g`` at
``z_j``) and equals ``proj^-1 o g o proj`` off the inserted intervals.

A finite orbit set cannot be backward invariant, so points ``y`` outside the
set with ``g(y)`` inside it ("external preimages") would make the lift jump
across an inserted interval.  Around each of them the lifted map is
interpolated across a small collar; every exactness claim is made off the
collars only.

Orbit indices are 1-based so that the default lengths read ``l_j = 2^-j``.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import CollarOverlap, NonEventuallyPeriodicGuard, OrbitError, PlateauError, PreconditionError
from .intervals import Interval, IntervalSet, RatLike, as_rat, fmt_rat
from .plmap import PLMap, _eval, laps, pl_image, pl_preimage

DEFAULT_COLLAR = Fraction(1, 10**6)
ORBIT_CAP = 100_000


def tent_plateau() -> PLMap:
    """``g(x) = min(1, 3/2 - |3x - 3/2|)``: slope +-3 tent with a flat top."""
    third = Fraction(1, 3)
    return PLMap([(0, 0), (third, 1), (2 * third, 1), (1, 0)])


@dataclass(frozen=True)
class OrbitSet:
    """Finite forward-closed set of points with their transition map.

    ``points[i]``, ``succ[i]``, ``signs[i]`` and ``depths[i]`` describe the
    point with label ``i + 1``; ``succ`` holds labels.
    """

    points: tuple[Fraction, ...]
    succ: tuple[int, ...]
    signs: tuple[int, ...]
    depths: tuple[int, ...]

    def __post_init__(self):
        n = len(self.points)
        if n == 0:
            raise OrbitError("empty orbit set")
        if len(set(self.points)) != n:
            raise OrbitError("orbit points must be distinct")
        if not (len(self.succ) == len(self.signs) == len(self.depths) == n):
            raise OrbitError("orbit table columns have different lengths")
        for j in self.succ:
            if not 1 <= j <= n:
                raise OrbitError(f"transition target {j} is not a label in 1..{n}")
        if any(s not in (1, -1) for s in self.signs):
            raise OrbitError("slope signs must be +1 or -1")

    def __len__(self):
        return len(self.points)

    @property
    def labels(self) -> range:
        return range(1, len(self.points) + 1)

    def z(self, j: int) -> Fraction:
        return self.points[j - 1]

    def next(self, j: int) -> int:
        return self.succ[j - 1]

    def sign(self, j: int) -> int:
        return self.signs[j - 1]

    def label_of(self, z: RatLike) -> int:
        return self.points.index(as_rat(z)) + 1

    def is_periodic(self, j: int) -> bool:
        k = self.next(j)
        for _ in range(len(self)):
            if k == j:
                return True
            k = self.next(k)
        return False


def _lap_sign(g: PLMap, z: Fraction) -> int:
    for lap in laps(g):
        if lap.interval.lo < z < lap.interval.hi:
            if lap.sign == 0:
                raise PlateauError(f"{fmt_rat(z)} lies on a zero-slope lap {lap.interval}")
            return lap.sign
    raise PlateauError(f"{fmt_rat(z)} is a turning point or a domain endpoint")


def orbit_closure(g: PLMap, seeds: Sequence[RatLike], preimage_depth: int = 0, cap: int = ORBIT_CAP) -> OrbitSet:
    """Forward orbits of ``seeds`` plus their ``g``-preimages up to ``preimage_depth``.

    Labels follow insertion order: forward orbits in seed order, then
    preimages by increasing depth, ties broken by increasing value.
    """
    if not seeds:
        raise OrbitError("no seeds given; the orbit set would be empty")
    points: list[Fraction] = []
    depths: list[int] = []
    signs: list[int] = []
    index: dict[Fraction, int] = {}

    def add(z, d):
        signs.append(_lap_sign(g, z))
        index[z] = len(points)
        points.append(z)
        depths.append(d)

    for seed in seeds:
        z = as_rat(seed)
        steps = 0
        while z not in index:
            add(z, 0)
            z = g(z)
            steps += 1
            if steps > cap:
                raise NonEventuallyPeriodicGuard(f"forward orbit of {seed} longer than {cap}")
    frontier = list(points)
    for d in range(1, preimage_depth + 1):
        new = set()
        for z in frontier:
            for iv in pl_preimage(g, Interval.point(z)):
                if not iv.is_degenerate or iv.lo in index:
                    continue
                try:
                    _lap_sign(g, iv.lo)
                except PlateauError:
                    continue
                new.add(iv.lo)
        frontier = sorted(new)
        for y in frontier:
            add(y, d)
    succ = tuple(index[g(z)] + 1 for z in points)
    return OrbitSet(tuple(points), succ, tuple(signs), tuple(depths))


@dataclass(frozen=True)
class BlowupModel:
    base: PLMap
    orbit: OrbitSet
    lengths: tuple[Fraction, ...]
    inserted: tuple[Interval, ...]
    proj: PLMap
    lifted: PLMap
    collars: IntervalSet
    collar_width: Fraction
    collar_bound: Fraction
    external: tuple[Fraction, ...] = field(default=())

    @property
    def domain(self) -> Interval:
        return self.lifted.domain

    def interval(self, j: int) -> Interval:
        return self.inserted[j - 1]

    def length(self, j: int) -> Fraction:
        return self.lengths[j - 1]

    def in_collar(self, x: Fraction) -> bool:
        items = self.collars.items
        i = bisect_left([c.hi for c in items], x)
        return i < len(items) and items[i].lo <= x

    def to_json(self) -> dict:
        o = self.orbit
        return {
            "base": {"breakpoints": [[fmt_rat(x), fmt_rat(y)] for x, y in self.base.breakpoints]},
            "collar_width": fmt_rat(self.collar_width),
            "orbit": [
                {
                    "index": j,
                    "z": fmt_rat(o.z(j)),
                    "next": o.next(j),
                    "sign": "+" if o.sign(j) > 0 else "-",
                    "depth": o.depths[j - 1],
                    "length": fmt_rat(self.length(j)),
                    "interval": self.interval(j).to_json(),
                }
                for j in o.labels
            ],
            "collars": self.collars.to_json(),
            "collar_bound": fmt_rat(self.collar_bound),
            "lifted": {"breakpoints": [[fmt_rat(x), fmt_rat(y)] for x, y in self.lifted.breakpoints]},
        }


def default_lengths(n: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(1, 2**j) for j in range(1, n + 1))


def build_blowup(
    g: PLMap,
    orbit: OrbitSet,
    lengths: Sequence[RatLike] | None = None,
    collar_width: RatLike = DEFAULT_COLLAR,
) -> BlowupModel:
    n = len(orbit)
    lengths = default_lengths(n) if lengths is None else tuple(as_rat(v) for v in lengths)
    w = as_rat(collar_width)
    if len(lengths) != n or any(v <= 0 for v in lengths):
        raise ValueError("need one positive length per orbit point")
    if w <= 0:
        raise ValueError("collar width must be positive")
    D = set(orbit.points)
    for j in orbit.labels:
        z = orbit.z(j)
        if z not in g.domain or g(z) != orbit.z(orbit.next(j)):
            raise OrbitError(f"g({fmt_rat(z)}) is not z_{orbit.next(j)}")
        if _lap_sign(g, z) != orbit.sign(j):
            raise OrbitError(f"slope sign recorded for z_{j} disagrees with g")

    lo, hi = g.domain.lo, g.domain.hi
    order = sorted(orbit.labels, key=orbit.z)
    sorted_z = [orbit.z(j) for j in order]
    cum = [Fraction(0)]
    for j in order:
        cum.append(cum[-1] + lengths[j - 1])
    total = cum[-1]

    def lift(y: Fraction) -> Fraction:
        # only meaningful off D
        return y + cum[bisect_left(sorted_z, y)]

    inserted = [None] * n
    for k, j in enumerate(order):
        a = orbit.z(j) + cum[k]
        inserted[j - 1] = Interval(a, a + lengths[j - 1])

    proj_pts = [(lo, lo)]
    for j in order:
        I = inserted[j - 1]
        proj_pts += [(I.lo, orbit.z(j)), (I.hi, orbit.z(j))]
    proj_pts.append((hi + total, hi))
    proj = PLMap(proj_pts)

    external = set()
    for z in D:
        for iv in pl_preimage(g, Interval.point(z)):
            if not iv.is_degenerate:
                raise PlateauError(f"the flat piece {iv} is mapped onto orbit point {fmt_rat(z)}")
            if iv.lo not in D:
                external.add(iv.lo)
    external = sorted(external)

    fixed: dict[Fraction, Fraction] = {}
    for j in orbit.labels:
        I, T = inserted[j - 1], inserted[orbit.next(j) - 1]
        if orbit.sign(j) > 0:
            fixed[I.lo], fixed[I.hi] = T.lo, T.hi
        else:
            fixed[I.lo], fixed[I.hi] = T.hi, T.lo
    for b in (lo, hi, *g.xs):
        if b not in D and b not in external:
            fixed[lift(b)] = lift(g(b))
    hard = sorted(fixed)

    collars = []
    for y in external:
        c = lift(y)
        C = Interval(c - w, c + w)
        i = bisect_left(hard, c)
        if not (0 < i < len(hard) and hard[i - 1] < C.lo and C.hi < hard[i]):
            raise CollarOverlap(f"collar {C} around the lift of {fmt_rat(y)} reaches a breakpoint or inserted interval")
        if collars and not collars[-1].hi < C.lo:
            raise CollarOverlap(f"collars {collars[-1]} and {C} overlap")
        collars.append(C)

    bound = Fraction(0)
    for C in collars:
        ga, gb = g(proj(C.lo)), g(proj(C.hi))
        if ga in D or gb in D:
            raise CollarOverlap(f"collar {C} ends on a blown-up point")
        fixed[C.lo], fixed[C.hi] = lift(ga), lift(gb)
        bound = max(bound, abs(gb - ga))

    lifted = PLMap(sorted(fixed.items()))
    return BlowupModel(
        base=g,
        orbit=orbit,
        lengths=lengths,
        inserted=tuple(inserted),
        proj=proj,
        lifted=lifted,
        collars=IntervalSet(tuple(collars)),
        collar_width=w,
        collar_bound=bound,
        external=tuple(external),
    )


def sample_points(domain: Interval, n: int) -> list[Fraction]:
    """``n`` deterministic midpoints of an equal subdivision of ``domain``."""
    return [domain.lo + domain.diam * Fraction(2 * i + 1, 2 * n) for i in range(n)]


@dataclass
class SemiconjugacyReport:
    evaluations: int
    off_collar: int
    off_collar_max: Fraction
    in_collar: int
    in_collar_max: Fraction
    collar_bound: Fraction
    collars: int

    @property
    def ok(self) -> bool:
        return self.off_collar_max == 0 and self.in_collar_max <= self.collar_bound

    def to_json(self) -> dict:
        return {
            "evaluations": self.evaluations,
            "off_collar": {"points": self.off_collar, "max_residual": fmt_rat(self.off_collar_max)},
            "in_collar": {
                "points": self.in_collar,
                "max_residual": fmt_rat(self.in_collar_max),
                "bound": fmt_rat(self.collar_bound),
            },
            "collars": self.collars,
            "note": "exactness is claimed off collars only" if self.collars else "model has no collars",
            "ok": self.ok,
        }


def semiconjugacy_check(model: BlowupModel, samples: int = 1000, horizon: int = 1) -> SemiconjugacyReport:
    """Residuals ``|proj(f(x)) - g(proj(x))|`` at samples, breakpoints and their orbits.

    Each starting point is followed for ``horizon`` iterates of the lifted map
    and the one-step residual is evaluated at every visited point.
    """
    f, p, g = model.lifted, model.proj, model.base
    starts = set(sample_points(model.domain, samples))
    starts.update(f.xs)
    starts.update(p.xs)
    for C in model.collars:
        starts.update((C.lo, C.midpoint, C.hi))
    evals = off = on = 0
    off_max = on_max = Fraction(0)
    for x in sorted(starts):
        for _ in range(max(horizon, 1)):
            res = abs(p(f(x)) - g(p(x)))
            evals += 1
            if model.in_collar(x):
                on += 1
                on_max = max(on_max, res)
            else:
                off += 1
                off_max = max(off_max, res)
            x = _eval(f.xs, f.ys, x)
    return SemiconjugacyReport(evals, off, off_max, on, on_max, model.collar_bound, len(model.collars))


@dataclass
class IntervalOrbitReport:
    j: int
    rows: list[dict]

    @property
    def ok(self) -> bool:
        return all(r["image_exact"] and r["gap_matches_length"] and (r["periodic"] or r["disjoint"]) for r in self.rows)

    def to_json(self) -> dict:
        rows = [
            {k: (fmt_rat(v) if isinstance(v, Fraction) else v) for k, v in r.items()}
            for r in self.rows
        ]
        return {"index": self.j, "rows": rows, "ok": self.ok}


def interval_orbit_check(model: BlowupModel, j: int, horizon: int) -> IntervalOrbitReport:
    """Follow ``I_j`` for ``horizon`` steps: images must be exactly ``I_{tau^n(j)}``."""
    f = model.lifted
    start = model.interval(j)
    cur, idx = start, j
    a, b = start.lo, start.hi
    rows = []
    for n in range(1, horizon + 1):
        cur = pl_image(f, cur)
        idx = model.orbit.next(idx)
        a, b = f(a), f(b)
        periodic = idx == j
        rows.append(
            {
                "n": n,
                "index": idx,
                "length": model.length(idx),
                "gap": abs(a - b),
                "image_exact": cur == model.interval(idx),
                "gap_matches_length": abs(a - b) == model.length(idx),
                "periodic": periodic,
                "disjoint": None if periodic else not cur.interiors_meet(start),
            }
        )
    return IntervalOrbitReport(j, rows)


@dataclass
class ObstructionReport:
    j: int
    endpoints: tuple[Fraction, Fraction]
    trail: list[tuple[int, int, Fraction]]  # (n, index, |f^n(a) - f^n(b)|)
    min_gap: Fraction
    ideal_infimum: Fraction = Fraction(0)

    @property
    def never_merge(self) -> bool:
        return self.min_gap > 0

    def to_json(self) -> dict:
        return {
            "index": self.j,
            "a": fmt_rat(self.endpoints[0]),
            "b": fmt_rat(self.endpoints[1]),
            "trail": [{"n": n, "index": k, "gap": fmt_rat(d)} for n, k, d in self.trail],
            "min_gap": fmt_rat(self.min_gap),
            "ideal_infimum": fmt_rat(self.ideal_infimum),
            "never_merge": self.never_merge,
        }


def obstruction_report(model: BlowupModel, j: int, horizon: int) -> ObstructionReport:
    """Finite-horizon view of why the endpoints of ``I_j`` cannot form an asymptotic pair.

    Along the trail the gap ``|f^n(a) - f^n(b)|`` is the length of the visited
    inserted interval, so it never reaches 0, while the lengths ``2^-j`` of an
    infinite non-returning trail would have infimum 0.
    """
    if model.orbit.is_periodic(j):
        raise PreconditionError(f"z_{j} is periodic under the transition map; its gaps do not decay")
    f = model.lifted
    a, b = model.interval(j).lo, model.interval(j).hi
    pa, pb = a, b
    idx = j
    trail = []
    for n in range(1, horizon + 1):
        pa, pb = f(pa), f(pb)
        idx = model.orbit.next(idx)
        trail.append((n, idx, abs(pa - pb)))
    min_gap = min([b - a] + [d for _, _, d in trail])
    return ObstructionReport(j, (a, b), trail, min_gap)
