from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hfkit import (
    CollarOverlap,
    Interval,
    NonEventuallyPeriodicGuard,
    OrbitError,
    OrbitSet,
    PlateauError,
    PreconditionError,
    build_blowup,
    interval_orbit_check,
    obstruction_report,
    orbit_closure,
    pl_eval,
    pl_image,
    semiconjugacy_check,
)
from hfkit.denjoy import sample_points


@pytest.fixture
def period2(g):
    return build_blowup(g, orbit_closure(g, ["3/10"]), [F(1, 2), F(1, 4)], F(1, 1000))


@pytest.fixture
def depth3(g):
    return build_blowup(g, orbit_closure(g, ["3/10"], 3))


def test_tent_plateau(g):
    assert g.breakpoints == [(0, 0), (F(1, 3), 1), (F(2, 3), 1), (1, 0)]
    assert [g(0), g(1), g(F(1, 2))] == [0, 0, 1]


class TestOrbitClosure:
    def test_period_two(self, g):
        o = orbit_closure(g, ["3/10"])
        assert o.points == (F(3, 10), F(9, 10))
        assert o.succ == (2, 1) and o.signs == (1, -1)

    def test_depth_one(self, g):
        o = orbit_closure(g, ["3/10"], 1)
        assert o.points == (F(3, 10), F(9, 10), F(1, 10), F(7, 10))
        assert o.succ == (2, 1, 1, 2) and o.signs == (1, -1, 1, -1)
        assert o.depths == (0, 0, 1, 1)

    def test_fixed_point(self, g):
        o = orbit_closure(g, ["3/4"])
        assert o.points == (F(3, 4),) and o.succ == (1,) and o.signs == (-1,)

    def test_forward_closed_and_exact(self, g):
        o = orbit_closure(g, ["3/10", "3/4"], 4)
        for j in o.labels:
            assert g(o.z(j)) == o.z(o.next(j))
            assert F(0) < o.z(j) < F(1, 3) or F(2, 3) < o.z(j) < F(1)

    def test_errors(self, g):
        with pytest.raises(PlateauError):
            orbit_closure(g, ["1/2"])
        with pytest.raises(PlateauError):
            orbit_closure(g, ["2/9"])  # lands on the turning point 2/3
        with pytest.raises(OrbitError):
            orbit_closure(g, [])
        with pytest.raises(NonEventuallyPeriodicGuard):
            orbit_closure(g, ["1/10"], cap=2)


class TestBuild:
    def test_period_two_geometry(self, period2):
        m = period2
        assert m.domain == Interval(0, F(7, 4))
        I1, I2 = m.interval(1), m.interval(2)
        assert I1.diam == F(1, 2) and I2.diam == F(1, 4)
        assert pl_image(m.lifted, I1) == I2 and pl_image(m.lifted, I2) == I1
        # slope +1/2 on I1, -2 on I2
        assert m.lifted(I1.lo) == I2.lo and m.lifted(I1.hi) == I2.hi
        assert m.lifted(I2.lo) == I1.hi and m.lifted(I2.hi) == I1.lo
        assert m.proj(I1.lo) == m.proj(I1.hi) == F(3, 10)

    def test_residual_at_lift_of_one_fifth(self, period2):
        x = F(1, 5)  # below the first inserted interval, so the lift is the identity
        assert period2.proj(x) == F(1, 5)
        assert period2.proj(period2.lifted(x)) == period2.base(F(1, 5)) == F(3, 5)

    def test_total_length(self, depth3):
        total = sum(depth3.lengths, F(0))
        assert sum((I.diam for I in depth3.inserted), F(0)) == total
        assert depth3.domain.diam == 1 + total

    def test_projection_monotone_and_collapsing(self, depth3):
        p = depth3.proj
        xs = sorted(set(sample_points(depth3.domain, 400)) | set(p.xs))
        vals = [p(x) for x in xs]
        assert all(a <= b for a, b in zip(vals, vals[1:]))
        for a, b, x, y in zip(vals, vals[1:], xs, xs[1:]):
            if a == b:
                assert any(x in I and y in I for I in depth3.inserted)

    def test_orientation(self, depth3):
        f = depth3.lifted
        for j in depth3.orbit.labels:
            I = depth3.interval(j)
            T = depth3.interval(depth3.orbit.next(j))
            expected = (T.lo, T.hi) if depth3.orbit.sign(j) > 0 else (T.hi, T.lo)
            assert (f(I.lo), f(I.hi)) == expected
            slope = (f(I.hi) - f(I.lo)) / I.diam
            assert slope == depth3.orbit.sign(j) * T.diam / I.diam

    def test_collar_overlap(self, g):
        with pytest.raises(CollarOverlap):
            build_blowup(g, orbit_closure(g, ["3/10"], 2), collar_width=F(1, 50))

    def test_bad_orbit_table(self, g):
        bad = OrbitSet((F(3, 10), F(9, 10)), (1, 2), (1, -1), (0, 0))
        with pytest.raises(OrbitError):
            build_blowup(g, bad)

    @settings(max_examples=25, deadline=None)
    @given(st.sampled_from(["3/10", "3/4", "1/10", "9/13", "3/28"]), st.integers(0, 2))
    def test_off_collar_exact(self, seed, depth):
        from hfkit import tent_plateau

        g = tent_plateau()
        m = build_blowup(g, orbit_closure(g, [seed], depth))
        rep = semiconjugacy_check(m, 200)
        assert rep.off_collar_max == 0 and rep.ok


class TestChecks:
    def test_semiconjugacy(self, period2):
        rep = semiconjugacy_check(period2, 1000)
        assert rep.ok and rep.off_collar_max == 0 and rep.off_collar >= 1000

    def test_fixed_point_model_has_collars(self, g):
        m = build_blowup(g, orbit_closure(g, ["3/4"]))
        assert m.external == (F(1, 4),)
        rep = semiconjugacy_check(m, 100)
        assert rep.collars == 1 and rep.ok
        assert rep.to_json()["note"] == "exactness is claimed off collars only"

    def test_inside_inserted_interval(self, depth3):
        f, p, g = depth3.lifted, depth3.proj, depth3.base
        for I in depth3.inserted:
            for x in (I.lo, I.midpoint, I.hi):
                assert p(f(x)) == g(p(x))

    def test_collar_residual_bounded(self, depth3):
        f, p, g = depth3.lifted, depth3.proj, depth3.base
        for C in depth3.collars:
            for t in range(11):
                x = C.lo + C.diam * F(t, 10)
                assert abs(p(f(x)) - g(p(x))) <= depth3.collar_bound

    def test_interval_orbit_period_two(self, period2):
        rep = interval_orbit_check(period2, 1, 4)
        assert [r["gap"] for r in rep.rows] == [F(1, 4), F(1, 2), F(1, 4), F(1, 2)]
        assert [r["periodic"] for r in rep.rows] == [False, True, False, True]
        assert rep.ok

    def test_interval_orbit_preperiodic(self, g):
        o = orbit_closure(g, ["3/10"], 1)
        m = build_blowup(g, o)
        j = o.label_of(F(1, 10))
        rep = interval_orbit_check(m, j, 3)
        assert [o.z(r["index"]) for r in rep.rows] == [F(3, 10), F(9, 10), F(3, 10)]
        assert all(r["disjoint"] for r in rep.rows) and rep.ok

    def test_interval_orbit_fixed(self, g):
        m = build_blowup(g, orbit_closure(g, ["3/4"]))
        rep = interval_orbit_check(m, 1, 5)
        assert all(r["periodic"] and r["gap"] == F(1, 2) for r in rep.rows)

    def test_obstruction(self, depth3):
        j = len(depth3.orbit)
        rep = obstruction_report(depth3, j, 10)
        assert rep.min_gap > 0 and rep.never_merge
        assert rep.min_gap == min(depth3.length(k) for k in [j] + [k for _, k, _ in rep.trail])
        assert rep.ideal_infimum == 0
        depths = [depth3.orbit.depths[k - 1] for _, k, _ in rep.trail[:3]]
        assert depths == [2, 1, 0]

    def test_obstruction_zero_horizon(self, depth3):
        rep = obstruction_report(depth3, 5, 0)
        assert rep.trail == [] and rep.min_gap == depth3.length(5)

    def test_obstruction_periodic(self, period2):
        with pytest.raises(PreconditionError):
            obstruction_report(period2, 1, 4)
