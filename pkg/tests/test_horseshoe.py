from fractions import Fraction as F
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hfkit import (
    CertError,
    HorseshoeCert,
    Interval,
    PLMap,
    WordIntervalTable,
    conjugacy_self_test,
    entropy_lower_bound,
    find_horseshoe,
    pl_image,
    pl_power,
    pl_restrict,
    point_for_itinerary,
    pullback,
    singleton_rate,
    verify_horseshoe,
)
from hfkit.horseshoe import diameter_bound

G_CERT = HorseshoeCert(1, Interval(0, F(1, 3)), Interval(F(2, 3), 1))


@pytest.fixture
def tent_table(g):
    return WordIntervalTable(g, G_CERT)


@pytest.fixture
def T(S):
    """S^2 on [0, 1/2]: the full tent with slopes -2, +2."""
    return pl_restrict(pl_power(S, 2), Interval(0, F(1, 2)))


class TestFind:
    def test_tent(self, g):
        cert = find_horseshoe(g, 1)
        assert cert == G_CERT
        assert cert.images == (Interval(0, 1), Interval(0, 1))

    def test_affine_has_none(self, affine_map):
        assert find_horseshoe(affine_map, 6) is None

    def test_swap_map(self, S):
        cert = find_horseshoe(S, 4)
        assert cert is not None and cert.r == 4
        assert cert.hull in Interval(0, F(1, 2))
        assert verify_horseshoe(S, cert)
        assert find_horseshoe(S, 3) is None

    def test_full_tent_needs_second_power(self, T):
        # the two laps of T share their turning point, so r = 1 fails
        assert find_horseshoe(T, 1) is None
        cert = find_horseshoe(T, 2)
        assert cert == HorseshoeCert(2, Interval(0, F(1, 8)), Interval(F(3, 8), F(1, 2)))

    @settings(max_examples=60, deadline=None)
    @given(st.lists(st.integers(0, 8), min_size=3, max_size=6))
    def test_found_certs_verify(self, ys):
        xs = [F(i, len(ys) - 1) for i in range(len(ys))]
        f = PLMap(zip(xs, [F(y, 8) for y in ys]))
        cert = find_horseshoe(f, 2)
        if cert is not None:
            assert verify_horseshoe(f, cert)


class TestVerify:
    def test_examples(self, g):
        assert verify_horseshoe(g, G_CERT)
        assert not verify_horseshoe(g, HorseshoeCert(1, G_CERT.J0, G_CERT.J0))
        assert not verify_horseshoe(g, HorseshoeCert(1, Interval(0, F(1, 3)), Interval(F(1, 3), F(2, 3))))
        assert not verify_horseshoe(g, HorseshoeCert(1, Interval(0, F(1, 3)), Interval(F(1, 2), F(2, 3))))

    def test_invalid_cert_rejected_by_pullback(self, g):
        bad = HorseshoeCert(1, Interval(0, F(1, 4)), Interval(F(2, 3), 1))
        with pytest.raises(CertError):
            pullback(g, bad, "01")


class TestPullback:
    def test_examples(self, g):
        assert pullback(g, G_CERT, "01") == Interval(F(2, 9), F(1, 3))
        assert pullback(g, G_CERT, "0") == Interval(0, F(1, 3))
        assert pullback(g, G_CERT, "00") == Interval(0, F(1, 9))
        assert pullback(g, G_CERT, "11") == Interval(F(2, 3), F(7, 9))
        assert pullback(g, G_CERT, "") == Interval(0, 1)

    def test_nonmonotone_cell_rejected(self):
        # f^1 folds J0 = [0, 1/2] at 1/4; the image still covers, but there is no branch
        f = PLMap([(0, 0), (F(1, 4), 1), (F(1, 2), 0), (F(3, 4), 1), (1, 0)])
        cert = HorseshoeCert(1, Interval(0, F(1, 2)), Interval(F(3, 4), 1))
        assert verify_horseshoe(f, cert)
        with pytest.raises(CertError):
            WordIntervalTable(f, cert)

    def test_fixed_point_enclosure(self, g, tent_table):
        for k in range(1, 11):
            J = point_for_itinerary(g, G_CERT, "1" * k, tent_table)
            assert F(3, 4) in J and J.diam == F(1, 3**k)
            assert point_for_itinerary(g, G_CERT, "0" * k, tent_table) == Interval(0, F(1, 3**k))

    def test_nesting_and_image_relation(self, g, tent_table):
        for w in map("".join, product("01", repeat=7)):
            for k in range(2, 8):
                J = tent_table[w[:k]]
                assert J in tent_table[w[:k - 1]]
                assert pl_image(g, J) == tent_table[w[1:k]]

    def test_image_relation_other_cert(self, T):
        cert = find_horseshoe(T, 2)
        table = WordIntervalTable(T, cert)
        h = pl_power(T, cert.r)
        for k in range(1, 7):
            for w in product((0, 1), repeat=k):
                J = table[w]
                if k == 1:
                    assert cert.J0 in pl_image(h, J) and cert.J1 in pl_image(h, J)
                else:
                    assert pl_image(h, J) == table[w[1:]]
                    assert J in table[w[:-1]]

    def test_same_level_disjoint(self, g, tent_table):
        level = sorted((tent_table[w] for w in product((0, 1), repeat=6)), key=lambda J: J.lo)
        assert all(a.hi < b.lo for a, b in zip(level, level[1:]))


class TestRate:
    def test_tent(self, g):
        assert singleton_rate(g, G_CERT) == 3

    def test_swap_map_fourth_power(self, S):
        cert = find_horseshoe(S, 4)
        # S has slope -1 on [1/2, 1], so S^4 pieces over the cert have |slope| 2*1*2*1 = 4
        slopes = {abs(s) for s, (x0, x1, _, _) in zip(pl_power(S, 4).slopes(), pl_power(S, 4).pieces())
                  if Interval(x0, x1).interiors_meet(cert.hull)}
        assert slopes == {4}
        assert singleton_rate(S, cert) == 4

    def test_unit_slope_gives_none(self):
        # right cell contains a piece of slope -1; both cells still cover [0, 1]
        f = PLMap([(0, 0), (F(1, 3), 1), (F(1, 2), 1), (F(3, 4), F(3, 4)), (1, 0)])
        cert = HorseshoeCert(1, Interval(0, F(1, 3)), Interval(F(1, 2), 1))
        assert verify_horseshoe(f, cert)
        assert singleton_rate(f, cert) is None

    def test_diameter_bound(self, g, T, tent_table):
        for f, cert, table in [(g, G_CERT, tent_table), (T, find_horseshoe(T, 2), None)]:
            table = table or WordIntervalTable(f, cert)
            lam = singleton_rate(f, cert)
            for w in product((0, 1), repeat=6):
                for k in range(7):
                    assert table[w[:k]].diam <= diameter_bound(cert, lam, k)


class TestSelfTest:
    def test_tent_depth_8(self, g, tent_table):
        rep = conjugacy_self_test(g, G_CERT, 8, table=tent_table)
        assert rep.ok and rep.words_checked == 256 and rep.exhaustive
        assert rep.max_diam == [F(1, 3**k) for k in range(1, 9)]

    def test_depth_one(self, g):
        rep = conjugacy_self_test(g, G_CERT, 1)
        assert rep.ok and rep.words_checked == 2

    def test_sampled_depth_12(self, g):
        rep = conjugacy_self_test(g, G_CERT, 12, samples=500, exhaustive_limit=1000)
        assert rep.ok and rep.words_checked == 500 and not rep.exhaustive

    def test_other_certs(self, S, T):
        for f, r_max in [(S, 4), (T, 2)]:
            cert = find_horseshoe(f, r_max)
            assert singleton_rate(f, cert) > 1
            assert conjugacy_self_test(f, cert, 8).ok


def test_entropy_bound():
    assert entropy_lower_bound(G_CERT) == (1, "log2/1")
    assert entropy_lower_bound(HorseshoeCert(4, G_CERT.J0, G_CERT.J1)).expr == "log2/4"
    assert str(entropy_lower_bound(HorseshoeCert(2, G_CERT.J0, G_CERT.J1)).display) == "0.346574"
