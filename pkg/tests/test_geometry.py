import math

import pytest
from hypothesis import given, strategies as st

from linegestalt.geometry import (
    Chain,
    DirectedSegment,
    ImageDomain,
    LineSegment,
    Point,
    chain_stats,
    in_search_sector,
    mutual_distance,
    position_deviation,
    reverse_links,
    sector_distance,
    tip_distance,
    turn_angle,
)

from builders import segs

coord = st.floats(-1000, 1000, allow_nan=False)
point = st.tuples(coord, coord)


def ds(x1, y1, x2, y2, id=0, forward=True):
    return DirectedSegment(LineSegment.from_coords(id, x1, y1, x2, y2), forward)


@pytest.mark.parametrize("p, q, expected", [
    ((0, 0), (3, 4), 5.0),
    ((1, 1), (1, 1), 0.0),
    ((0, 0), (1, 1), math.sqrt(2)),
])
def test_tip_distance(p, q, expected):
    assert tip_distance(p, q) == pytest.approx(expected, abs=1e-12)


@given(point, point, point)
def test_tip_distance_metric(p, q, r):
    assert tip_distance(p, q) == tip_distance(q, p)
    assert tip_distance(p, r) <= tip_distance(p, q) + tip_distance(q, r) + 1e-9


@pytest.mark.parametrize("out, expected", [
    ((5, 0, 9, 0), 0.0),
    ((5, 0, 5, 7), math.pi / 2),
    ((5, 0, 1, 0), math.pi),
])
def test_turn_angle(out, expected):
    assert turn_angle(ds(0, 0, 4, 0), ds(*out, id=1)) == pytest.approx(expected)


def test_turn_angle_translation_invariant():
    a, b = ds(0, 0, 4, 1), ds(10, 10, 12, 15, id=1)
    a2, b2 = ds(100, -3, 104, -2), ds(-50, 7, -48, 12, id=1)
    assert turn_angle(a, b) == pytest.approx(turn_angle(a2, b2))


nondegenerate = st.tuples(coord, coord, coord, coord).filter(
    lambda c: math.hypot(c[2] - c[0], c[3] - c[1]) > 1e-3)


@given(nondegenerate, nondegenerate)
def test_turn_angle_reversal_symmetry(c1, c2):
    r, s = ds(*c1), ds(*c2, id=1)
    assert turn_angle(r, s) == pytest.approx(turn_angle(s.reversed(), r.reversed()), abs=1e-12)
    assert 0.0 <= turn_angle(r, s) <= math.pi


def test_tiny_angles_snap_to_zero():
    # collinear in exact arithmetic, not in floats
    a = ds(0.1, 0.1, 0.1 + 3 * 0.7, 0.1 + 3 * 0.3)
    b = ds(0.1 + 5 * 0.7, 0.1 + 5 * 0.3, 0.1 + 9 * 0.7, 0.1 + 9 * 0.3, id=1)
    assert turn_angle(a, b) == 0.0


@pytest.mark.parametrize("s2, expected", [
    ((0, 0, 10, 0), 0.0),
    ((0, 4, 10, 4), 4.0),
    ((0, 4, 10, 6), 5.0),
])
def test_mutual_distance(s2, expected):
    assert mutual_distance(ds(0, 0, 10, 0), ds(*s2, id=1)) == pytest.approx(expected)


class TestSearchSector:
    rho, theta_s, lam = 10.0, math.radians(150), 2.0

    def test_interior(self):
        assert in_search_sector((0, 0), (1, 0), (5, 0), self.rho, self.theta_s, self.lam)

    def test_beyond_radius(self):
        assert not in_search_sector((0, 0), (1, 0), (20, 0), self.rho, self.theta_s, self.lam)

    def test_behind(self):
        assert not in_search_sector((0, 0), (1, 0), (-5, 0), self.rho, self.theta_s, self.lam)

    def test_margin_reaches_behind(self):
        # within lam of the apex counts even directly behind
        assert in_search_sector((0, 0), (1, 0), (-1.5, 0), self.rho, self.theta_s, self.lam)

    def test_margin_past_radius(self):
        assert in_search_sector((0, 0), (1, 0), (11.5, 0), self.rho, self.theta_s, self.lam)
        assert not in_search_sector((0, 0), (1, 0), (12.5, 0), self.rho, self.theta_s, self.lam)

    def test_narrow_sector_is_a_strip(self):
        theta = math.radians(3)
        assert in_search_sector((0, 0), (1, 0), (8, 1.9), 10, theta, 2.0)
        assert not in_search_sector((0, 0), (1, 0), (8, 2.6), 10, theta, 2.0)

    def test_distance_to_edge(self):
        # 45 degree half-angle sector, point below the lower edge
        d = sector_distance((0, 0), (1, 0), (3, -5), 10, math.pi / 4)
        edge = (math.cos(-math.pi / 4), math.sin(-math.pi / 4))
        perp = abs(3 * edge[1] - (-5) * edge[0])
        assert d == pytest.approx(perp)


@given(point, st.floats(0.5, 20), st.floats(0.5, 20), st.floats(0.05, 3.0), st.floats(0.05, 3.0),
       st.floats(0, 3))
def test_sector_monotone(q, rho1, rho2, th1, th2, lam):
    rho_lo, rho_hi = sorted((rho1, rho2))
    th_lo, th_hi = sorted((th1, th2))
    q = (q[0] / 50, q[1] / 50)
    if in_search_sector((0, 0), (0.6, 0.8), q, rho_lo, th_lo, lam):
        assert in_search_sector((0, 0), (0.6, 0.8), q, rho_hi, th_lo, lam)
        assert in_search_sector((0, 0), (0.6, 0.8), q, rho_lo, th_hi, lam)


def test_position_deviation():
    assert position_deviation((0, 0), (1, 0), (5, 0), 2.0) == 0.0
    assert position_deviation((0, 0), (1, 0), (0, 1.5), 2.0) == 0.0
    # 90 degrees off at distance 4, margin 2 -> 90 - 30 degrees
    assert position_deviation((0, 0), (1, 0), (0, 4), 2.0) == pytest.approx(math.radians(60))


class TestChainStats:
    def test_single(self):
        assert chain_stats([ds(0, 0, 1, 0)]) == (1, 0.0, 0.0)

    def test_collinear_pair(self):
        k, d, theta = chain_stats([ds(0, 0, 5, 0), ds(7, 0, 12, 0, id=1)])
        assert (k, d, theta) == (2, 2.0, 0.0)

    def test_right_angle(self):
        links = [ds(0, 0, 10, 0), ds(11, 0, 20, 0, id=1), ds(21, 0, 21, 10, id=2)]
        k, d, theta = chain_stats(links)
        assert k == 3
        assert d == pytest.approx(1.0)
        assert theta == pytest.approx(math.pi / 2)
        # the connecting tips are within the margin, so position adds nothing
        assert chain_stats(links, lam=2.0) == (k, d, theta)

    def test_position_raises_angle(self):
        # parallel continuation but the next tail sits 5 px off to the side
        links = [ds(0, 0, 10, 0), ds(10, 5, 20, 5, id=1)]
        assert chain_stats(links)[2] == 0.0
        _, _, theta = chain_stats(links, lam=2.0)
        assert theta == pytest.approx(math.pi / 2 - math.asin(2 / 5))

    def test_empty(self):
        with pytest.raises(ValueError):
            chain_stats([])


@given(st.lists(nondegenerate, min_size=1, max_size=6), st.sampled_from([None, 2.0]))
def test_chain_stats_reversal(coords, lam):
    links = [ds(*c, id=i) for i, c in enumerate(coords)]
    k, d, theta = chain_stats(links, lam)
    k2, d2, theta2 = chain_stats(reverse_links(links), lam)
    assert k == k2
    assert d == pytest.approx(d2, abs=1e-9)
    assert theta == pytest.approx(theta2, abs=1e-9)


def test_chain_rejects_repeats():
    s = segs((0, 0, 1, 0))[0]
    with pytest.raises(ValueError):
        Chain((DirectedSegment(s), DirectedSegment(s, False)))


def test_segment_validation():
    with pytest.raises(ValueError):
        LineSegment(0, Point(1, 1), Point(1, 1))
    with pytest.raises(ValueError):
        LineSegment(0, Point(math.nan, 1), Point(1, 1))
    with pytest.raises(ValueError):
        ImageDomain(0, 5)


def test_directed_segment_tips():
    s = ds(1, 2, 3, 4, forward=False)
    assert s.tail == (3, 4) and s.head == (1, 2)
    assert s.reversed().tail == (1, 2)
