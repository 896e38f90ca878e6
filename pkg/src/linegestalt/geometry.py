"""Geometric primitives on line segments and chains of segments.

All angles are in radians. Everything here is a pure function over immutable
values.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Sequence

# angles below this are rounding noise from float coordinates
ANGLE_EPS = 1e-12


class Point(NamedTuple):
    x: float
    y: float


@dataclass(frozen=True)
class LineSegment:
    """A segment between tips ``a`` and ``b`` with a stable integer id.

    ``extra`` carries trailing input fields (LSD width, precision, score)
    through unchanged; it takes no part in detection or equality.
    """

    id: int
    a: Point
    b: Point
    extra: tuple = field(default=(), compare=False)

    def __post_init__(self):
        for v in (*self.a, *self.b):
            if not math.isfinite(v):
                raise ValueError(f"segment {self.id}: non-finite coordinate")
        if self.a == self.b:
            raise ValueError(f"segment {self.id}: zero-length segment")

    @classmethod
    def from_coords(cls, id, x1, y1, x2, y2, extra=()):
        return cls(int(id), Point(float(x1), float(y1)), Point(float(x2), float(y2)), tuple(extra))

    @property
    def length(self):
        return tip_distance(self.a, self.b)


@dataclass(frozen=True)
class DirectedSegment:
    """A segment together with the direction in which a chain traverses it."""

    segment: LineSegment
    forward: bool = True

    @property
    def tail(self) -> Point:
        return self.segment.a if self.forward else self.segment.b

    @property
    def head(self) -> Point:
        return self.segment.b if self.forward else self.segment.a

    @property
    def id(self) -> int:
        return self.segment.id

    def reversed(self) -> "DirectedSegment":
        return DirectedSegment(self.segment, not self.forward)

    def direction(self):
        """Unit vector from tail to head."""
        return unit_vector(self.tail, self.head)


@dataclass(frozen=True)
class ImageDomain:
    """Image size; ``m`` is the width and ``n`` the height, in pixels."""

    m: int
    n: int

    def __post_init__(self):
        if int(self.m) != self.m or int(self.n) != self.n:
            raise ValueError("image dimensions must be integers")
        if self.m < 1 or self.n < 1:
            raise ValueError(f"image dimensions must be >= 1, got {self.m}x{self.n}")

    @property
    def area(self) -> int:
        return self.m * self.n


def tip_distance(p, q) -> float:
    return math.hypot(q[0] - p[0], q[1] - p[1])


def unit_vector(p, q):
    length = tip_distance(p, q)
    return ((q[0] - p[0]) / length, (q[1] - p[1]) / length)


def _angle_between(u, v) -> float:
    # atan2 of cross and dot stays accurate near 0 and pi, unlike acos
    cross = u[0] * v[1] - u[1] * v[0]
    dot = u[0] * v[0] + u[1] * v[1]
    angle = abs(math.atan2(cross, dot))
    return 0.0 if angle < ANGLE_EPS else angle


def turn_angle(incoming: DirectedSegment, outgoing: DirectedSegment) -> float:
    """Deviation of ``outgoing`` from straight continuation of ``incoming``.

    0 means the two directions agree, pi means a full reversal.
    """
    return _angle_between(incoming.direction(), outgoing.direction())


def mutual_distance(s1: DirectedSegment, s2: DirectedSegment) -> float:
    """Mean of the tail-to-tail and head-to-head distances."""
    return 0.5 * (tip_distance(s1.tail, s2.tail) + tip_distance(s1.head, s2.head))


def _point_segment_distance(q, p0, p1) -> float:
    dx, dy = p1[0] - p0[0], p1[1] - p0[1]
    denom = dx * dx + dy * dy
    t = ((q[0] - p0[0]) * dx + (q[1] - p0[1]) * dy) / denom
    t = min(1.0, max(0.0, t))
    return math.hypot(q[0] - (p0[0] + t * dx), q[1] - (p0[1] + t * dy))


def sector_distance(end_tip, direction, q, rho: float, theta_s: float) -> float:
    """Euclidean distance from ``q`` to the closed circular sector.

    The sector has its apex at ``end_tip``, radius ``rho`` and half-angle
    ``theta_s`` around the unit vector ``direction``. Zero inside.
    """
    r = tip_distance(end_tip, q)
    if r == 0.0:
        return 0.0
    v = ((q[0] - end_tip[0]) / r, (q[1] - end_tip[1]) / r)
    if _angle_between(direction, v) <= theta_s:
        return max(0.0, r - rho)
    c, s = math.cos(theta_s), math.sin(theta_s)
    best = math.inf
    for sign in (1.0, -1.0):
        ex = direction[0] * c - sign * direction[1] * s
        ey = sign * direction[0] * s + direction[1] * c
        edge_end = (end_tip[0] + rho * ex, end_tip[1] + rho * ey)
        best = min(best, _point_segment_distance(q, end_tip, edge_end))
    return best


def in_search_sector(end_tip, direction, q, rho: float, theta_s: float, lam: float) -> bool:
    """True when ``q`` lies in the search sector dilated by ``lam``."""
    return sector_distance(end_tip, direction, q, rho, theta_s) <= lam


def position_deviation(end_tip, direction, q, lam: float) -> float:
    """Smallest half-angle of a sector around ``direction`` that ``q`` is within
    ``lam`` of.

    This is the angular offset of ``q`` from the continuation ray, discounted
    by the tip-misalignment margin. Tips closer than ``lam`` get 0.
    """
    r = tip_distance(end_tip, q)
    if r <= lam:
        return 0.0
    v = ((q[0] - end_tip[0]) / r, (q[1] - end_tip[1]) / r)
    psi = _angle_between(direction, v)
    return max(0.0, psi - math.asin(lam / r))


def joint_measures(links: Sequence[DirectedSegment], lam: Optional[float] = None):
    """Per-joint gaps and angles of an ordered chain.

    The gap at joint i is the distance from the head of link i to the tail of
    link i+1. The angle is the turn angle; when ``lam`` is given it is raised
    to the angular position of each connecting tip relative to the other
    segment's continuation ray, taken from both sides of the joint so the
    result does not depend on the traversal direction.
    """
    gaps, angles = [], []
    for prev, nxt in zip(links[:-1], links[1:]):
        gaps.append(tip_distance(prev.head, nxt.tail))
        angle = turn_angle(prev, nxt)
        if lam is not None:
            u = prev.direction()
            w = nxt.direction()
            angle = max(
                angle,
                position_deviation(prev.head, u, nxt.tail, lam),
                position_deviation(nxt.tail, (-w[0], -w[1]), prev.head, lam),
            )
        angles.append(angle)
    return tuple(gaps), tuple(angles)


def chain_stats(links: Sequence[DirectedSegment], lam: Optional[float] = None):
    """Return ``(k, d, theta)``: count, largest gap and largest joint angle."""
    if not links:
        raise ValueError("a chain needs at least one segment")
    gaps, angles = joint_measures(links, lam)
    return len(links), max(gaps, default=0.0), max(angles, default=0.0)


def reverse_links(links: Sequence[DirectedSegment]):
    return tuple(link.reversed() for link in reversed(links))


@dataclass(frozen=True)
class Chain:
    """An ordered, oriented sequence of segments with its summary statistics."""

    links: tuple
    d: float = 0.0
    theta: float = 0.0

    def __post_init__(self):
        if not self.links:
            raise ValueError("a chain needs at least one segment")
        ids = self.ids
        if len(set(ids)) != len(ids):
            raise ValueError(f"segment repeated in chain {ids}")

    @classmethod
    def from_links(cls, links, lam: Optional[float] = None) -> "Chain":
        links = tuple(links)
        _, d, theta = chain_stats(links, lam)
        return cls(links, d, theta)

    @property
    def k(self) -> int:
        return len(self.links)

    @property
    def ids(self):
        return tuple(link.id for link in self.links)

    @property
    def forward(self):
        return tuple(link.forward for link in self.links)

    def reversed(self) -> "Chain":
        return Chain(reverse_links(self.links), self.d, self.theta)
