"""Bars: pairs of nearby anti-parallel segments or collapsed alignments."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .chains import Detection, GestaltKind
from .geometry import Chain, DirectedSegment, ImageDomain, LineSegment, tip_distance, turn_angle
from .index import build_tip_index
from .nfa import Params, is_meaningful, log_nfa_bar


@dataclass(frozen=True)
class BarElement:
    """A bar operand.

    ``id`` is the raw segment id, or ``-(alignment + 1)`` for an element
    collapsed from the alignment detection at position ``alignment``.
    ``members`` lists the input segments the element stands for.
    """

    id: int
    geometry: LineSegment
    members: tuple
    alignment: Optional[int] = None

    @classmethod
    def from_segment(cls, seg: LineSegment) -> "BarElement":
        return cls(seg.id, seg, (seg.id,))

    @property
    def is_synthetic(self):
        return self.alignment is not None


def collapse_alignment(det: Detection, alignment: int = 0) -> BarElement:
    """Replace an alignment chain by one segment from its first tail to its last head."""
    if det.kind is not GestaltKind.ALIGNMENT:
        raise ValueError(f"only alignments can be collapsed, got {det.kind.value}")
    links = det.chain.links
    element_id = -(alignment + 1)
    geometry = LineSegment(element_id, links[0].tail, links[-1].head)
    return BarElement(element_id, geometry, tuple(det.chain.ids), alignment)


def bar_elements(segments, alignments=()):
    """Raw segments followed by the collapsed ``alignments``."""
    elements = [BarElement.from_segment(s) for s in segments]
    elements.extend(collapse_alignment(det, i) for i, det in enumerate(alignments))
    return elements


def pair_bar(e1: BarElement, e2: BarElement):
    """Mutual distance and inter-segment angle for a candidate pair.

    ``e2``'s tips are matched to ``e1``'s so as to minimise the mutual
    distance; ``e2`` is then traversed against ``e1`` so a perfect bar has
    angle pi. Returns ``(d, theta, s1, s2)``.
    """
    g1, g2 = e1.geometry, e2.geometry
    same = 0.5 * (tip_distance(g1.a, g2.a) + tip_distance(g1.b, g2.b))
    crossed = 0.5 * (tip_distance(g1.a, g2.b) + tip_distance(g1.b, g2.a))
    s1 = DirectedSegment(g1, True)
    if same <= crossed:
        d, s2 = same, DirectedSegment(g2, False)
    else:
        d, s2 = crossed, DirectedSegment(g2, True)
    return d, turn_angle(s1, s2), s1, s2


def detect_bars(elements, params: Params, domain: ImageDomain):
    """Meaningful bars among all element pairs, best score first."""
    elements = sorted(elements, key=lambda e: e.id)
    N = len(elements)
    if len({e.id for e in elements}) != N:
        raise ValueError("bar elements must have unique ids")
    if N < 2:
        return []
    # index keyed by position: synthetic element ids are negative
    index = build_tip_index([_reid(e.geometry, i) for i, e in enumerate(elements)], params.rho)
    out = []
    for i, e1 in enumerate(elements):
        partners = set()
        for tip in (e1.geometry.a, e1.geometry.b):
            partners.update(j for j, _ in index.neighbors(tip, params.rho) if j > i)
        for j in sorted(partners):
            e2 = elements[j]
            d, theta, s1, s2 = pair_bar(e1, e2)
            if not d < params.rho or math.pi - theta > params.bar_theta_tol:
                continue
            score = log_nfa_bar(N, d, theta, domain)
            if is_meaningful(score, params.epsilon):
                out.append(Detection(GestaltKind.BAR, Chain((s1, s2), d, theta), score, (e1, e2)))
    out.sort(key=lambda det: (det.score, min(det.segment_ids()), tuple(e.id for e in det.elements)))
    return out


def _reid(seg: LineSegment, new_id: int) -> LineSegment:
    return LineSegment(new_id, seg.a, seg.b)
