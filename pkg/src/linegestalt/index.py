"""Uniform grid over segment tips for fixed-radius neighbour queries."""
from __future__ import annotations

import math
from collections import defaultdict

from .geometry import tip_distance

TIP_A, TIP_B = 0, 1


class TipIndex:
    """Buckets every tip ``(segment id, tip tag)`` by its grid cell.

    ``query`` returns a superset of the tips within a radius; ``neighbors``
    filters it exactly.
    """

    def __init__(self, cell_size: float):
        if not cell_size > 0:
            raise ValueError(f"cell_size must be positive, got {cell_size}")
        self.cell_size = float(cell_size)
        self.buckets = defaultdict(list)
        self._tips = {}

    def __len__(self):
        return len(self._tips)

    def _cell(self, p):
        return (math.floor(p[0] / self.cell_size), math.floor(p[1] / self.cell_size))

    def add(self, segment_id: int, tag: int, p):
        self._tips[(segment_id, tag)] = p
        self.buckets[self._cell(p)].append((segment_id, tag))

    def tip(self, segment_id: int, tag: int):
        return self._tips[(segment_id, tag)]

    def query(self, p, radius: float):
        """Tips stored in cells that intersect the closed disk around ``p``."""
        cs = self.cell_size
        cx0, cy0 = self._cell((p[0] - radius, p[1] - radius))
        cx1, cy1 = self._cell((p[0] + radius, p[1] + radius))
        out = []
        for cx in range(cx0, cx1 + 1):
            # nearest point of the cell column to p
            dx = max(cx * cs - p[0], 0.0, p[0] - (cx + 1) * cs)
            for cy in range(cy0, cy1 + 1):
                dy = max(cy * cs - p[1], 0.0, p[1] - (cy + 1) * cs)
                if dx * dx + dy * dy > radius * radius:
                    continue
                bucket = self.buckets.get((cx, cy))
                if bucket:
                    out.extend(bucket)
        return out

    def neighbors(self, p, radius: float):
        """Tips at distance <= ``radius`` from ``p``, sorted by (segment id, tag)."""
        return sorted(
            key for key in self.query(p, radius) if tip_distance(p, self._tips[key]) <= radius
        )


def build_tip_index(segments, cell_size: float) -> TipIndex:
    index = TipIndex(cell_size)
    for seg in segments:
        index.add(seg.id, TIP_A, seg.a)
        index.add(seg.id, TIP_B, seg.b)
    return index
