"""Input validation for segment arrays."""
from __future__ import annotations

import math
import warnings

import numpy as np
from sklearn.utils import check_array

from .geometry import ImageDomain, LineSegment


def check_segments(X):
    """Validate an ``(n_segments, >=4)`` array of ``x1 y1 x2 y2 [extra...]`` rows.

    Returns a float64 array. Raises ``ValueError`` for non-finite values,
    fewer than four columns, or zero-length rows.
    """
    X = check_array(X, dtype=np.float64, ensure_min_samples=0, ensure_2d=True)
    if X.shape[0] and X.shape[1] < 4:
        raise ValueError(f"segment arrays need at least 4 columns, got {X.shape[1]}")
    if X.shape[0]:
        degenerate = np.flatnonzero((X[:, 0] == X[:, 2]) & (X[:, 1] == X[:, 3]))
        if degenerate.size:
            raise ValueError(f"zero-length segments at rows {degenerate.tolist()}")
    return X


def segments_from_array(X):
    return [LineSegment.from_coords(i, *row[:4], extra=tuple(row[4:].tolist())) for i, row in enumerate(X)]


def segments_to_array(segments):
    return np.array([[s.a.x, s.a.y, s.b.x, s.b.y] for s in segments], dtype=np.float64).reshape(-1, 4)


def bounding_domain(X) -> ImageDomain:
    """Smallest integer image covering all tips, at least 1x1."""
    if len(X) == 0:
        return ImageDomain(1, 1)
    m = max(1, math.ceil(float(max(X[:, 0].max(), X[:, 2].max()))))
    n = max(1, math.ceil(float(max(X[:, 1].max(), X[:, 3].max()))))
    return ImageDomain(m, n)


def resolve_domain(image_size, X) -> ImageDomain:
    """Use ``image_size = (width, height)`` when given, else the tip bounding box.

    The fallback warns: every score depends on the image area.
    """
    if image_size is not None:
        width, height = image_size
        return ImageDomain(int(width), int(height))
    domain = bounding_domain(X)
    warnings.warn(
        f"image size not given; using tip bounding box {domain.m}x{domain.n}",
        UserWarning,
        stacklevel=3,
    )
    return domain
