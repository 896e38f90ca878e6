"""Estimator front end: ``GestaltDetector.fit(X)`` on an array of segments."""
from __future__ import annotations

import math

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .bars import bar_elements, detect_bars
from .chains import DEFAULT_K_MAX, GestaltKind, detect_alignments, detect_good_continuations
from .formats import KIND_ORDER, build_report
from .nfa import Params
from .validation import check_segments, resolve_domain, segments_from_array

ALL_KINDS = tuple(k.value for k in KIND_ORDER)


def detect_gestalts(segments, params: Params, domain, kinds=ALL_KINDS, k_max=DEFAULT_K_MAX):
    """Run the enabled detectors and return ``{GestaltKind: [Detection, ...]}``.

    Bars are searched among the raw segments plus every alignment found, so
    alignments feed bars only when both kinds are enabled.
    """
    kinds = {GestaltKind(k) for k in kinds}
    segments = list(segments)
    out = {}
    if GestaltKind.GOOD_CONTINUATION in kinds:
        out[GestaltKind.GOOD_CONTINUATION] = detect_good_continuations(segments, params, domain, k_max)
    if GestaltKind.ALIGNMENT in kinds:
        out[GestaltKind.ALIGNMENT] = detect_alignments(segments, params, domain, k_max)
    if GestaltKind.BAR in kinds:
        elements = bar_elements(segments, out.get(GestaltKind.ALIGNMENT, ()))
        out[GestaltKind.BAR] = detect_bars(elements, params, domain)
    return out


class GestaltDetector(TransformerMixin, BaseEstimator):
    """Group line segments into good continuations, alignments and bars.

    Parameters
    ----------
    image_size : tuple of int (width, height), optional
        Image the segments were detected in. When omitted, the tip bounding
        box is used with a warning.
    rho : float, optional
        Largest gap in pixels. Defaults to ``min(10, ceil(0.1 * max(w, h)))``.
    theta_s : float, default=150 degrees
        Largest joint angle of a good continuation, radians.
    lam : float, default=2.0
        Tip-misalignment margin in pixels.
    epsilon : float, default=1.0
        NFA threshold.
    align_theta : float, default=3 degrees
        Largest turn angle of a non-local alignment, radians.
    bar_theta_tol : float, default=3 degrees
        Allowed deviation from anti-parallel for bars, radians.
    k_max : int, default=64
        Longest chain explored.
    kinds : tuple of str
        Any of ``"good_continuation"``, ``"alignment"``, ``"bar"``.

    Attributes
    ----------
    domain_ : ImageDomain
    params_ : Params
    segments_ : list of LineSegment
        The fitted segments; ids are row indices.
    detections_ : dict
        ``GestaltKind`` to the list of detections, best first.
    residuals_ : ndarray of int
        Rows that belong to no detection.
    """

    def __init__(self, image_size=None, rho=None, theta_s=math.radians(150.0), lam=2.0,
                 epsilon=1.0, align_theta=math.radians(3.0), bar_theta_tol=math.radians(3.0),
                 k_max=DEFAULT_K_MAX, kinds=ALL_KINDS):
        self.image_size = image_size
        self.rho = rho
        self.theta_s = theta_s
        self.lam = lam
        self.epsilon = epsilon
        self.align_theta = align_theta
        self.bar_theta_tol = bar_theta_tol
        self.k_max = k_max
        self.kinds = kinds

    def _make_params(self, domain):
        return Params.for_domain(
            domain, rho=self.rho, theta_s=self.theta_s, lam=self.lam, epsilon=self.epsilon,
            align_theta=self.align_theta, bar_theta_tol=self.bar_theta_tol,
        )

    def fit(self, X, y=None):
        X = check_segments(X)
        self.domain_ = resolve_domain(self.image_size, X)
        self.params_ = self._make_params(self.domain_)
        self.n_features_in_ = X.shape[1]
        self.segments_ = segments_from_array(X)
        self.detections_ = detect_gestalts(self.segments_, self.params_, self.domain_,
                                           self.kinds, self.k_max)
        self.residuals_ = np.flatnonzero(~self._membership(self.detections_, len(X)).any(axis=1))
        return self

    @staticmethod
    def _membership(detections, n):
        out = np.zeros((n, len(KIND_ORDER)), dtype=bool)
        for col, kind in enumerate(KIND_ORDER):
            for det in detections.get(kind, ()):
                out[list(det.segment_ids()), col] = True
        return out

    def transform(self, X):
        """Membership of each segment in each kind, shape ``(n_segments, 3)``.

        Columns follow good continuation, alignment, bar. Detection reuses
        the fitted image domain and parameters.
        """
        check_is_fitted(self, "params_")
        X = check_segments(X)
        detections = detect_gestalts(segments_from_array(X), self.params_, self.domain_,
                                     self.kinds, self.k_max)
        return self._membership(detections, len(X)).astype(np.int8)

    def fit_transform(self, X, y=None):
        self.fit(X)
        return self._membership(self.detections_, len(self.segments_)).astype(np.int8)

    def report(self):
        """The fitted result as a ``DetectionReport``."""
        check_is_fitted(self, "params_")
        return build_report(self.segments_, self.domain_, self.config(), self.detections_)

    def config(self):
        """Effective configuration, as recorded in reports."""
        check_is_fitted(self, "params_")
        cfg = self.params_.as_dict()
        cfg["k_max"] = int(self.k_max)
        cfg["kinds"] = [k for k in ALL_KINDS if k in {GestaltKind(x).value for x in self.kinds}]
        return cfg
