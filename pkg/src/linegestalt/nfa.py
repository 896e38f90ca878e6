"""Closed-form number-of-false-alarms scores, in base-10 log domain.

Scores are plain floats holding ``log10(NFA)``; ``-inf`` stands for NFA = 0.
Working in logs keeps chains of hundreds of segments representable.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

from .geometry import ImageDomain

LOG10_3 = math.log10(3.0)
LOG10_PI = math.log10(math.pi)


def _log10(x: float) -> float:
    return math.log10(x) if x > 0 else -math.inf


def default_rho(domain: ImageDomain) -> float:
    """Default maximal gap: ``min(10, ceil(0.1 * max(m, n)))`` pixels."""
    return float(min(10, math.ceil(0.1 * max(domain.m, domain.n))))


@dataclass(frozen=True)
class Params:
    """Detector configuration. Lengths in pixels, angles in radians.

    Attributes
    ----------
    rho : float
        Largest admissible gap between connected tips.
    theta_s : float
        Largest joint angle in a good continuation.
    lam : float
        Tip-misalignment margin around the search sector.
    epsilon : float
        Meaningfulness threshold on the NFA.
    align_theta : float
        Largest turn angle in a non-local alignment.
    bar_theta_tol : float
        Largest deviation from anti-parallel for a bar.
    """

    rho: float = 10.0
    theta_s: float = math.radians(150.0)
    lam: float = 2.0
    epsilon: float = 1.0
    align_theta: float = math.radians(3.0)
    bar_theta_tol: float = math.radians(3.0)

    def __post_init__(self):
        if not self.rho > 0:
            raise ValueError(f"rho must be positive, got {self.rho}")
        if not 0 < self.theta_s <= math.pi:
            raise ValueError(f"theta_s must lie in (0, pi], got {self.theta_s}")
        if not self.lam >= 0:
            raise ValueError(f"lam must be non-negative, got {self.lam}")
        if not self.epsilon > 0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")
        if not 0 < self.align_theta < self.theta_s:
            raise ValueError("align_theta must lie in (0, theta_s)")
        if not 0 < self.bar_theta_tol < math.pi / 2:
            raise ValueError("bar_theta_tol must lie in (0, pi/2)")

    @classmethod
    def for_domain(cls, domain: ImageDomain, **overrides) -> "Params":
        """Defaults with ``rho`` derived from the image size unless given."""
        if overrides.get("rho") is None:
            overrides["rho"] = default_rho(domain)
        return cls(**overrides)

    def as_dict(self):
        return asdict(self)


def _check_counts(N, k):
    if k < 1:
        raise ValueError(f"chain length must be >= 1, got {k}")
    if N < 1:
        raise ValueError(f"segment count must be >= 1, got {N}")


def _chain_log_nfa(N, k, log_area_term, theta):
    # log10 of 2N 3^(k-1) ((N-1) * area_term * theta/pi)^(k-1)
    head = math.log10(2 * N)
    if k == 1:
        return head
    if N == 1 or theta <= 0 or log_area_term == -math.inf:
        return -math.inf
    per_joint = LOG10_3 + math.log10(N - 1) + log_area_term + math.log10(theta) - LOG10_PI
    return head + (k - 1) * per_joint


def log_nfa_good_continuation(N, k, d, theta, domain: ImageDomain) -> float:
    """log10 NFA of a good continuation of ``k`` segments among ``N``.

    The per-joint probability is ``theta d^2 / (mn)`` for the tip landing in
    the sector times ``theta / pi`` for the angle.
    """
    _check_counts(N, k)
    if k == 1:
        return math.log10(2 * N)
    log_area = _log10(theta) + 2 * _log10(d) - math.log10(domain.area)
    return _chain_log_nfa(N, k, log_area, theta)


def log_nfa_alignment(N, k, d, theta, lam, domain: ImageDomain) -> float:
    """log10 NFA of a non-local alignment; the sector becomes a 2*lam x d strip."""
    _check_counts(N, k)
    if not lam > 0:
        raise ValueError(f"alignment score needs lam > 0, got {lam}")
    if k == 1:
        return math.log10(2 * N)
    log_area = math.log10(2 * lam) + _log10(d) - math.log10(domain.area)
    return _chain_log_nfa(N, k, log_area, theta)


def log_nfa_bar(N, d, theta, domain: ImageDomain) -> float:
    """log10 of ``3N (N-1) (pi d^2 / mn)^2 theta / pi``."""
    if N < 2:
        raise ValueError(f"bar score needs at least 2 elements, got {N}")
    if d <= 0 or theta <= 0:
        return -math.inf
    return (
        math.log10(3 * N * (N - 1))
        + 2 * (LOG10_PI + 2 * math.log10(d) - math.log10(domain.area))
        + math.log10(theta)
        - LOG10_PI
    )


def is_meaningful(score: float, epsilon: float = 1.0) -> bool:
    if not epsilon > 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    return score < math.log10(epsilon)
