"""Chain enumeration and maximal-meaningful filtering for good continuations
and non-local alignments.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .geometry import Chain, DirectedSegment, ImageDomain, in_search_sector, joint_measures, tip_distance
from .index import build_tip_index
from .nfa import Params, is_meaningful, log_nfa_alignment, log_nfa_good_continuation

MAX_SUCCESSORS = 3
DEFAULT_K_MAX = 64


class GestaltKind(str, enum.Enum):
    GOOD_CONTINUATION = "good_continuation"
    ALIGNMENT = "alignment"
    BAR = "bar"


@dataclass(frozen=True)
class Detection:
    kind: GestaltKind
    chain: Chain
    score: float
    # bar operands; None for chain kinds
    elements: Optional[tuple] = None

    @property
    def k(self):
        return self.chain.k

    def segment_ids(self):
        """Ids of all input segments this detection covers, sorted."""
        if self.elements is None:
            return tuple(sorted(self.chain.ids))
        return tuple(sorted({i for e in self.elements for i in e.members}))


def _mode_settings(mode: GestaltKind, params: Params):
    """(angle ceiling, lam used in joint angles) for a chain mode."""
    if mode is GestaltKind.GOOD_CONTINUATION:
        return params.theta_s, params.lam
    if mode is GestaltKind.ALIGNMENT:
        return params.align_theta, None
    raise ValueError(f"not a chain mode: {mode}")


def chain_scorer(mode: GestaltKind, N: int, params: Params, domain: ImageDomain):
    """Return ``score(k, d, theta) -> log10 NFA`` for the given mode."""
    if mode is GestaltKind.GOOD_CONTINUATION:
        return lambda k, d, theta: log_nfa_good_continuation(N, k, d, theta, domain)
    if mode is GestaltKind.ALIGNMENT:
        return lambda k, d, theta: log_nfa_alignment(N, k, d, theta, params.lam, domain)
    raise ValueError(f"not a chain mode: {mode}")


def _segment_map(segments):
    by_id = {}
    for seg in segments:
        if seg.id in by_id:
            raise ValueError(f"duplicate segment id {seg.id}")
        by_id[seg.id] = seg
    return by_id


def nearer_tip_orientation(seg, p) -> DirectedSegment:
    """Orient ``seg`` so its tail is the tip nearer to ``p``.

    Exact ties go to the lexicographically smaller tip, so the choice does
    not depend on how the segment's tips were stored.
    """
    da, db = tip_distance(p, seg.a), tip_distance(p, seg.b)
    if (da, seg.a) <= (db, seg.b):
        return DirectedSegment(seg, True)
    return DirectedSegment(seg, False)


def candidate_successors(current: DirectedSegment, index, segments, params: Params,
                         used, mode: GestaltKind = GestaltKind.GOOD_CONTINUATION):
    """Up to three unused segments whose nearer tip lies in the search sector
    ahead of ``current``, nearest first.
    """
    by_id = segments if isinstance(segments, dict) else _segment_map(segments)
    ceiling, _ = _mode_settings(mode, params)
    head = current.head
    direction = current.direction()
    seen = set()
    found = []
    for seg_id, _tag in index.query(head, params.rho + params.lam):
        if seg_id in used or seg_id in seen:
            continue
        seen.add(seg_id)
        cand = nearer_tip_orientation(by_id[seg_id], head)
        if in_search_sector(head, direction, cand.tail, params.rho, ceiling, params.lam):
            found.append((tip_distance(head, cand.tail), seg_id, cand))
    found.sort(key=lambda t: (t[0], t[1]))
    return [c for _, _, c in found[:MAX_SUCCESSORS]]


def canonical_key(links):
    """Orientation-independent identity of a chain: the smaller of its
    (ids, flags) sequence and that of its reversal."""
    fwd = tuple((l.id, l.forward) for l in links)
    rev = tuple((l.id, not l.forward) for l in reversed(links))
    return min(fwd, rev)


def _canonical_links(links):
    fwd = tuple((l.id, l.forward) for l in links)
    rev = tuple((l.id, not l.forward) for l in reversed(links))
    if fwd <= rev:
        return tuple(links)
    return tuple(l.reversed() for l in reversed(links))


def enumerate_chains(segments, params: Params, mode: GestaltKind, domain: ImageDomain,
                     k_max: int = DEFAULT_K_MAX):
    """Grow chains depth-first from every tip and score every chain of length >= 2.

    Returns a list of ``(Chain, log10 NFA)`` with one entry per chain up to
    reversal, in canonical order.
    """
    if k_max < 2:
        raise ValueError(f"k_max must be >= 2, got {k_max}")
    segments = list(segments)
    by_id = _segment_map(segments)
    N = len(segments)
    if N < 2:
        return []
    ceiling, lam = _mode_settings(mode, params)
    score = chain_scorer(mode, N, params, domain)
    index = build_tip_index(segments, params.rho + params.lam)
    found = {}

    def grow(links, used, d, theta):
        for nxt in candidate_successors(links[-1], index, by_id, params, used, mode):
            gaps, angles = joint_measures((links[-1], nxt), lam)
            if gaps[0] > params.rho or angles[0] > ceiling:
                continue
            new_links = links + [nxt]
            nd, ntheta = max(d, gaps[0]), max(theta, angles[0])
            key = canonical_key(new_links)
            if key not in found:
                chain = Chain(_canonical_links(new_links), nd, ntheta)
                found[key] = (chain, score(len(new_links), nd, ntheta))
            if len(new_links) < k_max:
                used.add(nxt.id)
                grow(new_links, used, nd, ntheta)
                used.discard(nxt.id)

    for seg in sorted(segments, key=lambda s: s.id):
        for forward in (True, False):
            grow([DirectedSegment(seg, forward)], {seg.id}, 0.0, 0.0)

    return [found[key] for key in sorted(found)]


def is_maximal(chain: Chain, score: float, score_fn, lam=None) -> bool:
    """True when no proper contiguous subchain of length >= 2 scores strictly lower."""
    gaps, angles = joint_measures(chain.links, lam)
    k = chain.k
    for i in range(k - 1):
        d = theta = 0.0
        for j in range(i + 1, k):
            d = max(d, gaps[j - 1])
            theta = max(theta, angles[j - 1])
            if i == 0 and j == k - 1:
                break
            if score_fn(j - i + 1, d, theta) < score:
                return False
    return True


def _detection_order(det: Detection):
    return (det.score, -det.k, min(det.chain.ids), det.chain.ids, det.chain.forward)


def filter_maximal(candidates, epsilon: float, score_fn, kind: GestaltKind, lam=None):
    """Keep maximal meaningful chains, each segment in at most one of them.

    A chain survives when its score is below ``log10(epsilon)`` and no
    contiguous subchain scores strictly lower. Survivors are then visited
    best first (score, then longer, then smallest member id) and a chain
    sharing a segment with an already kept chain is dropped.
    """
    survivors = []
    for chain, score in candidates:
        if is_meaningful(score, epsilon) and is_maximal(chain, score, score_fn, lam):
            survivors.append(Detection(kind, chain, score))
    survivors.sort(key=_detection_order)
    kept, used = [], set()
    for det in survivors:
        ids = set(det.chain.ids)
        if ids & used:
            continue
        kept.append(det)
        used |= ids
    return kept


def _detect(segments, params, domain, mode, k_max):
    segments = list(segments)
    candidates = enumerate_chains(segments, params, mode, domain, k_max)
    if not candidates:
        return []
    _, lam = _mode_settings(mode, params)
    score_fn = chain_scorer(mode, len(segments), params, domain)
    return filter_maximal(candidates, params.epsilon, score_fn, mode, lam)


def detect_good_continuations(segments, params: Params, domain: ImageDomain,
                              k_max: int = DEFAULT_K_MAX):
    return _detect(segments, params, domain, GestaltKind.GOOD_CONTINUATION, k_max)


def detect_alignments(segments, params: Params, domain: ImageDomain,
                      k_max: int = DEFAULT_K_MAX):
    return _detect(segments, params, domain, GestaltKind.ALIGNMENT, k_max)
