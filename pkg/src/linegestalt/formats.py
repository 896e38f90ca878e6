"""Segment file parsing and the JSON detection report."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Optional

from .chains import GestaltKind
from .geometry import ImageDomain, LineSegment

REPORT_FORMAT = "linegestalt-report/1"
KIND_ORDER = (GestaltKind.GOOD_CONTINUATION, GestaltKind.ALIGNMENT, GestaltKind.BAR)
DECIMALS = 6


class ParseError(ValueError):
    pass


@dataclass(frozen=True)
class Diagnostic:
    line: int
    message: str
    column: Optional[int] = None

    def __str__(self):
        where = f"line {self.line}" if self.column is None else f"line {self.line}, column {self.column}"
        return f"{self.message} at {where}"


def _fields(line):
    """Yield (1-based column, token) for whitespace separated tokens."""
    col = 0
    for token in line.split():
        col = line.index(token, col)
        yield col + 1, token
        col += len(token)


def parse_segments(text: str):
    """Parse a plain-text segment list.

    Each non-empty line that does not start with ``#`` holds ``x1 y1 x2 y2``
    followed by optional extra fields (LSD writes width, precision and a
    score), kept verbatim in ``LineSegment.extra``. Bad lines are skipped and reported; the parser
    never raises on content.

    Returns
    -------
    segments : list of LineSegment
        Ids are consecutive from 0 in file order over accepted lines.
    diagnostics : list of Diagnostic
    """
    segments, diagnostics = [], []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = list(_fields(raw))
        values = []
        bad = None
        for col, token in tokens[:4]:
            try:
                v = float(token)
            except ValueError:
                bad = Diagnostic(lineno, f"malformed number {token!r}", col)
                break
            if not math.isfinite(v):
                bad = Diagnostic(lineno, f"non-finite number {token!r}", col)
                break
            values.append(v)
        if bad is None and len(values) < 4:
            bad = Diagnostic(lineno, f"expected 4 coordinates, found {len(values)}")
        if bad is None and values[:2] == values[2:]:
            bad = Diagnostic(lineno, "zero-length segment")
        if bad is not None:
            diagnostics.append(bad)
            continue
        extra = tuple(token for _, token in tokens[4:])
        segments.append(LineSegment.from_coords(len(segments), *values, extra=extra))
    return segments, diagnostics


def format_segments(segments) -> str:
    """Inverse of ``parse_segments``: shortest round-tripping floats, extras appended."""
    return "".join(
        " ".join([repr(s.a.x), repr(s.a.y), repr(s.b.x), repr(s.b.y), *map(str, s.extra)]) + "\n"
        for s in segments
    )


@dataclass(frozen=True)
class MemberRef:
    """A detection member: an input segment, or (bars only) an alignment
    detection referenced by its position in the report's alignment list."""

    forward: bool
    segment: Optional[int] = None
    alignment: Optional[int] = None


@dataclass(frozen=True)
class DetectionRecord:
    members: tuple
    k: int
    d: float
    theta: float
    log10_nfa: float


@dataclass(frozen=True)
class DetectionReport:
    width: int
    height: int
    params: dict
    detections: dict = field(default_factory=dict)
    residuals: tuple = ()

    def member_segments(self, record: DetectionRecord):
        """Input segment ids of ``record`` in chain order, alignment references expanded."""
        ids = []
        for ref in record.members:
            if ref.segment is not None:
                ids.append(ref.segment)
            else:
                target = self.detections[GestaltKind.ALIGNMENT.value][ref.alignment]
                ids.extend(m.segment for m in target.members)
        return ids

    def segment_ids(self, kind, record: DetectionRecord):
        return set(self.member_segments(record))

    def covered_ids(self):
        ids = set()
        for kind, records in self.detections.items():
            for rec in records:
                ids |= self.segment_ids(kind, rec)
        return ids


def _round(x: float) -> float:
    return x if math.isinf(x) else round(float(x), DECIMALS)


def _record(det) -> DetectionRecord:
    if det.elements is None:
        members = tuple(MemberRef(l.forward, segment=l.id) for l in det.chain.links)
    else:
        members = tuple(
            MemberRef(link.forward, alignment=e.alignment) if e.is_synthetic
            else MemberRef(link.forward, segment=e.id)
            for e, link in zip(det.elements, det.chain.links)
        )
    return DetectionRecord(members, det.k, _round(det.chain.d), _round(det.chain.theta), _round(det.score))


def build_report(segments, domain: ImageDomain, params: dict, detections) -> DetectionReport:
    """Assemble a report from per-kind detection lists.

    ``detections`` maps each enabled ``GestaltKind`` to its detections.
    Bars may only reference alignments present in the same mapping.
    """
    records = {kind.value: tuple(_record(d) for d in detections.get(kind, ())) for kind in KIND_ORDER}
    all_ids = sorted(s.id for s in segments)
    report = DetectionReport(domain.m, domain.n, dict(params), records, ())
    covered = report.covered_ids()
    unknown = covered - set(all_ids)
    if unknown:
        raise ValueError(f"detections refer to unknown segment ids {sorted(unknown)}")
    return DetectionReport(domain.m, domain.n, dict(params), records,
                           tuple(i for i in all_ids if i not in covered))


def _num(x):
    if math.isinf(x):
        return "-inf" if x < 0 else "inf"
    return x


def _unnum(x):
    return float(x) if isinstance(x, str) else x


def report_to_dict(report: DetectionReport):
    def member(ref):
        out = {"forward": ref.forward}
        if ref.segment is not None:
            out["segment"] = ref.segment
        else:
            out["alignment"] = ref.alignment
        return out

    return {
        "format": REPORT_FORMAT,
        "image": {"width": report.width, "height": report.height},
        "params": report.params,
        "detections": {
            kind: [
                {
                    "members": [member(m) for m in rec.members],
                    "k": rec.k,
                    "d": _num(rec.d),
                    "theta": _num(rec.theta),
                    "log10_nfa": _num(rec.log10_nfa),
                }
                for rec in report.detections.get(kind, ())
            ]
            for kind in (k.value for k in KIND_ORDER)
        },
        "residuals": list(report.residuals),
    }


def write_report(report: DetectionReport) -> str:
    return json.dumps(report_to_dict(report), indent=2) + "\n"


def read_report(text: str) -> DetectionReport:
    obj = json.loads(text)
    if obj.get("format") != REPORT_FORMAT:
        raise ParseError(f"not a {REPORT_FORMAT} document")
    detections = {}
    for kind, records in obj["detections"].items():
        detections[kind] = tuple(
            DetectionRecord(
                tuple(MemberRef(m["forward"], m.get("segment"), m.get("alignment")) for m in rec["members"]),
                rec["k"],
                _unnum(rec["d"]),
                _unnum(rec["theta"]),
                _unnum(rec["log10_nfa"]),
            )
            for rec in records
        )
    return DetectionReport(obj["image"]["width"], obj["image"]["height"], obj["params"],
                           detections, tuple(obj["residuals"]))
