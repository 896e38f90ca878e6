"""SVG drawing of a detection report: one colour per detected structure."""
from __future__ import annotations

from .formats import KIND_ORDER, DetectionReport

PALETTE = (
    "#e6194b", "#3cb44b", "#4363d8", "#f58231", "#911eb4", "#42d4f4",
    "#f032e6", "#9a6324", "#469990", "#800000", "#808000", "#000075",
)
RESIDUAL_COLOR = "#a0a0a0"
DEFAULT_STYLE = {"stroke_width": 1.0, "palette": PALETTE, "residual_color": RESIDUAL_COLOR}


def _f(x):
    return f"{x:.3f}"


def _line(seg):
    return (f'<line x1="{_f(seg.a.x)}" y1="{_f(seg.a.y)}" '
            f'x2="{_f(seg.b.x)}" y2="{_f(seg.b.y)}"/>')


def render_svg(segments, report: DetectionReport, style=None) -> str:
    """Residual segments in grey, then one ``<g>`` per detection.

    Colours cycle through the palette by detection index, counting good
    continuations, then alignments, then bars.
    """
    style = {**DEFAULT_STYLE, **(style or {})}
    palette = style["palette"]
    by_id = {s.id: s for s in segments}
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{report.width}" height="{report.height}" '
        f'viewBox="0 0 {report.width} {report.height}">',
        f'<rect width="{report.width}" height="{report.height}" fill="white"/>',
        f'<g id="residuals" stroke="{style["residual_color"]}" '
        f'stroke-width="{style["stroke_width"]}" fill="none">',
    ]
    out.extend(_line(by_id[i]) for i in report.residuals)
    out.append("</g>")
    index = 0
    for kind in (k.value for k in KIND_ORDER):
        for j, rec in enumerate(report.detections.get(kind, ())):
            color = palette[index % len(palette)]
            out.append(f'<g id="{kind}-{j}" class="{kind}" stroke="{color}" '
                       f'stroke-width="{style["stroke_width"]}" fill="none">')
            for seg_id in report.member_segments(rec):
                out.append(_line(by_id[seg_id]))
            out.append("</g>")
            index += 1
    out.append("</svg>")
    return "\n".join(out) + "\n"
