"""A contrario grouping of line segments into good continuations,
non-local alignments and bars."""

from .bars import BarElement, collapse_alignment, detect_bars
from .chains import (
    Detection,
    GestaltKind,
    candidate_successors,
    detect_alignments,
    detect_good_continuations,
    enumerate_chains,
    filter_maximal,
)
from .estimator import GestaltDetector, detect_gestalts
from .formats import DetectionReport, parse_segments, read_report, write_report
from .geometry import Chain, DirectedSegment, ImageDomain, LineSegment, Point
from .nfa import Params, is_meaningful, log_nfa_alignment, log_nfa_bar, log_nfa_good_continuation
from .simulation import H0Config, calibrate, sample_h0
from .svg import render_svg

__version__ = "0.1.0"
