"""Monte Carlo check of the false-alarm rate under the uniform-tip null model."""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .chains import DEFAULT_K_MAX
from .estimator import ALL_KINDS, detect_gestalts
from .geometry import ImageDomain, LineSegment
from .nfa import Params

GENERATOR = "PCG64"
CALIBRATION_FORMAT = "linegestalt-calibration/1"


@dataclass(frozen=True)
class H0Config:
    N: int
    domain: ImageDomain
    trials: int = 100
    seed: int = 0

    def __post_init__(self):
        if self.N < 2:
            raise ValueError(f"N must be >= 2, got {self.N}")
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")


def trial_rng(seed: int, trial_index: int) -> np.random.Generator:
    """Independent PCG64 stream for one trial, derived from ``(seed, trial_index)``."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, trial_index])))


def sample_h0(config: H0Config, trial_index: int):
    """N segments whose 2N tips are i.i.d. uniform on ``[0, m] x [0, n]``."""
    rng = trial_rng(config.seed, trial_index)
    scale = np.array([config.domain.m, config.domain.n], dtype=np.float64)
    segments = []
    while len(segments) < config.N:
        a, b = rng.random(2) * scale, rng.random(2) * scale
        if np.array_equal(a, b):
            continue
        segments.append(LineSegment.from_coords(len(segments), *a, *b))
    return segments


@dataclass(frozen=True)
class CalibrationResult:
    config: H0Config
    params: Params
    counts: dict  # kind -> tuple of per-trial detection counts

    @property
    def trials(self):
        return self.config.trials

    @property
    def mean(self):
        return {k: sum(c) / len(c) for k, c in self.counts.items()}

    @property
    def max(self):
        return {k: max(c) for k, c in self.counts.items()}


def calibrate(config: H0Config, params: Params, k_max: int = DEFAULT_K_MAX) -> CalibrationResult:
    """Run every detector on ``config.trials`` null-model samples and count detections."""
    counts = {k: [] for k in ALL_KINDS}
    for t in range(config.trials):
        found = detect_gestalts(sample_h0(config, t), params, config.domain, ALL_KINDS, k_max)
        for kind, dets in found.items():
            counts[kind.value].append(len(dets))
    return CalibrationResult(config, params, {k: tuple(v) for k, v in counts.items()})


def write_calibration(result: CalibrationResult) -> str:
    cfg = result.config
    doc = {
        "format": CALIBRATION_FORMAT,
        "generator": GENERATOR,
        "seed": cfg.seed,
        "trials": cfg.trials,
        "N": cfg.N,
        "image": {"width": cfg.domain.m, "height": cfg.domain.n},
        "params": result.params.as_dict(),
        "mean": {k: round(v, 6) for k, v in result.mean.items()},
        "max": result.max,
        "counts": {k: list(v) for k, v in result.counts.items()},
    }
    return json.dumps(doc, indent=2) + "\n"
