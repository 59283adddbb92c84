"""L2 discrepancies with the counting normalization ``A(B, P) - N*vol(B)``.

Three families of test boxes are supported:

``standard``
    boxes ``[0, t)`` anchored at the origin,
``extreme``
    arbitrary boxes ``[x, y)`` with ``x <= y`` (region volume not normalized),
``periodic``
    wrap-around boxes on the torus.

Each closed form expands the squared integral into a pair sum, a per-point
sum and a constant; all three factor over the coordinates. The Monte Carlo
oracle integrates the definitions directly and shares no code with them.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .lattices import PointSet

NOTIONS = ("standard", "extreme", "periodic")
MIN_SAMPLES = 10_000
BLOCK = 1 << 14


@dataclass
class MCEstimate:
    mean: float
    stderr: float
    samples: int
    seed: int


@dataclass
class DiscrepancyReport:
    notion: str
    value: float
    squared: float
    mc: MCEstimate | None = None

    @property
    def flagged(self) -> bool:
        """True when the MC estimate disagrees with the closed form by > 4 sigma."""
        if self.mc is None:
            return False
        return abs(self.squared - self.mc.mean) > 4.0 * self.mc.stderr

    def to_dict(self) -> dict:
        d = {"notion": self.notion, "value": self.value, "squared": self.squared, "mc": None}
        if self.mc is not None:
            d["mc"] = {
                "mean": self.mc.mean,
                "stderr": self.mc.stderr,
                "samples": self.mc.samples,
                "seed": self.mc.seed,
            }
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _coords(P) -> np.ndarray:
    if isinstance(P, PointSet):
        return P.as_array()
    return np.asarray(P, dtype=float).reshape(-1, 2)


def _report(notion: str, sq: float) -> DiscrepancyReport:
    sq = float(sq)
    return DiscrepancyReport(notion, math.sqrt(max(sq, 0.0)), sq)


def l2_standard_squared(X: np.ndarray) -> float:
    n = len(X)
    if n == 0:
        return 0.0
    pair = np.prod(1.0 - np.maximum(X[:, None, :], X[None, :, :]), axis=2).sum()
    cross = np.prod((1.0 - X**2) / 2.0, axis=1).sum()
    return pair - 2.0 * n * cross + n * n / 9.0


def l2_extreme_squared(X: np.ndarray) -> float:
    n = len(X)
    if n == 0:
        return 0.0
    lo = np.minimum(X[:, None, :], X[None, :, :])
    hi = np.maximum(X[:, None, :], X[None, :, :])
    pair = np.prod(lo * (1.0 - hi), axis=2).sum()
    cross = np.prod(X * (1.0 - X) / 2.0, axis=1).sum()
    return pair - 2.0 * n * cross + n * n / 144.0


def l2_periodic_squared(X: np.ndarray) -> float:
    n = len(X)
    if n == 0:
        return 0.0
    t = np.abs(X[:, None, :] - X[None, :, :])
    pair = np.prod(0.5 - t + t * t, axis=2).sum()
    # per-point term is N * (1/3)^2 for every point, so it folds into the constant
    return pair - n * n / 9.0


_SQUARED = {
    "standard": l2_standard_squared,
    "extreme": l2_extreme_squared,
    "periodic": l2_periodic_squared,
}


def l2_standard(P) -> DiscrepancyReport:
    return _report("standard", l2_standard_squared(_coords(P)))


def l2_extreme(P) -> DiscrepancyReport:
    return _report("extreme", l2_extreme_squared(_coords(P)))


def l2_periodic(P) -> DiscrepancyReport:
    return _report("periodic", l2_periodic_squared(_coords(P)))


def l2_discrepancy(P, notion: str) -> DiscrepancyReport:
    if notion not in _SQUARED:
        raise ValueError(f"unknown notion {notion!r}; expected one of {NOTIONS}")
    return _report(notion, _SQUARED[notion](_coords(P)))


# ----------------------------------------------------------- Monte Carlo


def _block_values(X: np.ndarray, notion: str, rng: np.random.Generator, size: int) -> np.ndarray:
    n = len(X)
    u, v = X[:, 0], X[:, 1]
    if notion == "standard":
        t = rng.random((size, 2))
        inside = (u[None, :] < t[:, :1]) & (v[None, :] < t[:, 1:])
        vol = t[:, 0] * t[:, 1]
    else:
        a = rng.random((size, 2))
        b = rng.random((size, 2))
        if notion == "extreme":
            lo, hi = np.minimum(a, b), np.maximum(a, b)
            inside = ((lo[:, :1] <= u[None, :]) & (u[None, :] < hi[:, :1])
                      & (lo[:, 1:] <= v[None, :]) & (v[None, :] < hi[:, 1:]))
            vol = (hi[:, 0] - lo[:, 0]) * (hi[:, 1] - lo[:, 1])
        else:
            def member(c, lo_, hi_):
                plain = (lo_ <= c) & (c < hi_)
                wrapped = (c < hi_) | (c >= lo_)
                return np.where(lo_ <= hi_, plain, wrapped)

            inside = member(u[None, :], a[:, :1], b[:, :1]) & member(v[None, :], a[:, 1:], b[:, 1:])
            length = np.where(a <= b, b - a, 1.0 - a + b)
            vol = length[:, 0] * length[:, 1]
    count = inside.sum(axis=1)
    return (count - n * vol) ** 2


def mc_oracle(P, notion: str, samples: int = 1_000_000, seed: int = 0,
              block: int = BLOCK) -> tuple[float, float]:
    """Monte Carlo estimate of the squared discrepancy integral.

    Returns ``(mean, stderr)``. Samples are drawn in blocks of ``block``
    with per-block PCG64 streams spawned from ``seed``, so the result is
    reproducible for fixed ``(samples, seed, block)``. For the extreme
    notion the boxes are drawn uniformly from ``{x <= y}`` and the mean is
    multiplied by the region volume 1/4.
    """
    if notion not in NOTIONS:
        raise ValueError(f"unknown notion {notion!r}")
    if samples < MIN_SAMPLES:
        raise ValueError(f"need at least {MIN_SAMPLES} samples, got {samples}")
    X = _coords(P)
    nblocks = -(-samples // block)
    streams = np.random.SeedSequence(seed).spawn(nblocks)
    total = 0.0
    total_sq = 0.0
    remaining = samples
    for ss in streams:
        size = min(block, remaining)
        remaining -= size
        f = _block_values(X, notion, np.random.Generator(np.random.PCG64(ss)), size)
        total += f.sum()
        total_sq += (f * f).sum()
    mean = total / samples
    var = max(total_sq / samples - mean * mean, 0.0) * samples / (samples - 1)
    stderr = math.sqrt(var / samples)
    scale = 0.25 if notion == "extreme" else 1.0
    return mean * scale, stderr * scale


def with_mc(report: DiscrepancyReport, P, samples: int = 1_000_000, seed: int = 0) -> DiscrepancyReport:
    mean, se = mc_oracle(P, report.notion, samples, seed)
    report.mc = MCEstimate(mean, se, samples, seed)
    return report
