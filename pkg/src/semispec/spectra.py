"""Spectrum samples, interval unions, and the Hausdorff metric.

Computed spectra are carried as sorted point samples with provenance
metadata; interval unions are a presentation layer built by clustering
consecutive samples.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class SampleMeta:
    """Provenance of a spectrum sample: h = p/q, grid sizes, solver tol."""

    p: int
    q: int
    n1: int
    n2: int | None = None
    theta2: float | None = None
    solver_tol: float = 1e-13


@dataclass(frozen=True)
class SpectrumSample:
    """A sorted multiset of eigenvalues with grid provenance."""

    values: np.ndarray
    meta: SampleMeta | None = None

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.ndim != 1 or vals.size == 0:
            raise ValueError("spectrum sample must be a nonempty 1-d array")
        if not np.all(np.isfinite(vals)):
            raise ValueError("spectrum sample contains non-finite values")
        if np.any(np.diff(vals) < 0):
            vals = np.sort(vals)
        object.__setattr__(self, "values", vals)

    @property
    def min(self) -> float:
        return float(self.values[0])

    @property
    def max(self) -> float:
        return float(self.values[-1])

    def __len__(self) -> int:
        return int(self.values.size)


@dataclass(frozen=True)
class IntervalUnion:
    """Sorted disjoint closed intervals [lo_i, hi_i]."""

    intervals: tuple[tuple[float, float], ...]
    gap_tol: float

    def covers(self, x: float, slack: float = 0.0) -> bool:
        return any(lo - slack <= x <= hi + slack for lo, hi in self.intervals)

    @property
    def total_length(self) -> float:
        return float(sum(hi - lo for lo, hi in self.intervals))

    @property
    def hull(self) -> tuple[float, float]:
        return self.intervals[0][0], self.intervals[-1][1]


def merge(sample: SpectrumSample, gap_tol: float) -> IntervalUnion:
    """Coalesce consecutive samples closer than gap_tol into closed intervals."""
    if gap_tol <= 0:
        raise ValueError("gap_tol must be positive")
    vals = sample.values
    # indices where a new cluster starts
    breaks = np.nonzero(np.diff(vals) >= gap_tol)[0]
    starts = np.concatenate(([0], breaks + 1))
    ends = np.concatenate((breaks, [vals.size - 1]))
    intervals = tuple((float(vals[s]), float(vals[e])) for s, e in zip(starts, ends))
    return IntervalUnion(intervals=intervals, gap_tol=gap_tol)


def merge_intervals(intervals, gap_tol: float) -> tuple[tuple[float, float], ...]:
    """Union of closed intervals, coalescing gaps smaller than gap_tol."""
    ivs = sorted((float(lo), float(hi)) for lo, hi in intervals)
    out: list[tuple[float, float]] = []
    for lo, hi in ivs:
        if out and lo <= out[-1][1] + gap_tol:
            out[-1] = (out[-1][0], max(out[-1][1], hi))
        else:
            out.append((lo, hi))
    return tuple(out)


def _directed_sup(a: np.ndarray, b: np.ndarray) -> float:
    """sup over x in a of dist(x, b), both arrays sorted ascending."""
    pos = np.searchsorted(b, a)
    right = b[np.minimum(pos, b.size - 1)]
    left = b[np.maximum(pos - 1, 0)]
    dist = np.minimum(np.abs(a - right), np.abs(a - left))
    return float(dist.max())


def hausdorff(a: SpectrumSample | np.ndarray, b: SpectrumSample | np.ndarray) -> float:
    """Hausdorff distance between two sorted sample sets.

    Nearest neighbours are found by bisection into the sorted partner
    array, so the cost is O((|A|+|B|) log) with no pairwise matrix.
    """
    va = a.values if isinstance(a, SpectrumSample) else np.sort(np.asarray(a, dtype=float))
    vb = b.values if isinstance(b, SpectrumSample) else np.sort(np.asarray(b, dtype=float))
    if va.size == 0 or vb.size == 0:
        raise ValueError("hausdorff distance needs nonempty samples")
    return max(_directed_sup(va, vb), _directed_sup(vb, va))


def write_long_csv(path, rows, header=("p", "q", "h", "theta1", "theta2", "k", "lambda")):
    """Write long-format spectrum rows with 17 significant digits."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def _fmt(v) -> str:
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return format(float(v), ".17g")


__all__ = [
    "SampleMeta",
    "SpectrumSample",
    "IntervalUnion",
    "merge",
    "merge_intervals",
    "hausdorff",
    "write_long_csv",
]
