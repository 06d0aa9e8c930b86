"""Distribution diagnostics for final populations.

For two-objective problems the population is projected onto the normalized
line front and judged by the spread of consecutive gaps; duplicated extreme
solutions (a fixture of crowding-distance selection) are collapsed before
uniformity is measured, and counted separately. For three objectives only
crowding-distance summaries apply.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .crowding import CrowdingPolicy, crowding_distances
from .dominance import non_dominated_sort
from .validation import check_objective_matrix


@dataclass(frozen=True)
class GapStats:
    """Statistics of consecutive gaps between deduplicated line positions.

    ``cv`` is the population coefficient of variation (stdev / mean); the
    fields are None when fewer than two gaps exist.
    """

    gaps: tuple[float, ...]
    mean: float | None
    stdev: float | None
    cv: float | None


@dataclass(frozen=True)
class CdHistogram:
    """Histogram of finite crowding distances; infinities counted apart."""

    bin_edges: tuple[float, ...]
    counts: tuple[int, ...]
    infinite_count: int


def project_to_line(normalized_F, eps_front: float = 1e-3) -> tuple[np.ndarray, int]:
    """Project normalized 2-objective points onto the line front.

    A point (f1, f2) within ``eps_front`` of the line f1 + f2 = 1 maps to
    t = f1; points failing the residual check are excluded and counted.

    Returns:
        (sorted t values, number of excluded points).
    """
    F = check_objective_matrix(normalized_F, n_obj=2)
    residual = np.abs(F.sum(axis=1) - 1.0)
    on_front = residual <= eps_front
    ts = np.sort(F[on_front, 0])
    return ts, int((~on_front).sum())


def dedup_positions(ts, dedup_eps: float = 1e-6) -> np.ndarray:
    """Merge positions within ``dedup_eps`` of each other to their mean.

    Merging is single-linkage over the sorted positions and idempotent: the
    means of two distinct groups are separated by more than ``dedup_eps``.
    """
    arr = np.sort(np.asarray(ts, dtype=np.float64))
    if arr.size == 0:
        return arr
    groups = []
    start = 0
    for i in range(1, arr.size):
        if arr[i] - arr[i - 1] > dedup_eps:
            groups.append(arr[start:i].mean())
            start = i
    groups.append(arr[start:].mean())
    return np.array(groups)


def gap_statistics(ts, dedup_eps: float = 1e-6) -> GapStats:
    """Uniformity of line positions as the gap coefficient of variation.

    Positions are deduplicated, the endpoints 0 and 1 are included as gap
    boundaries, and the gaps between consecutive distinct positions are
    summarized. A perfectly uniform placement has cv = 0.
    """
    arr = np.asarray(ts, dtype=np.float64)
    if arr.size < 3:
        raise ValueError(f"need at least 3 positions, got {arr.size}")
    merged = dedup_positions(np.concatenate([arr, [0.0, 1.0]]), dedup_eps)
    gaps = np.diff(merged)
    if gaps.size < 2:
        return GapStats(gaps=tuple(gaps), mean=None, stdev=None, cv=None)
    mean = float(gaps.mean())
    stdev = float(gaps.std())
    cv = stdev / mean if mean > 0 else math.inf
    return GapStats(gaps=tuple(gaps), mean=mean, stdev=stdev, cv=cv)


def duplicate_extremes(ts, eps: float = 1e-3) -> tuple[int, int]:
    """Counts of positions within eps of t=0 and of t=1."""
    arr = np.asarray(ts, dtype=np.float64)
    return int((np.abs(arr) <= eps).sum()), int((np.abs(arr - 1.0) <= eps).sum())


def cd_histogram(front, policy: CrowdingPolicy = CrowdingPolicy(), bins=10) -> CdHistogram:
    """Histogram of one front's finite crowding distances.

    Args:
        front: Objective vectors of one front.
        bins: Anything ``numpy.histogram`` accepts (count or explicit edges).
    """
    report = crowding_distances(front, policy)
    finite = report.distances[np.isfinite(report.distances)]
    if np.ndim(bins) == 0 and (not float(bins).is_integer() or bins <= 0):
        raise ValueError(f"bins must be a positive integer or explicit edges, got {bins!r}")
    try:
        counts, edges = np.histogram(finite, bins=bins)
    except ValueError:
        # numpy rejects integer bin counts when the data range is nonzero but
        # below bin-width resolution; pad like its identical-value convention.
        lo, hi = float(finite.min()), float(finite.max())
        counts, edges = np.histogram(finite, bins=bins, range=(lo - 0.5, hi + 0.5))
    return CdHistogram(
        bin_edges=tuple(float(e) for e in edges),
        counts=tuple(int(c) for c in counts),
        infinite_count=report.infinite_count,
    )


def population_min_finite_cd(F, policy: CrowdingPolicy) -> float:
    """Minimum finite crowding distance over a population, front by front.

    Crowding is computed within each non-domination level, matching how the
    engines assign fitness; +inf when every distance is infinite.
    """
    F = check_objective_matrix(F)
    best = math.inf
    for front in non_dominated_sort(F):
        report = crowding_distances(F[front], policy)
        finite = report.distances[np.isfinite(report.distances)]
        if finite.size:
            best = min(best, float(finite.min()))
    return best
