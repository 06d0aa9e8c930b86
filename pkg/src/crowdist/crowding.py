"""Crowding distance with pinned duplicate semantics, plus removal policies.

The per-axis orderings use a stable sort, so equal objective values keep
their insertion order. That choice is observable: with duplicated extreme
points, the copies sit at opposite ends of the two axis orderings and up to
four solutions receive an infinite distance. All removal decisions below
inherit this tie-break, which makes runs reproducible down to the individual
removed.

Two single-removal policies are provided for (mu + 1) truncation:

- ``worst_cd_removal`` drops a solution with the smallest crowding distance,
  computed once on the full front (the standard rule).
- ``best_contribution_removal`` drops the solution whose removal leaves the
  largest minimum crowding distance, found by recomputing the front without
  each candidate in turn. It never does worse than the standard rule.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .validation import check_objective_matrix

RAW_SUM = "raw-sum"
RANGE_NORMALIZED = "range-normalized"
INSERTION_INDEX = "by-insertion-index"

_NORMALIZATIONS = (RAW_SUM, RANGE_NORMALIZED)
_TIE_BREAKS = (INSERTION_INDEX,)


@dataclass(frozen=True)
class CrowdingPolicy:
    """How crowding distances are computed.

    Args:
        normalization: ``"raw-sum"`` adds plain per-axis neighbor spans;
            ``"range-normalized"`` divides each axis term by that axis'
            range within the front (zero-range axes contribute 0).
        tie_break: ordering of equal objective values in the per-axis
            sorts. Only ``"by-insertion-index"`` (stable sort) is defined.
    """

    normalization: str = RAW_SUM
    tie_break: str = INSERTION_INDEX

    def __post_init__(self):
        if self.normalization not in _NORMALIZATIONS:
            raise ValueError(f"unknown normalization {self.normalization!r}")
        if self.tie_break not in _TIE_BREAKS:
            raise ValueError(f"unknown tie_break {self.tie_break!r}")


@dataclass(frozen=True)
class CrowdingReport:
    """Crowding distances aligned with the input front."""

    distances: np.ndarray
    infinite_count: int


def crowding_distances(front, policy: CrowdingPolicy = CrowdingPolicy()) -> CrowdingReport:
    """Compute crowding distances for one front of objective vectors.

    For each axis the front is sorted ascending (stable, so ties keep
    insertion order); the first and last solutions of each axis ordering get
    an infinite distance, and every interior solution accumulates the span
    between its two axis neighbors. Axes with zero range are skipped
    entirely, so an all-duplicate front has uniformly zero distance. Fronts
    of size 1 or 2 are all-infinite.

    Args:
        front: Sequence of objective vectors (uniform dimension).
        policy: Normalization and tie-break selection.

    Returns:
        CrowdingReport with one distance per input solution.
    """
    F = check_objective_matrix(front)
    dist = _distances(F, policy)
    return CrowdingReport(distances=dist, infinite_count=int(np.isinf(dist).sum()))


def _distances(F: np.ndarray, policy: CrowdingPolicy) -> np.ndarray:
    n, m = F.shape
    dist = np.zeros(n, dtype=np.float64)
    if n <= 2:
        dist[:] = np.inf
        return dist
    normalized = policy.normalization == RANGE_NORMALIZED
    for k in range(m):
        order = np.argsort(F[:, k], kind="stable")
        vals = F[order, k]
        axis_range = vals[-1] - vals[0]
        if axis_range <= 0.0:
            # Degenerate axis: no boundaries, no spans (keeps all-duplicate
            # fronts at uniformly zero distance rather than mixed inf/0).
            continue
        dist[order[0]] = np.inf
        dist[order[-1]] = np.inf
        spans = vals[2:] - vals[:-2]
        if normalized:
            spans = spans / axis_range
        interior = order[1:-1]
        finite = ~np.isinf(dist[interior])
        dist[interior[finite]] += spans[finite]
    return dist


def worst_cd_removal(front, policy: CrowdingPolicy = CrowdingPolicy()) -> int:
    """Index of the solution the standard truncation rule removes.

    The minimum crowding distance is taken over distances computed once on
    the full front; ties go to the lowest index. If every distance is
    infinite, index 0 is returned.
    """
    report = crowding_distances(front, policy)
    return int(np.argmin(report.distances))


def best_contribution_removal(
    front, policy: CrowdingPolicy = CrowdingPolicy()
) -> tuple[int, float]:
    """Single removal that maximizes the remaining minimum crowding distance.

    Every candidate removal is evaluated by recomputing crowding on the front
    without that solution; the candidate leaving the largest minimum finite
    distance wins (ties to the lowest index). A remainder whose distances are
    all infinite counts as +inf.

    Returns:
        (index to remove, minimum finite crowding distance after removal).
    """
    F = check_objective_matrix(front)
    n = F.shape[0]
    if n < 2:
        raise ValueError(f"need a front of at least 2 solutions, got {n}")
    best_idx = -1
    best_val = -math.inf
    for j in range(n):
        rest = np.delete(F, j, axis=0)
        val = _min_finite(_distances(rest, policy))
        if val > best_val:
            best_idx, best_val = j, val
    return best_idx, best_val


def min_finite_cd(front, policy: CrowdingPolicy = CrowdingPolicy()) -> float:
    """Minimum finite crowding distance on a front; +inf if none are finite."""
    report = crowding_distances(front, policy)
    return _min_finite(report.distances)


def _min_finite(dist: np.ndarray) -> float:
    finite = dist[np.isfinite(dist)]
    if finite.size == 0:
        return math.inf
    return float(finite.min())
