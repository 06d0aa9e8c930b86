"""Optimal placements for the minimum crowding distance on a linear front.

Solutions live on the unit line between (0, 1) and (1, 0) in normalized
objective space, parameterized by t in [0, 1] (the point is (t, 1 - t)). The
two extreme points are fixed, carry an infinite crowding distance, and are
excluded from the objective; the placement problem assigns the remaining
interior solutions (duplicates allowed) to maximize the smallest finite
crowding distance.

Three independent routes to the optimum are provided and cross-checked:

- ``closed_form_value``: 2 / (ceil(N / 2) - 1), with the paired-location
  witness built by ``optimal_placement``.
- ``maximin_solve``: bisection on the target value, feasibility decided by a
  greedy left-packed assignment.
- ``grid_oracle``: exhaustive branch-and-bound search over a discrete grid.

The optimum is never the uniform spacing for N >= 4: paired duplicates at
uniformly spaced locations win, e.g. six solutions place two copies at each
extreme and two at the center (value 1) while the uniform spacing only
reaches 0.8.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CapacityError

UNIQUE = "unique"
CONTINUUM = "continuum"
FINITE_FAMILY = "finite-family"


@dataclass(frozen=True)
class LinePlacement:
    """Interior solutions on the unit line, as sorted positions t in [0, 1].

    The fixed extremes at t=0 and t=1 are implicit and are not listed;
    an interior copy sitting exactly on an extreme is a legal entry.
    """

    interior: tuple[float, ...]

    def __post_init__(self):
        ts = tuple(float(t) for t in self.interior)
        if any(not (0.0 <= t <= 1.0) for t in ts):
            raise ValueError("interior positions must lie in [0, 1]")
        if any(ts[i] > ts[i + 1] for i in range(len(ts) - 1)):
            ts = tuple(sorted(ts))
        object.__setattr__(self, "interior", ts)

    @property
    def n_solutions(self) -> int:
        """Total solution count including the two fixed extremes."""
        return len(self.interior) + 2

    def points(self) -> np.ndarray:
        """All N solutions as objective vectors, extremes included."""
        ts = np.concatenate([[0.0], np.asarray(self.interior), [1.0]])
        return np.column_stack([ts, 1.0 - ts])


@dataclass(frozen=True)
class MaximinResult:
    """Optimal minimum crowding distance plus one witness placement.

    ``uniqueness`` classifies the optimal set: ``unique``, ``continuum``, or
    ``finite-family``; ``family_note`` describes the free parameter.
    """

    value: float
    witness: LinePlacement
    uniqueness: str
    family_note: str = ""


def line_crowding(placement: LinePlacement) -> np.ndarray:
    """Crowding distance of each interior solution on the line.

    With neighbors taken in canonical order (extreme at 0, interior ascending
    with duplicate order preserved, extreme at 1), interior solution i has
    distance 2 * (t_{i+1} - t_{i-1}): both objectives contribute the same gap
    on the 45-degree line.

    Returns:
        Array of crowding distances, one per interior solution, in order.
    """
    ts = [0.0, *placement.interior, 1.0]
    k = len(placement.interior)
    return np.array([2.0 * (ts[i + 1] - ts[i - 1]) for i in range(1, k + 1)])


def closed_form_value(n: int) -> float:
    """Largest achievable minimum crowding distance for n total solutions.

    Equals 2 / (ceil(n / 2) - 1): the optimum places two solutions on each
    of ceil(n / 2) evenly spaced locations (one location keeps a single copy
    when n is odd). Values for n in 3..6 are 2, 2, 1, 1; this general form is
    cross-validated against ``maximin_solve`` and ``grid_oracle``.
    """
    if n < 3:
        raise ValueError(f"need at least 3 solutions, got {n}")
    return 2.0 / (math.ceil(n / 2) - 1)


def optimal_placement(n: int) -> MaximinResult:
    """Canonical optimal distribution of n solutions on the line.

    Two solutions sit on each of L = ceil(n / 2) locations at j / (L - 1);
    for odd n the location at t=0 keeps a single copy. The two implicit
    extremes occupy one slot at t=0 and one at t=1, so the witness lists the
    remaining n - 2 interior positions.

    The ``uniqueness`` field classifies the full optimal set: a continuum for
    n in {3, 5} (the value constrains positions only through inequalities),
    a finite family of L location-assignments for larger odd n, and unique
    for even n.
    """
    if n < 3:
        raise ValueError(f"need at least 3 solutions, got {n}")
    value = closed_form_value(n)
    n_loc = math.ceil(n / 2)
    locations = [j / (n_loc - 1) for j in range(n_loc)]
    counts = [2] * n_loc
    if n % 2 == 1:
        counts[0] = 1
    # The implicit extremes use up one slot at each end.
    counts[0] -= 1
    counts[-1] -= 1
    interior: list[float] = []
    for t, c in zip(locations, counts):
        interior.extend([t] * c)
    witness = LinePlacement(tuple(interior))

    if n == 3:
        uniq, note = CONTINUUM, "any interior position is optimal"
    elif n == 5:
        uniq, note = CONTINUUM, (
            "center solution at t=0.5; outer pair anywhere with gap >= 0.5"
        )
    elif n % 2 == 1:
        uniq, note = FINITE_FAMILY, (
            f"{n_loc} assignments: the single-copy location may be any of the "
            f"{n_loc} paired locations"
        )
    else:
        uniq, note = UNIQUE, ""
    return MaximinResult(value=value, witness=witness, uniqueness=uniq, family_note=note)


def maximin_solve(k_interior: int, tol: float = 1e-12) -> MaximinResult:
    """Numerically maximize the minimum crowding distance of k interior points.

    Bisects the target value z over [0, 2]. Feasibility of z is decided by
    the greedy left-packed assignment t_1 = 0, t_{i+1} = max(t_i,
    t_{i-1} + z/2) with the implicit extreme t_0 = 0; z is feasible iff
    t_k <= 1 and t_{k-1} <= 1 - z/2 (the last interior point's own span).

    Returns:
        MaximinResult with the supremum feasible value (within tol) and the
        greedy witness. Uniqueness is classified as in ``optimal_placement``.
    """
    if k_interior < 1:
        raise ValueError(f"need at least 1 interior solution, got {k_interior}")
    if not (tol > 0):
        raise ValueError(f"tolerance must be positive, got {tol}")
    lo, hi = 0.0, 2.0
    if _greedy_feasible(k_interior, hi) is not None:
        lo = hi
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if _greedy_feasible(k_interior, mid) is not None:
            lo = mid
        else:
            hi = mid
    witness = _greedy_feasible(k_interior, lo)
    assert witness is not None
    n = k_interior + 2
    exact = optimal_placement(n)
    return MaximinResult(
        value=lo,
        witness=LinePlacement(tuple(witness)),
        uniqueness=exact.uniqueness,
        family_note=exact.family_note,
    )


def _greedy_feasible(k: int, z: float) -> list[float] | None:
    """Left-packed interior positions achieving min distance z, or None."""
    half = z / 2.0
    ts = [0.0]
    prev2 = 0.0  # t_{i-1} two places back, seeded with the implicit extreme
    for _ in range(1, k):
        nxt = max(ts[-1], prev2 + half)
        prev2 = ts[-1]
        ts.append(nxt)
    if ts[-1] > 1.0 or prev2 > 1.0 - half:
        return None
    return ts


def grid_oracle(k_interior: int, resolution: float = 0.01, node_budget: int = 50_000_000) -> MaximinResult:
    """Exhaustive maximin search over a discrete grid of line positions.

    Enumerates non-decreasing k-tuples on the grid {0, r, 2r, ..., 1} by
    depth-first search with two exact prunes (a fixed-distance bound and a
    greedy completion check), maximizing the minimum crowding distance. All
    arithmetic is on integer grid indices, so the search is exact on the
    grid; the grid optimum is within 4 * resolution of the continuous one.

    Raises:
        CapacityError: if the instance exceeds the enumeration budget.
    """
    if k_interior < 1:
        raise ValueError(f"need at least 1 interior solution, got {k_interior}")
    if not (0 < resolution <= 0.5):
        raise ValueError(f"resolution must be in (0, 0.5], got {resolution}")
    g = round(1.0 / resolution)
    if abs(g * resolution - 1.0) > 1e-9:
        raise ValueError("resolution must evenly divide 1")
    if (g + 1) ** min(k_interior, 2) * (k_interior + 1) > node_budget:
        raise CapacityError(
            f"grid of {g + 1} points with {k_interior} interior solutions exceeds the budget"
        )

    k = k_interior
    # Incumbent from two structured candidates, evaluated on the grid.
    best_js, best_gap = None, -1
    for cand in (_uniform_candidate(k, g), _paired_candidate(k, g)):
        gap = _min_int_gap(cand, g)
        if gap > best_gap:
            best_js, best_gap = cand, gap

    js = [0] * k
    nodes = 0
    stack = [(0, 0)]  # (depth, next value to try at this depth)
    while stack:
        nodes += 1
        if nodes > node_budget:
            raise CapacityError(f"enumeration exceeded {node_budget} nodes")
        depth, v = stack.pop()
        if v > g:
            continue
        stack.append((depth, v + 1))
        js[depth] = v
        # Fixed distance of interior point depth-1: positions depth and depth-2.
        prev2 = js[depth - 2] if depth >= 2 else 0
        if depth >= 1 and v - prev2 <= best_gap:
            continue
        if not _int_completion_feasible(js, depth, k, g, best_gap + 1):
            continue
        if depth == k - 1:
            gap = _min_int_gap(js, g)
            if gap > best_gap:
                best_gap, best_js = gap, list(js)
        else:
            stack.append((depth + 1, v))

    assert best_js is not None
    r = 1.0 / g
    value = 2.0 * r * best_gap
    witness = LinePlacement(tuple(j * r for j in best_js))
    exact = optimal_placement(k + 2)
    return MaximinResult(
        value=value,
        witness=witness,
        uniqueness=exact.uniqueness,
        family_note=exact.family_note,
    )


def _min_int_gap(js: list[int], g: int) -> int:
    """Minimum over interior points of (next neighbor - previous neighbor)."""
    full = [0, *js, g]
    return min(full[i + 1] - full[i - 1] for i in range(1, len(js) + 1))


def _uniform_candidate(k: int, g: int) -> list[int]:
    return [round(i * g / (k + 1)) for i in range(1, k + 1)]


def _paired_candidate(k: int, g: int) -> list[int]:
    n_loc = math.ceil((k + 2) / 2)
    counts = [2] * n_loc
    if (k + 2) % 2 == 1:
        counts[0] = 1
    counts[0] -= 1
    counts[-1] -= 1
    js: list[int] = []
    for j, c in zip(range(n_loc), counts):
        js.extend([round(j * g / (n_loc - 1))] * c)
    return js


def _int_completion_feasible(js: list[int], depth: int, k: int, g: int, need: int) -> bool:
    """Can positions after ``depth`` be chosen so every interior gap >= need?"""
    if depth == 0:
        t_prev2, t_prev = 0, js[0]
    else:
        t_prev2, t_prev = js[depth - 1], js[depth]
    for _ in range(depth + 1, k):
        t_next = max(t_prev, t_prev2 + need)
        t_prev2, t_prev = t_prev, t_next
    if t_prev > g:
        return False
    return t_prev2 <= g - need


def is_optimal_placement(placement: LinePlacement, n: int, tol: float = 1e-9) -> bool:
    """Whether a placement attains the optimal value for n total solutions.

    Optimality is a value criterion, not a unique geometry: any placement
    whose minimum interior crowding distance reaches the optimum (within tol)
    qualifies.
    """
    if placement.n_solutions != n:
        raise ValueError(
            f"placement has {placement.n_solutions} solutions (with extremes), expected {n}"
        )
    return bool(line_crowding(placement).min() >= closed_form_value(n) - tol)
