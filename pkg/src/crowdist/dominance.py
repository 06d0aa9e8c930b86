"""Pareto dominance and non-dominated sorting (minimization).

The sorting routine uses the classic O(M * N^2) bookkeeping scheme: one pass
builds the pairwise dominance relation, then fronts are peeled off by
domination count. ``peel_fronts_oracle`` is an intentionally naive
re-statement of the same partition (repeatedly extract the non-dominated
subset) kept as an independent cross-check.
"""

from __future__ import annotations

import numpy as np

from .validation import check_objective_matrix, check_objective_vector


def dominates(a, b) -> bool:
    """Check whether objective vector ``a`` Pareto-dominates ``b``.

    Under minimization, ``a`` dominates ``b`` iff a_i <= b_i for every
    objective and a_j < b_j for at least one. A vector never dominates itself,
    and two copies of the same point are mutually non-dominating.

    Args:
        a: Objective vector.
        b: Objective vector of the same length.

    Returns:
        True iff ``a`` dominates ``b``.
    """
    a = check_objective_vector(a)
    b = check_objective_vector(b)
    if a.size != b.size:
        raise ValueError(f"dimension mismatch: {a.size} vs {b.size}")
    return bool(np.all(a <= b) and np.any(a < b))


def dominance_matrix(F: np.ndarray) -> np.ndarray:
    """Pairwise dominance for a whole objective matrix.

    Args:
        F: Objective matrix of shape (n, m).

    Returns:
        Boolean (n, n) array where entry [i, j] is True iff row i dominates
        row j.
    """
    a = F[:, np.newaxis, :]
    b = F[np.newaxis, :, :]
    return np.all(a <= b, axis=2) & np.any(a < b, axis=2)


def non_dominated_sort(pop) -> list[list[int]]:
    """Partition a population of objective vectors into ranked fronts.

    Front 0 holds the non-dominated solutions; front k holds the solutions
    that become non-dominated once fronts 0..k-1 are removed. Duplicate
    points are mutually non-dominating and always share a front.

    Args:
        pop: Sequence of objective vectors (uniform dimension, non-empty).

    Returns:
        List of fronts, each a sorted list of indices into ``pop``. The
        fronts are disjoint and jointly cover the population.
    """
    F = check_objective_matrix(pop)
    n = F.shape[0]
    dom = dominance_matrix(F)
    count = dom.sum(axis=0)

    fronts: list[list[int]] = []
    remaining = np.arange(n)
    while remaining.size:
        mask = count[remaining] == 0
        front = remaining[mask]
        fronts.append([int(i) for i in front])
        remaining = remaining[~mask]
        if remaining.size:
            count[remaining] -= dom[np.ix_(front, remaining)].sum(axis=0)
    return fronts


def peel_fronts_oracle(pop) -> list[list[int]]:
    """Naive front partition: repeatedly extract the non-dominated subset.

    Deliberately brute force (pairwise scalar checks, no bookkeeping); used as
    the reference against which ``non_dominated_sort`` is tested.
    """
    F = check_objective_matrix(pop)
    remaining = list(range(F.shape[0]))
    fronts: list[list[int]] = []
    while remaining:
        front = []
        for i in remaining:
            if not any(_dominates_rows(F, j, i) for j in remaining if j != i):
                front.append(i)
        fronts.append(front)
        remaining = [i for i in remaining if i not in front]
    return fronts


def _dominates_rows(F: np.ndarray, i: int, j: int) -> bool:
    le = True
    lt = False
    for k in range(F.shape[1]):
        if F[i, k] > F[j, k]:
            le = False
            break
        if F[i, k] < F[j, k]:
            lt = True
    return le and lt


def ranks_from_fronts(fronts: list[list[int]], n: int) -> np.ndarray:
    """Flatten a front partition into a per-individual rank array."""
    rank = np.full(n, -1, dtype=np.int64)
    for r, front in enumerate(fronts):
        for i in front:
            rank[i] = r
    if np.any(rank < 0):
        raise ValueError("front partition does not cover the population")
    return rank
