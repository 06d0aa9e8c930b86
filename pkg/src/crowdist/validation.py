"""Input validation helpers.

These mirror the spirit of scikit-learn's ``check_array`` / ``check_random_state``
utilities: normalize user input to canonical numpy containers and fail early
with a clear message.
"""

from __future__ import annotations

import numpy as np


def check_objective_vector(f, n_obj: int | None = None) -> np.ndarray:
    """Coerce one objective vector to a 1-D float array and validate it.

    Entries must be finite (reserving infinity for crowding distances) and the
    vector must have at least two objectives.

    Args:
        f: Array-like of objective values.
        n_obj: If given, required length.

    Returns:
        1-D float64 array.
    """
    arr = np.asarray(f, dtype=np.float64)
    if arr.ndim != 1:
        raise ValueError(f"objective vector must be 1-D, got shape {arr.shape}")
    if arr.size < 2:
        raise ValueError(f"need at least 2 objectives, got {arr.size}")
    if n_obj is not None and arr.size != n_obj:
        raise ValueError(f"expected {n_obj} objectives, got {arr.size}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("objective values must be finite")
    return arr


def check_objective_matrix(F, n_obj: int | None = None) -> np.ndarray:
    """Coerce a population's objectives to a 2-D float array and validate it.

    Args:
        F: Array-like of shape (n_points, n_obj), or a sequence of vectors.
        n_obj: If given, required number of columns.

    Returns:
        2-D float64 array with at least one row and two columns.
    """
    arr = np.asarray(F, dtype=np.float64)
    if arr.ndim == 1 and arr.size == 0:
        raise ValueError("population of objective vectors is empty")
    if arr.ndim != 2:
        raise ValueError(f"objective matrix must be 2-D, got shape {arr.shape}")
    if arr.shape[0] == 0:
        raise ValueError("population of objective vectors is empty")
    if arr.shape[1] < 2:
        raise ValueError(f"need at least 2 objectives, got {arr.shape[1]}")
    if n_obj is not None and arr.shape[1] != n_obj:
        raise ValueError(f"expected {n_obj} objectives, got {arr.shape[1]}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("objective values must be finite")
    return arr


def check_bounds(bounds, n_var: int | None = None) -> np.ndarray:
    """Validate per-variable (lower, upper) bounds.

    Returns:
        Array of shape (n_var, 2) with lower < upper in every row.
    """
    arr = np.asarray(bounds, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError(f"bounds must have shape (n_var, 2), got {arr.shape}")
    if n_var is not None and arr.shape[0] != n_var:
        raise ValueError(f"expected bounds for {n_var} variables, got {arr.shape[0]}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("bounds must be finite")
    if not np.all(arr[:, 0] < arr[:, 1]):
        raise ValueError("every lower bound must be strictly below its upper bound")
    return arr


def check_in_bounds(x, bounds: np.ndarray) -> np.ndarray:
    """Validate a decision vector against box bounds."""
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim != 1:
        raise ValueError(f"decision vector must be 1-D, got shape {arr.shape}")
    if arr.size != bounds.shape[0]:
        raise ValueError(f"expected {bounds.shape[0]} variables, got {arr.size}")
    if np.any(arr < bounds[:, 0]) or np.any(arr > bounds[:, 1]):
        raise ValueError("decision vector violates box bounds")
    return arr


def check_rng(seed) -> np.random.Generator:
    """Normalize a seed or generator to a ``numpy.random.Generator``.

    Accepts an existing Generator (returned as-is, so a caller-owned stream is
    never reseeded), an integer seed, or None for OS entropy.
    """
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)
