"""Benchmark problems: a pure line-front testbed and DTLZ1/DTLZ2 for 2-3 objectives.

``linefront`` is a one-variable problem whose image is exactly the unit line
front, so selection dynamics can be studied with no convergence phase. The
DTLZ problems follow the standard recursive product form on the unit box,
with k = n_var - n_obj + 1 distance variables centered at 0.5.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .validation import check_objective_vector

LINEFRONT = "linefront"
DTLZ1 = "dtlz1"
DTLZ2 = "dtlz2"

PROBLEM_NAMES = (LINEFRONT, DTLZ1, DTLZ2)


@dataclass(frozen=True)
class ProblemSpec:
    """A named problem instance on the unit box [0, 1]^n.

    ``ideal`` and ``nadir`` are the analytic front corner points used to
    normalize objectives for distribution metrics.
    """

    name: str
    n_var: int
    n_obj: int
    ideal: tuple[float, ...]
    nadir: tuple[float, ...]

    @property
    def bounds(self) -> np.ndarray:
        return np.tile([0.0, 1.0], (self.n_var, 1))


def make_problem(name: str, n_var: int | None = None, n_obj: int = 2) -> ProblemSpec:
    """Build a ProblemSpec by name.

    Args:
        name: one of ``linefront``, ``dtlz1``, ``dtlz2``.
        n_var: decision dimension; defaults to 1 for linefront and to the
            customary n_obj + 4 for DTLZ1 / n_obj + 9 for DTLZ2.
        n_obj: 2 or 3 (linefront is 2-objective only).
    """
    if name not in PROBLEM_NAMES:
        raise ValueError(f"unknown problem {name!r}; choose from {PROBLEM_NAMES}")
    if n_obj not in (2, 3):
        raise ValueError(f"n_obj must be 2 or 3, got {n_obj}")
    if name == LINEFRONT:
        if n_obj != 2:
            raise ValueError("linefront is 2-objective only")
        if n_var not in (None, 1):
            raise ValueError("linefront has exactly 1 decision variable")
        return ProblemSpec(name=name, n_var=1, n_obj=2, ideal=(0.0, 0.0), nadir=(1.0, 1.0))
    if n_var is None:
        n_var = n_obj + (4 if name == DTLZ1 else 9)
    if n_var < n_obj - 1:
        raise ValueError(f"{name} needs n_var >= n_obj - 1, got {n_var}")
    front_scale = 0.5 if name == DTLZ1 else 1.0
    return ProblemSpec(
        name=name,
        n_var=n_var,
        n_obj=n_obj,
        ideal=(0.0,) * n_obj,
        nadir=(front_scale,) * n_obj,
    )


def evaluate(spec: ProblemSpec, x) -> np.ndarray:
    """Evaluate one decision vector. Input must lie in the unit box.

    Accumulations run left to right in scalar arithmetic so results are
    bit-identical wherever the same formulas are inlined (engine kernels).
    """
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (spec.n_var,):
        raise ValueError(f"expected {spec.n_var} variables, got shape {x.shape}")
    if np.any(x < 0.0) or np.any(x > 1.0):
        raise ValueError("decision vector outside the unit box")
    if spec.name == LINEFRONT:
        return np.array([x[0], 1.0 - x[0]])
    m = spec.n_obj
    n = spec.n_var
    f = np.empty(m)
    if spec.name == DTLZ1:
        g = 0.0
        for v in range(m - 1, n):
            d = x[v] - 0.5
            g += d * d - np.cos(20.0 * np.pi * d)
        g = 100.0 * ((n - m + 1) + g)
        for i in range(m):
            val = 0.5 * (1.0 + g)
            for j in range(m - 1 - i):
                val *= x[j]
            if i > 0:
                val *= 1.0 - x[m - 1 - i]
            f[i] = val
        return f
    # DTLZ2
    g = 0.0
    for v in range(m - 1, n):
        d = x[v] - 0.5
        g += d * d
    for i in range(m):
        val = 1.0 + g
        for j in range(m - 1 - i):
            val *= np.cos(x[j] * 0.5 * np.pi)
        if i > 0:
            val *= np.sin(x[m - 1 - i] * 0.5 * np.pi)
        f[i] = val
    return f


def evaluate_batch(spec: ProblemSpec, X: np.ndarray) -> np.ndarray:
    """Row-wise ``evaluate`` for a matrix of decision vectors."""
    return np.stack([evaluate(spec, X[i]) for i in range(X.shape[0])])


def front_membership_residual(spec: ProblemSpec, f) -> float:
    """Distance of an objective vector from the problem's Pareto front surface.

    DTLZ1 fronts satisfy sum(f) = 0.5, DTLZ2 fronts |f| = 1, and the line
    front f1 + f2 = 1; the residual is the absolute defect of the matching
    identity.
    """
    f = check_objective_vector(f, spec.n_obj)
    if spec.name == LINEFRONT:
        return abs(float(f.sum()) - 1.0)
    if spec.name == DTLZ1:
        return abs(float(f.sum()) - 0.5)
    return abs(float(np.linalg.norm(f)) - 1.0)


def normalize_to_unit_front(spec: ProblemSpec, f) -> np.ndarray:
    """Map objectives onto the unit analysis scale via (f - ideal) / (nadir - ideal)."""
    f = check_objective_vector(f, spec.n_obj)
    ideal = np.asarray(spec.ideal)
    nadir = np.asarray(spec.nadir)
    span = nadir - ideal
    if np.any(span <= 0):
        raise ValueError(f"{spec.name}: nadir must exceed ideal componentwise")
    return (f - ideal) / span
