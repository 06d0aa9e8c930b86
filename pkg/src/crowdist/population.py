"""Individual and population containers.

``Individual`` is the scalar view used by selection operators; ``Population``
is the array-of-struct view the engines work on. Rank and crowding distance
start out explicitly unassigned (None) rather than as sentinel numbers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


@dataclass
class Individual:
    """One solution: decision vector, objectives, and assigned fitness.

    ``rank`` is the 0-based front index; ``crowding`` is a nonnegative float
    and may be ``math.inf``. Both are None until fitness assignment.
    """

    decision: np.ndarray
    objectives: np.ndarray
    rank: int | None = None
    crowding: float | None = None

    def __post_init__(self):
        self.decision = np.asarray(self.decision, dtype=np.float64)
        self.objectives = np.asarray(self.objectives, dtype=np.float64)
        if self.rank is not None and self.rank < 0:
            raise ValueError("rank must be a nonnegative front index")
        if self.crowding is not None:
            if math.isnan(self.crowding) or self.crowding < 0:
                raise ValueError("crowding distance must be >= 0 (or +inf)")

    @property
    def fitness_assigned(self) -> bool:
        return self.rank is not None and self.crowding is not None


@dataclass
class Population:
    """Column-wise population storage.

    ``ranks`` and ``crowding`` are None before fitness assignment; once set
    they are aligned with the rows of ``decisions`` / ``objectives``.
    """

    decisions: np.ndarray
    objectives: np.ndarray
    ranks: np.ndarray | None = field(default=None)
    crowding: np.ndarray | None = field(default=None)

    def __len__(self) -> int:
        return self.objectives.shape[0]

    @property
    def n_var(self) -> int:
        return self.decisions.shape[1]

    @property
    def n_obj(self) -> int:
        return self.objectives.shape[1]

    def individuals(self) -> list[Individual]:
        """Expand into scalar ``Individual`` records."""
        out = []
        for i in range(len(self)):
            out.append(
                Individual(
                    decision=self.decisions[i].copy(),
                    objectives=self.objectives[i].copy(),
                    rank=None if self.ranks is None else int(self.ranks[i]),
                    crowding=None if self.crowding is None else float(self.crowding[i]),
                )
            )
        return out

    @classmethod
    def from_individuals(cls, individuals: list[Individual]) -> "Population":
        if not individuals:
            raise ValueError("population is empty")
        decisions = np.stack([ind.decision for ind in individuals])
        objectives = np.stack([ind.objectives for ind in individuals])
        ranks = None
        crowding = None
        if all(ind.rank is not None for ind in individuals):
            ranks = np.array([ind.rank for ind in individuals], dtype=np.int64)
        if all(ind.crowding is not None for ind in individuals):
            crowding = np.array([ind.crowding for ind in individuals], dtype=np.float64)
        return cls(decisions=decisions, objectives=objectives, ranks=ranks, crowding=crowding)
