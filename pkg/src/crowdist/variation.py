"""Real-coded variation operators under a seeded randomness contract.

All operators draw from a caller-owned ``numpy.random.Generator``; there is
no global randomness, so a run that owns its stream is reproducible and
independent runs can execute concurrently. The exact draw order below is
part of the contract (the compiled engine kernels consume the same stream in
the same order):

- SBX: one uniform for whether the pair crosses at all, then per variable one
  uniform for the exchange coin and, only if it fires, one uniform for the
  spread factor.
- Polynomial mutation: per variable one uniform for the mutation coin and,
  only if it fires, one uniform for the perturbation.
- Binary tournament: two index draws with replacement.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import StateError
from .population import Individual
from .validation import check_bounds, check_in_bounds, check_rng


@dataclass(frozen=True)
class VariationConfig:
    """Operator parameters: SBX and polynomial mutation indices, rates, bounds."""

    bounds: np.ndarray = field(default_factory=lambda: np.array([[0.0, 1.0]]))
    sbx_eta: float = 20.0
    sbx_prob: float = 1.0
    mut_eta: float = 20.0
    mut_prob: float | None = None  # None means 1 / n_var

    def __post_init__(self):
        object.__setattr__(self, "bounds", check_bounds(self.bounds))
        if self.sbx_eta <= 0 or self.mut_eta <= 0:
            raise ValueError("distribution indices must be positive")
        if not (0.0 <= self.sbx_prob <= 1.0):
            raise ValueError(f"sbx_prob must be in [0, 1], got {self.sbx_prob}")
        if self.mut_prob is not None and not (0.0 <= self.mut_prob <= 1.0):
            raise ValueError(f"mut_prob must be in [0, 1], got {self.mut_prob}")

    @property
    def n_var(self) -> int:
        return self.bounds.shape[0]

    @property
    def mutation_rate(self) -> float:
        return 1.0 / self.n_var if self.mut_prob is None else self.mut_prob


def sbx_spread(u: float, eta: float) -> float:
    """Spread factor of simulated binary crossover for one uniform draw."""
    if u <= 0.5:
        return (2.0 * u) ** (1.0 / (eta + 1.0))
    return (2.0 * (1.0 - u)) ** (-1.0 / (eta + 1.0))


def sbx_crossover(p1, p2, cfg: VariationConfig, rng) -> tuple[np.ndarray, np.ndarray]:
    """Simulated binary crossover of two parents.

    The whole pair recombines with probability ``cfg.sbx_prob``; when it does,
    each variable is exchanged with probability 1/2 using the symmetric child
    form c1, c2 = mean -/+ beta * (p2 - p1) / 2, with the spread factor beta
    drawn from the polynomial distribution with index ``cfg.sbx_eta``.
    Children are clipped to the box bounds. The sum c1 + c2 equals p1 + p2
    per variable whenever no clipping occurs.

    Returns:
        Two child decision vectors.
    """
    rng = check_rng(rng)
    x1 = check_in_bounds(p1, cfg.bounds)
    x2 = check_in_bounds(p2, cfg.bounds)
    c1 = x1.copy()
    c2 = x2.copy()
    if rng.random() < cfg.sbx_prob:
        for v in range(cfg.n_var):
            if rng.random() <= 0.5:
                beta = sbx_spread(rng.random(), cfg.sbx_eta)
                mean = 0.5 * (x1[v] + x2[v])
                diff = 0.5 * (x2[v] - x1[v])
                c1[v] = mean - beta * diff
                c2[v] = mean + beta * diff
    np.clip(c1, cfg.bounds[:, 0], cfg.bounds[:, 1], out=c1)
    np.clip(c2, cfg.bounds[:, 0], cfg.bounds[:, 1], out=c2)
    return c1, c2


def mutation_delta(u: float, x01: float, eta: float) -> float:
    """Normalized polynomial-mutation perturbation for one uniform draw.

    ``x01`` is the variable's position within its bounds, in [0, 1]; the
    returned delta keeps x01 + delta inside [0, 1] by construction.
    """
    if u < 0.5:
        val = 2.0 * u + (1.0 - 2.0 * u) * (1.0 - x01) ** (eta + 1.0)
        return val ** (1.0 / (eta + 1.0)) - 1.0
    val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * x01 ** (eta + 1.0)
    return 1.0 - val ** (1.0 / (eta + 1.0))


def polynomial_mutation(x, cfg: VariationConfig, rng) -> np.ndarray:
    """Bounded polynomial mutation.

    Each variable is independently perturbed with probability
    ``cfg.mutation_rate``; the perturbation magnitude follows the bounded
    polynomial distribution with index ``cfg.mut_eta``. Output always
    respects the box bounds.
    """
    rng = check_rng(rng)
    out = check_in_bounds(x, cfg.bounds).copy()
    rate = cfg.mutation_rate
    for v in range(cfg.n_var):
        if rng.random() < rate:
            lo, hi = cfg.bounds[v]
            width = hi - lo
            x01 = (out[v] - lo) / width
            out[v] = lo + (x01 + mutation_delta(rng.random(), x01, cfg.mut_eta)) * width
    np.clip(out, cfg.bounds[:, 0], cfg.bounds[:, 1], out=out)
    return out


def binary_tournament(pop: list[Individual], rng) -> int:
    """Mating selection: better rank wins, then larger crowding distance.

    Two indices are drawn uniformly with replacement; on a full tie (equal
    rank and crowding, or the same index drawn twice) the first draw wins.

    Returns:
        The winning index into ``pop``.
    """
    rng = check_rng(rng)
    if not pop:
        raise ValueError("population is empty")
    for ind in pop:
        if not ind.fitness_assigned:
            raise StateError("binary tournament requires assigned rank and crowding")
    i = int(rng.integers(0, len(pop)))
    j = int(rng.integers(0, len(pop)))
    return tournament_winner(pop[i].rank, pop[i].crowding, pop[j].rank, pop[j].crowding, i, j)


def tournament_winner(rank_i, crowd_i, rank_j, crowd_j, i: int, j: int) -> int:
    """Deterministic comparison rule shared by all tournament paths."""
    if rank_j < rank_i:
        return j
    if rank_i == rank_j and crowd_j > crowd_i:
        return j
    return i
