"""The two generation-update schemes: generational (mu + mu) and steady state (mu + 1).

A run owns exactly one seeded random stream and is fully deterministic: the
same configuration and seed reproduce the same trajectory bit for bit. The
inner loops are compiled (see ``_kernels``); the public
``environmental_selection`` below is the plain-Python statement of the
survivor rule and is what the kernels are tested against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from . import _kernels as K
from .crowding import RANGE_NORMALIZED, RAW_SUM, CrowdingPolicy, crowding_distances
from .dominance import non_dominated_sort
from .metrics import gap_statistics, project_to_line
from .population import Individual, Population
from .problems import LINEFRONT, ProblemSpec, evaluate_batch, make_problem, normalize_to_unit_front
from .variation import VariationConfig

MU_PLUS_MU = "mu-plus-mu"
MU_PLUS_ONE = "mu-plus-one"
SCHEMES = (MU_PLUS_MU, MU_PLUS_ONE)

WORST_CD = "worst-cd"
BEST_CONTRIBUTION = "best-contribution"
REMOVALS = (WORST_CD, BEST_CONTRIBUTION)

_PROBLEM_IDS = {"linefront": K.PROB_LINEFRONT, "dtlz1": K.PROB_DTLZ1, "dtlz2": K.PROB_DTLZ2}
_REMOVAL_IDS = {WORST_CD: K.REMOVAL_WORST_CD, BEST_CONTRIBUTION: K.REMOVAL_BEST_CONTRIBUTION}


@dataclass(frozen=True)
class RunConfig:
    """Everything one run needs; exactly one budget field must be set.

    ``generations`` applies to the (mu + mu) scheme, ``offspring`` to
    (mu + 1), and ``evaluations`` to either (the initial population counts
    toward it, and a run never exceeds it).
    """

    problem: ProblemSpec
    pop_size: int
    seed: int
    scheme: str = MU_PLUS_MU
    removal: str = WORST_CD
    generations: int | None = None
    offspring: int | None = None
    evaluations: int | None = None
    variation: VariationConfig | None = None
    normalization: str = RANGE_NORMALIZED
    snapshot_every: int | None = None

    def __post_init__(self):
        if self.pop_size < 3:
            raise ValueError(f"pop_size must be >= 3, got {self.pop_size}")
        if not (0 <= self.seed < 2**64):
            raise ValueError("seed must fit in an unsigned 64-bit integer")
        if self.scheme not in SCHEMES:
            raise ValueError(f"unknown scheme {self.scheme!r}; choose from {SCHEMES}")
        if self.removal not in REMOVALS:
            raise ValueError(f"unknown removal {self.removal!r}; choose from {REMOVALS}")
        if self.normalization not in (RAW_SUM, RANGE_NORMALIZED):
            raise ValueError(f"unknown normalization {self.normalization!r}")
        budgets = [b for b in (self.generations, self.offspring, self.evaluations) if b is not None]
        if len(budgets) != 1:
            raise ValueError("set exactly one of generations, offspring, evaluations")
        if budgets[0] <= 0:
            raise ValueError("budget must be positive")
        if self.generations is not None and self.scheme != MU_PLUS_MU:
            raise ValueError("a generations budget applies to the mu-plus-mu scheme")
        if self.offspring is not None and self.scheme != MU_PLUS_ONE:
            raise ValueError("an offspring budget applies to the mu-plus-one scheme")
        if self.variation is None:
            object.__setattr__(self, "variation", default_variation(self.problem))
        if self.variation.n_var != self.problem.n_var:
            raise ValueError("variation bounds do not match the problem dimension")

    @property
    def total_evaluations(self) -> int:
        """Evaluation budget implied by whichever budget field is set."""
        if self.evaluations is not None:
            return self.evaluations
        if self.generations is not None:
            return self.pop_size + self.generations * self.pop_size
        return self.pop_size + self.offspring

    @property
    def policy(self) -> CrowdingPolicy:
        return CrowdingPolicy(normalization=self.normalization)


def default_variation(problem: ProblemSpec) -> VariationConfig:
    """SBX eta 20 with probability 1, polynomial mutation eta 20 at rate 1/n."""
    return VariationConfig(bounds=problem.bounds, sbx_eta=20.0, sbx_prob=1.0,
                           mut_eta=20.0, mut_prob=None)


@dataclass(frozen=True)
class Snapshot:
    """Per-checkpoint metrics: evaluation count, minimum finite crowding
    distance under the run's policy, and normalized-line gap CV (None when
    undefined, e.g. for 3-objective problems)."""

    evaluations: int
    min_finite_cd: float
    gap_cv: float | None


@dataclass
class RunRecord:
    """Outcome of one run: the final fitted population plus trace metrics."""

    config: RunConfig
    population: Population
    evaluations: int
    snapshots: list[Snapshot] = field(default_factory=list)


def environmental_selection(
    merged: list[Individual],
    mu: int,
    policy: CrowdingPolicy = CrowdingPolicy(normalization=RANGE_NORMALIZED),
    scheme: str = MU_PLUS_MU,
    removal: str = WORST_CD,
) -> list[Individual]:
    """Select mu survivors from a merged population.

    Fronts are filled in order until the critical front. Under the
    (mu + mu) scheme the critical front is truncated all at once by
    descending crowding distance computed once on that front (ties keep the
    lower index). Under the (mu + 1) scheme the merged size must be mu + 1
    and exactly one solution is removed from the critical front: the worst
    under ``removal`` (smallest crowding distance, or smallest contribution
    to the minimum crowding distance).

    Survivors are returned with their merged-pool rank and per-front
    crowding assigned; whole fronts keep ascending index order and critical
    front survivors are appended in ascending index order.
    """
    if scheme not in SCHEMES:
        raise ValueError(f"unknown scheme {scheme!r}")
    if len(merged) <= mu:
        raise ValueError(f"merged population of {len(merged)} cannot be truncated to {mu}")
    if scheme == MU_PLUS_ONE and len(merged) != mu + 1:
        raise ValueError("the mu-plus-one scheme merges exactly mu + 1 solutions")

    F = np.stack([ind.objectives for ind in merged])
    fronts = non_dominated_sort(F)
    fitted: dict[int, Individual] = {}
    for r, front in enumerate(fronts):
        report = crowding_distances(F[front], policy)
        for pos, i in enumerate(front):
            fitted[i] = replace(merged[i], rank=r, crowding=float(report.distances[pos]))

    if scheme == MU_PLUS_ONE:
        critical = fronts[-1]
        report = crowding_distances(F[critical], policy)
        if removal == WORST_CD:
            pos = int(np.argmin(report.distances))
        elif removal == BEST_CONTRIBUTION:
            pos = _best_contribution_pos(F[critical], policy)
        else:
            raise ValueError(f"unknown removal {removal!r}")
        removed = critical[pos]
        return [fitted[i] for i in range(len(merged)) if i != removed]

    survivors: list[Individual] = []
    for front in fronts:
        if len(survivors) + len(front) <= mu:
            survivors.extend(fitted[i] for i in front)
            if len(survivors) == mu:
                break
            continue
        report = crowding_distances(F[front], policy)
        need = mu - len(survivors)
        order = sorted(range(len(front)), key=lambda p: (-report.distances[p], p))
        chosen = sorted(front[p] for p in order[:need])
        survivors.extend(fitted[i] for i in chosen)
        break
    return survivors


def _best_contribution_pos(F_front: np.ndarray, policy: CrowdingPolicy) -> int:
    from .crowding import best_contribution_removal

    pos, _ = best_contribution_removal(F_front, policy)
    return pos


def assign_fitness(population: Population, policy: CrowdingPolicy) -> None:
    """Compute ranks and per-front crowding distances in place."""
    fronts = non_dominated_sort(population.objectives)
    ranks = np.empty(len(population), dtype=np.int64)
    crowd = np.empty(len(population), dtype=np.float64)
    for r, front in enumerate(fronts):
        report = crowding_distances(population.objectives[front], policy)
        for pos, i in enumerate(front):
            ranks[i] = r
            crowd[i] = float(report.distances[pos])
    population.ranks = ranks
    population.crowding = crowd


def run(config: RunConfig) -> RunRecord:
    """Execute one seeded run of the configured scheme.

    The initial population is uniform on the unit box; every generation (or
    steady-state step) then applies binary tournament mating, SBX, and
    polynomial mutation, merges, and applies ``environmental_selection``.
    Fitness is refreshed on the survivors before the next mating step.
    """
    problem = config.problem
    mu = config.pop_size
    var = config.variation
    rng = np.random.default_rng(config.seed)

    scratch = 1 if config.scheme == MU_PLUS_ONE else mu
    X = np.empty((mu + scratch, problem.n_var))
    F = np.empty((mu + scratch, problem.n_obj))
    rank = np.empty(mu + scratch, dtype=np.int64)
    cd = np.empty(mu + scratch, dtype=np.float64)

    X[:mu] = rng.random((mu, problem.n_var))
    F[:mu] = evaluate_batch(problem, X[:mu])
    evals = mu

    pop = Population(decisions=X[:mu], objectives=F[:mu])
    assign_fitness(pop, config.policy)
    rank[:mu] = pop.ranks
    cd[:mu] = pop.crowding

    total = config.total_evaluations
    step_cost = 1 if config.scheme == MU_PLUS_ONE else mu
    snapshot_every = config.snapshot_every
    if snapshot_every is None:
        snapshot_every = max(step_cost, total // 50)

    problem_id = _PROBLEM_IDS[problem.name]
    removal_id = _REMOVAL_IDS[config.removal]
    normalized = config.normalization == RANGE_NORMALIZED
    snapshots = [_snapshot(config, F[:mu], cd[:mu], evals)]

    while evals + step_cost <= total:
        room = total - evals
        chunk_evals = min(snapshot_every, room)
        n_steps = max(1, chunk_evals // step_cost)
        if config.scheme == MU_PLUS_ONE:
            K.steady_state_chunk(X, F, rank, cd, n_steps, problem_id,
                                 var.sbx_eta, var.sbx_prob, var.mut_eta,
                                 var.mutation_rate, removal_id, normalized, rng)
        else:
            K.generational_chunk(X, F, rank, cd, n_steps, problem_id,
                                 var.sbx_eta, var.sbx_prob, var.mut_eta,
                                 var.mutation_rate, normalized, rng)
        evals += n_steps * step_cost
        snapshots.append(_snapshot(config, F[:mu], cd[:mu], evals))

    final = Population(
        decisions=X[:mu].copy(),
        objectives=F[:mu].copy(),
        ranks=rank[:mu].copy(),
        crowding=cd[:mu].copy(),
    )
    return RunRecord(config=config, population=final, evaluations=evals, snapshots=snapshots)


def _snapshot(config: RunConfig, F: np.ndarray, cd: np.ndarray, evals: int) -> Snapshot:
    finite = cd[np.isfinite(cd)]
    min_cd = float(finite.min()) if finite.size else math.inf
    gap_cv = None
    if config.problem.n_obj == 2:
        normalized = np.stack([normalize_to_unit_front(config.problem, f) for f in F])
        ts, _ = project_to_line(normalized, eps_front=1e-3)
        if ts.size >= 3:
            stats = gap_statistics(ts, dedup_eps=1e-6)
            gap_cv = stats.cv
    return Snapshot(evaluations=evals, min_finite_cd=min_cd, gap_cv=gap_cv)


def make_run_config(problem_name: str, n_var: int | None = None, n_obj: int = 2,
                    **kwargs) -> RunConfig:
    """Convenience builder resolving the problem by name."""
    return RunConfig(problem=make_problem(problem_name, n_var, n_obj), **kwargs)
