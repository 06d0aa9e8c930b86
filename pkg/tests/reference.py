"""Pure-Python reference engine composed from the public operators.

Used to validate the compiled kernels: same seed, same draw order, same
tie-breaks, so trajectories must match the engine exactly. The steady-state
path mirrors the engine's array layout (the child overwrites the removed
slot) because tournament draws address solutions by position.
"""

from __future__ import annotations

import numpy as np

from crowdist.crowding import CrowdingPolicy, best_contribution_removal, crowding_distances
from crowdist.dominance import non_dominated_sort
from crowdist.engine import (BEST_CONTRIBUTION, MU_PLUS_MU, MU_PLUS_ONE, WORST_CD,
                             RunConfig, environmental_selection)
from crowdist.population import Individual
from crowdist.problems import evaluate, evaluate_batch
from crowdist.variation import binary_tournament, polynomial_mutation, sbx_crossover


def assign_arrays(F: np.ndarray, policy: CrowdingPolicy) -> tuple[np.ndarray, np.ndarray]:
    fronts = non_dominated_sort(F)
    rank = np.empty(F.shape[0], dtype=np.int64)
    cd = np.empty(F.shape[0])
    for r, front in enumerate(fronts):
        report = crowding_distances(F[front], policy)
        for pos, i in enumerate(front):
            rank[i] = r
            cd[i] = report.distances[pos]
    return rank, cd


def _individuals(X, F, rank, cd) -> list[Individual]:
    return [
        Individual(decision=X[i], objectives=F[i], rank=int(rank[i]), crowding=float(cd[i]))
        for i in range(X.shape[0])
    ]


def reference_removal_trace(config: RunConfig):
    """Replay a (mu + 1) run, yielding each removal decision.

    Yields (removed_index, critical_front_indices, critical_distances) per
    step, all relative to the merged mu + 1 pool. The replay is exact: the
    engine kernels are verified elsewhere to match this trajectory bit for
    bit, so the yielded decisions are the engine's decisions.
    """
    assert config.scheme == MU_PLUS_ONE
    problem = config.problem
    mu = config.pop_size
    var = config.variation
    policy = config.policy
    rng = np.random.default_rng(config.seed)

    X = rng.random((mu, problem.n_var))
    F = evaluate_batch(problem, X)
    rank, cd = assign_arrays(F, policy)
    evals = mu
    while evals + 1 <= config.total_evaluations:
        pop = _individuals(X, F, rank, cd)
        i1 = binary_tournament(pop, rng)
        i2 = binary_tournament(pop, rng)
        c1, _ = sbx_crossover(X[i1], X[i2], var, rng)
        child = polynomial_mutation(c1, var, rng)
        f_child = evaluate(problem, child)
        evals += 1
        Fm = np.vstack([F, f_child[None, :]])
        fronts = non_dominated_sort(Fm)
        critical = fronts[-1]
        report = crowding_distances(Fm[critical], policy)
        pos = int(np.argmin(report.distances))
        removed = critical[pos]
        yield removed, list(critical), [float(d) for d in report.distances]
        if removed != mu:
            X[removed] = child
            F[removed] = f_child
        rank, cd = assign_arrays(F, policy)


def reference_run(config: RunConfig) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Slow reference trajectory; returns final (X, F, rank, cd)."""
    problem = config.problem
    mu = config.pop_size
    var = config.variation
    policy = config.policy
    rng = np.random.default_rng(config.seed)

    X = rng.random((mu, problem.n_var))
    F = evaluate_batch(problem, X)
    rank, cd = assign_arrays(F, policy)
    evals = mu
    total = config.total_evaluations

    if config.scheme == MU_PLUS_ONE:
        while evals + 1 <= total:
            pop = _individuals(X, F, rank, cd)
            i1 = binary_tournament(pop, rng)
            i2 = binary_tournament(pop, rng)
            c1, _ = sbx_crossover(X[i1], X[i2], var, rng)
            child = polynomial_mutation(c1, var, rng)
            f_child = evaluate(problem, child)
            evals += 1

            Xm = np.vstack([X, child[None, :]])
            Fm = np.vstack([F, f_child[None, :]])
            fronts = non_dominated_sort(Fm)
            critical = fronts[-1]
            if config.removal == WORST_CD:
                report = crowding_distances(Fm[critical], policy)
                pos = int(np.argmin(report.distances))
            elif config.removal == BEST_CONTRIBUTION:
                pos, _ = best_contribution_removal(Fm[critical], policy)
            else:
                raise ValueError(config.removal)
            removed = critical[pos]
            # Mirror the engine's slot reuse: the child takes the removed
            # slot (no-op when the child itself is removed).
            if removed != mu:
                X[removed] = child
                F[removed] = f_child
            rank, cd = assign_arrays(F, policy)
        return X, F, rank, cd

    while evals + mu <= total:
        pop = _individuals(X, F, rank, cd)
        offspring: list[np.ndarray] = []
        while len(offspring) < mu:
            i1 = binary_tournament(pop, rng)
            i2 = binary_tournament(pop, rng)
            c1, c2 = sbx_crossover(X[i1], X[i2], var, rng)
            c1 = polynomial_mutation(c1, var, rng)
            c2 = polynomial_mutation(c2, var, rng)
            offspring.append(c1)
            if len(offspring) < mu:
                offspring.append(c2)
        O = np.stack(offspring)
        FO = evaluate_batch(problem, O)
        evals += mu

        merged = _individuals(np.vstack([X, O]), np.vstack([F, FO]),
                              np.zeros(2 * mu), np.zeros(2 * mu))
        survivors = environmental_selection(merged, mu, policy, scheme=MU_PLUS_MU)
        X = np.stack([ind.decision for ind in survivors])
        F = np.stack([ind.objectives for ind in survivors])
        rank, cd = assign_arrays(F, policy)
    return X, F, rank, cd
