"""Scikit-learn style estimator facade over the run engine.

``NSGA2`` follows the estimator conventions: hyperparameters are stored
verbatim in ``__init__`` (so ``get_params`` / ``set_params`` / ``clone``
work), all validation happens in ``fit``, and fitted state lives in
trailing-underscore attributes. The "data" an instance is fitted to is a
``ProblemSpec`` (or a problem name).
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from .crowding import RANGE_NORMALIZED
from .engine import MU_PLUS_MU, WORST_CD, RunConfig, RunRecord, run
from .problems import ProblemSpec, make_problem
from .variation import VariationConfig


class NSGA2(BaseEstimator):
    """NSGA-II under a configurable generation-update scheme.

    Args:
        pop_size: Population size mu (>= 3).
        scheme: ``"mu-plus-mu"`` (generational) or ``"mu-plus-one"``
            (steady state: one offspring, one removal per step).
        removal: Single-removal policy for the steady-state scheme:
            ``"worst-cd"`` or ``"best-contribution"``.
        generations / offspring / evaluations: exactly one budget.
        sbx_eta, sbx_prob, mut_eta, mut_prob: variation parameters
            (``mut_prob=None`` means 1 / n_var).
        normalization: crowding-distance policy inside the engine.
        seed: 64-bit unsigned seed; a run owns exactly one random stream.
        snapshot_every: metric-checkpoint cadence in evaluations.

    Attributes (after ``fit``):
        population_: final ``Population`` with ranks and crowding assigned.
        record_: full ``RunRecord`` including per-snapshot metrics.
        n_evaluations_: objective evaluations actually used.
    """

    def __init__(self, pop_size=20, scheme=MU_PLUS_MU, removal=WORST_CD,
                 generations=None, offspring=None, evaluations=None,
                 sbx_eta=20.0, sbx_prob=1.0, mut_eta=20.0, mut_prob=None,
                 normalization=RANGE_NORMALIZED, seed=0, snapshot_every=None):
        self.pop_size = pop_size
        self.scheme = scheme
        self.removal = removal
        self.generations = generations
        self.offspring = offspring
        self.evaluations = evaluations
        self.sbx_eta = sbx_eta
        self.sbx_prob = sbx_prob
        self.mut_eta = mut_eta
        self.mut_prob = mut_prob
        self.normalization = normalization
        self.seed = seed
        self.snapshot_every = snapshot_every

    def fit(self, problem: ProblemSpec | str, y=None) -> "NSGA2":
        """Run the configured scheme against a problem.

        Args:
            problem: A ``ProblemSpec`` or a problem name (``linefront``,
                ``dtlz1``, ``dtlz2``; name form uses default dimensions).
            y: Ignored; present for estimator-API compatibility.
        """
        if isinstance(problem, str):
            problem = make_problem(problem)
        config = self._config(problem)
        record = run(config)
        self.problem_ = problem
        self.record_ = record
        self.population_ = record.population
        self.n_evaluations_ = record.evaluations
        return self

    def _config(self, problem: ProblemSpec) -> RunConfig:
        variation = VariationConfig(
            bounds=problem.bounds,
            sbx_eta=self.sbx_eta,
            sbx_prob=self.sbx_prob,
            mut_eta=self.mut_eta,
            mut_prob=self.mut_prob,
        )
        return RunConfig(
            problem=problem,
            pop_size=self.pop_size,
            seed=self.seed,
            scheme=self.scheme,
            removal=self.removal,
            generations=self.generations,
            offspring=self.offspring,
            evaluations=self.evaluations,
            variation=variation,
            normalization=self.normalization,
            snapshot_every=self.snapshot_every,
        )

    def _check_fitted(self):
        if not hasattr(self, "record_"):
            raise NotFittedError(
                f"This {type(self).__name__} instance is not fitted yet. "
                "Call 'fit' with a problem first."
            )

    @property
    def pareto_front_(self) -> np.ndarray:
        """Objective vectors of the rank-0 solutions of the final population."""
        self._check_fitted()
        pop = self.population_
        return pop.objectives[pop.ranks == 0]

    def record(self) -> RunRecord:
        self._check_fitted()
        return self.record_
