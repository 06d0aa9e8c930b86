"""NSGA-II generation-update schemes and maximin crowding-distance placements.

The package has three layers:

- operators: Pareto dominance and sorting (``dominance``), crowding distance
  and removal policies (``crowding``), SBX / polynomial mutation / tournament
  selection (``variation``), benchmark problems (``problems``).
- engines: the (mu + mu) and (mu + 1) schemes (``engine``), with a
  scikit-learn style facade (``NSGA2``).
- analysis: optimal line placements (``maximin``), distribution metrics
  (``metrics``), and the ``crowdist`` command line (``cli``).
"""

from .crowding import (CrowdingPolicy, CrowdingReport, best_contribution_removal,
                       crowding_distances, min_finite_cd, worst_cd_removal)
from .dominance import dominates, non_dominated_sort, peel_fronts_oracle
from .engine import (MU_PLUS_MU, MU_PLUS_ONE, RunConfig, RunRecord,
                     environmental_selection, run)
from .estimator import NSGA2
from .maximin import (LinePlacement, MaximinResult, closed_form_value, grid_oracle,
                      is_optimal_placement, line_crowding, maximin_solve,
                      optimal_placement)
from .metrics import (CdHistogram, GapStats, cd_histogram, duplicate_extremes,
                      gap_statistics, project_to_line)
from .population import Individual, Population
from .problems import (ProblemSpec, evaluate, front_membership_residual, make_problem,
                       normalize_to_unit_front)
from .variation import (VariationConfig, binary_tournament, polynomial_mutation,
                        sbx_crossover)

__version__ = "0.1.0"

__all__ = [
    "NSGA2",
    "CrowdingPolicy", "CrowdingReport", "crowding_distances", "min_finite_cd",
    "worst_cd_removal", "best_contribution_removal",
    "dominates", "non_dominated_sort", "peel_fronts_oracle",
    "RunConfig", "RunRecord", "run", "environmental_selection",
    "MU_PLUS_MU", "MU_PLUS_ONE",
    "LinePlacement", "MaximinResult", "closed_form_value", "optimal_placement",
    "maximin_solve", "grid_oracle", "is_optimal_placement", "line_crowding",
    "GapStats", "CdHistogram", "project_to_line", "gap_statistics",
    "duplicate_extremes", "cd_histogram",
    "Individual", "Population",
    "ProblemSpec", "make_problem", "evaluate", "front_membership_residual",
    "normalize_to_unit_front",
    "VariationConfig", "sbx_crossover", "polynomial_mutation", "binary_tournament",
    "__version__",
]
