import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from crowdist import NSGA2
from crowdist.engine import MU_PLUS_ONE
from crowdist.problems import make_problem


def test_get_params_round_trip():
    est = NSGA2(pop_size=9, scheme=MU_PLUS_ONE, offspring=50, seed=3)
    params = est.get_params()
    assert params["pop_size"] == 9
    assert params["scheme"] == MU_PLUS_ONE
    rebuilt = NSGA2(**params)
    assert rebuilt.get_params() == params


def test_set_params_and_clone():
    est = NSGA2(offspring=None, generations=5)
    est.set_params(pop_size=11, seed=4)
    assert est.pop_size == 11
    twin = clone(est)
    assert twin.get_params() == est.get_params()


def test_not_fitted_error():
    est = NSGA2(generations=5)
    with pytest.raises(NotFittedError):
        _ = est.pareto_front_


def test_fit_sets_state():
    est = NSGA2(pop_size=7, scheme=MU_PLUS_ONE, offspring=300, seed=0)
    out = est.fit(make_problem("linefront"))
    assert out is est
    assert len(est.population_) == 7
    assert est.n_evaluations_ == 307
    assert est.pareto_front_.shape[1] == 2
    assert est.record_.config.pop_size == 7


def test_fit_accepts_problem_name():
    est = NSGA2(pop_size=6, generations=10, seed=1).fit("linefront")
    assert est.problem_.name == "linefront"
    assert len(est.population_) == 6


def test_fit_matches_run_for_same_seed():
    from crowdist.engine import RunConfig, run

    problem = make_problem("dtlz1", 6, 2)
    est = NSGA2(pop_size=8, generations=20, seed=7).fit(problem)
    record = run(RunConfig(problem=problem, pop_size=8, seed=7, generations=20))
    assert np.array_equal(est.population_.objectives, record.population.objectives)


def test_invalid_params_fail_at_fit_not_init():
    est = NSGA2(pop_size=1, generations=5)  # no validation yet
    with pytest.raises(ValueError, match="pop_size"):
        est.fit(make_problem("linefront"))
