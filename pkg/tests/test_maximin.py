import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crowdist.errors import CapacityError
from crowdist.maximin import (CONTINUUM, FINITE_FAMILY, UNIQUE, LinePlacement,
                              closed_form_value, grid_oracle, is_optimal_placement,
                              line_crowding, maximin_solve, optimal_placement)


class TestLineCrowding:
    def test_single_interior_is_two(self):
        assert line_crowding(LinePlacement((0.3,))) == pytest.approx([2.0])

    def test_symmetric_five_solution_band(self):
        values = line_crowding(LinePlacement((0.1, 0.5, 0.9)))
        assert values == pytest.approx([1.0, 1.6, 1.0])
        assert values.min() == pytest.approx(1.0)

    def test_paired_center_configuration(self):
        values = line_crowding(LinePlacement((0.0, 0.5, 0.5, 1.0)))
        assert values == pytest.approx([1.0, 1.0, 1.0, 1.0])

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError, match=r"\[0, 1\]"):
            LinePlacement((1.2,))

    @given(st.lists(st.floats(0, 1), min_size=1, max_size=8))
    @settings(max_examples=200, deadline=None)
    def test_mirror_symmetry(self, ts):
        a = line_crowding(LinePlacement(tuple(ts)))
        b = line_crowding(LinePlacement(tuple(1.0 - t for t in ts)))
        assert sorted(a) == pytest.approx(sorted(b))

    @given(st.lists(st.floats(0, 1), min_size=1, max_size=8))
    @settings(max_examples=200, deadline=None)
    def test_telescoping_sum_bound(self, ts):
        placement = LinePlacement(tuple(ts))
        values = line_crowding(placement)
        ordered = placement.interior
        expected = 2.0 * (1.0 + ordered[-1] - ordered[0])
        assert values.sum() == pytest.approx(expected)
        assert values.sum() <= 4.0 + 1e-12


class TestClosedForm:
    @pytest.mark.parametrize("n,value", [(3, 2.0), (4, 2.0), (5, 1.0), (6, 1.0),
                                         (7, 2 / 3), (8, 2 / 3), (20, 2 / 9)])
    def test_catalog(self, n, value):
        assert closed_form_value(n) == pytest.approx(value, abs=1e-15)

    def test_monotone_and_paired(self):
        values = [closed_form_value(n) for n in range(3, 40)]
        assert all(a >= b for a, b in zip(values, values[1:]))
        for k in range(2, 19):
            assert closed_form_value(2 * k - 1) == closed_form_value(2 * k)

    def test_too_small(self):
        with pytest.raises(ValueError, match="at least 3"):
            closed_form_value(2)


class TestOptimalPlacement:
    def test_four_solutions_on_extremes(self):
        result = optimal_placement(4)
        assert result.witness.interior == (0.0, 1.0)
        assert result.value == 2.0
        assert result.uniqueness == UNIQUE

    def test_six_solutions_three_pairs(self):
        result = optimal_placement(6)
        assert result.witness.interior == (0.0, 0.5, 0.5, 1.0)
        assert result.value == 1.0

    def test_eight_solutions_unique(self):
        result = optimal_placement(8)
        assert result.witness.interior == pytest.approx((0.0, 1 / 3, 1 / 3, 2 / 3, 2 / 3, 1.0))
        assert result.value == pytest.approx(2 / 3)
        assert result.uniqueness == UNIQUE

    def test_uniqueness_classes(self):
        assert optimal_placement(3).uniqueness == CONTINUUM
        assert optimal_placement(5).uniqueness == CONTINUUM
        assert optimal_placement(7).uniqueness == FINITE_FAMILY
        assert "4" in optimal_placement(7).family_note
        assert optimal_placement(9).uniqueness == FINITE_FAMILY
        assert optimal_placement(10).uniqueness == UNIQUE

    @pytest.mark.parametrize("n", range(3, 13))
    def test_witness_attains_value(self, n):
        result = optimal_placement(n)
        assert line_crowding(result.witness).min() == pytest.approx(result.value, abs=1e-12)


class TestMaximinSolve:
    def test_single_interior(self):
        assert maximin_solve(1).value == pytest.approx(2.0, abs=1e-9)

    def test_three_interior_center(self):
        result = maximin_solve(3)
        assert result.value == pytest.approx(1.0, abs=1e-9)
        assert result.witness.interior[1] == pytest.approx(0.5, abs=1e-6)

    @pytest.mark.parametrize("k", range(2, 19))
    def test_matches_closed_form(self, k):
        assert maximin_solve(k).value == pytest.approx(closed_form_value(k + 2), abs=1e-9)

    def test_witness_attains_value(self):
        for k in (1, 2, 3, 5, 8):
            result = maximin_solve(k)
            assert line_crowding(result.witness).min() >= result.value - 1e-9

    def test_bad_tolerance(self):
        with pytest.raises(ValueError, match="tolerance"):
            maximin_solve(3, tol=0.0)


class TestGridOracle:
    def test_two_interior_extreme_pairing(self):
        result = grid_oracle(2, 0.01)
        assert result.value == pytest.approx(2.0)
        assert result.witness.interior == (0.0, 1.0)

    def test_four_interior_center_pair(self):
        result = grid_oracle(4, 0.01)
        assert result.value == pytest.approx(1.0)
        assert result.witness.interior == (0.0, 0.5, 0.5, 1.0)

    def test_six_interior_within_grid_error(self):
        result = grid_oracle(6, 0.01)
        assert abs(result.value - 2 / 3) <= 0.04

    @pytest.mark.parametrize("k", range(1, 7))
    def test_grid_brackets_continuous_optimum(self, k):
        value = grid_oracle(k, 0.01).value
        exact = closed_form_value(k + 2)
        assert value <= exact + 1e-12
        assert value >= exact - 4 * 0.01

    def test_capacity_guard(self):
        with pytest.raises(CapacityError):
            grid_oracle(2, 1e-6)

    def test_bad_resolution(self):
        with pytest.raises(ValueError, match="resolution"):
            grid_oracle(3, 0.3)  # does not divide 1 evenly


class TestIsOptimal:
    def test_non_symmetric_five_family(self):
        assert is_optimal_placement(LinePlacement((0.2, 0.5, 0.9)), 5)

    def test_uniform_five_boundary_case(self):
        assert is_optimal_placement(LinePlacement((0.25, 0.5, 0.75)), 5)

    def test_uniform_six_not_optimal(self):
        assert not is_optimal_placement(LinePlacement((0.2, 0.4, 0.6, 0.8)), 6)

    def test_count_mismatch(self):
        with pytest.raises(ValueError, match="expected 6"):
            is_optimal_placement(LinePlacement((0.5,)), 6)

    @pytest.mark.parametrize("n", range(3, 11))
    def test_canonical_witness_accepted(self, n):
        assert is_optimal_placement(optimal_placement(n).witness, n)


def test_three_routes_agree():
    for k in range(1, 7):
        exact = closed_form_value(k + 2)
        assert maximin_solve(k).value == pytest.approx(exact, abs=1e-9)
        assert abs(grid_oracle(k, 0.01).value - exact) <= 4 * 0.01
