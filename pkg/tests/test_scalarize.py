"""Weighted-sum and ideal-point distance solvers."""

import math

import numpy as np
import pytest

from ustp import (
    IdealPoint,
    InfeasibleModelError,
    Method,
    MmstpModel,
    SolveStatus,
    UncertainValue,
    WeightVector,
    ideal_point,
    solve_distance,
    solve_weighted,
    transform,
)
from tests.conftest import IDEAL, SWEEP_ROWS


def single_route_model(K=2, cost_means=(3.0, 11.0)):
    """1x1x1x1 instance: the only variable is pinned near the demand bound."""
    cost = [[[[[UncertainValue.normal(cost_means[t], 1.0)]]]] for t in range(K)]
    return transform(
        MmstpModel(
            m=1, n=1, l=1, r=1, K=K,
            cost=cost,
            supply=[[UncertainValue.linear(8, 10)]],
            demand=[[UncertainValue.linear(2, 3)]],
            capacity=[UncertainValue.linear(20, 25)],
            gamma=[[0.9]],
            beta=[[0.9]],
            delta=[0.9],
        ).check()
    )


class TestWeightVector:
    def test_valid_and_constructors(self):
        WeightVector((0.25, 0.75))
        assert WeightVector.uniform(2).values == (0.5, 0.5)
        assert WeightVector.unit(3, 1).values == (0.0, 1.0, 0.0)

    def test_rejects_bad_weights(self):
        with pytest.raises(ValueError):
            WeightVector((0.5, 0.6))
        with pytest.raises(ValueError):
            WeightVector((-0.1, 1.1))
        with pytest.raises(ValueError):
            WeightVector(())
        with pytest.raises(IndexError):
            WeightVector.unit(2, 2)


class TestSolveWeighted:
    def test_extreme_weight_matches_published_row(self, bundled_det):
        report = solve_weighted(bundled_det, WeightVector((1.0, 0.0)))
        assert report.method is Method.WEIGHTED
        assert report.status is SolveStatus.OPTIMAL
        assert report.scalar_value == pytest.approx(336.964, abs=0.5)
        assert report.objective_values[1] == pytest.approx(2232.086, abs=2.0)

    def test_balanced_weights_match_published_row(self, bundled_det):
        report = solve_weighted(bundled_det, WeightVector((0.5, 0.5)))
        assert report.scalar_value == pytest.approx(1054.825, abs=0.5)
        assert report.objective_values[0] == pytest.approx(578.579, abs=0.5)
        assert report.objective_values[1] == pytest.approx(1531.072, abs=0.5)

    def test_quarter_weights_and_internal_consistency(self, bundled_det):
        report = solve_weighted(bundled_det, WeightVector((0.25, 0.75)))
        assert report.scalar_value == pytest.approx(1256.568, abs=0.5)
        recombined = 0.25 * report.objective_values[0] + 0.75 * report.objective_values[1]
        assert abs(recombined - report.scalar_value) <= 1e-6

    def test_scalar_consistency_invariant(self, bundled_det):
        for w in (WeightVector((0.3, 0.7)), WeightVector((0.9, 0.1))):
            report = solve_weighted(bundled_det, w)
            recombined = float(np.dot(w.values, report.objective_values))
            assert abs(report.scalar_value - recombined) <= 1e-9

    def test_plan_is_feasible_and_clean(self, bundled_model, bundled_det):
        report = solve_weighted(bundled_det, WeightVector((0.5, 0.5)))
        assert report.x.violations(bundled_model) == []
        flat = bundled_det.flatten(report.x)
        for row in bundled_det.lp_rows():
            lhs = float(row.coeffs @ flat)
            if row.relation == "<=":
                assert lhs <= row.rhs + 1e-7
            else:
                assert lhs >= row.rhs - 1e-7

    def test_weight_count_must_match(self, bundled_det):
        with pytest.raises(ValueError):
            solve_weighted(bundled_det, WeightVector((1.0,)))

    def test_infeasible_raises(self, infeasible_model):
        det = transform(infeasible_model)
        with pytest.raises(InfeasibleModelError):
            solve_weighted(det, WeightVector.uniform(2))


class TestIdealPoint:
    def test_bundled_instance(self, bundled_det):
        ip = ideal_point(bundled_det)
        assert ip.e_star[0] == pytest.approx(IDEAL[0], abs=0.5)
        assert ip.e_star[1] == pytest.approx(IDEAL[1], abs=0.5)

    def test_lower_bounds_every_sweep_row(self, bundled_det):
        ip = ideal_point(bundled_det)
        for _, _, e1, e2, _ in SWEEP_ROWS:
            assert ip.e_star[0] <= e1 + 0.5
            assert ip.e_star[1] <= e2 + 0.5

    def test_identical_objectives_have_equal_minima(self):
        det = single_route_model(cost_means=(4.0, 4.0))
        ip = ideal_point(det)
        assert ip.e_star[0] == pytest.approx(ip.e_star[1], abs=1e-9)

    def test_single_objective_is_the_unique_optimum(self):
        det = single_route_model(K=1, cost_means=(4.0,))
        ip = ideal_point(det)
        report = solve_weighted(det, WeightVector((1.0,)))
        assert ip.e_star[0] == pytest.approx(report.scalar_value, abs=1e-9)

    def test_infeasible_propagates(self, infeasible_model):
        with pytest.raises(InfeasibleModelError):
            ideal_point(transform(infeasible_model))


class TestSolveDistance:
    def test_bundled_instance_converges(self, bundled_det):
        ip = ideal_point(bundled_det)
        report = solve_distance(bundled_det, ip, tol=1e-4)
        assert report.status is SolveStatus.OPTIMAL
        assert report.method is Method.DISTANCE
        assert report.scalar_value <= 269.1
        assert report.ideal is ip

    def test_distance_consistency_invariant(self, bundled_det):
        ip = ideal_point(bundled_det)
        report = solve_distance(bundled_det, ip, tol=1e-4)
        sq = sum(
            (ov - es) ** 2 for ov, es in zip(report.objective_values, ip.e_star)
        )
        assert abs(report.scalar_value**2 - sq) <= 1e-6 * (1 + report.scalar_value**2)

    def test_beats_every_weighted_solution(self, bundled_det):
        ip = ideal_point(bundled_det)
        report = solve_distance(bundled_det, ip, tol=1e-4)
        for lam1, lam2, _, _, _ in SWEEP_ROWS:
            lam1 = min(max(lam1, 0.0), 1.0)
            w = WeightVector((lam1, 1.0 - lam1))
            other = solve_weighted(bundled_det, w)
            d = math.sqrt(
                sum((ov - es) ** 2 for ov, es in zip(other.objective_values, ip.e_star))
            )
            assert report.scalar_value <= d + 1e-4

    def test_attainable_ideal_reaches_zero(self):
        det = single_route_model(cost_means=(3.0, 11.0))
        ip = ideal_point(det)
        report = solve_distance(det, ip, tol=1e-6)
        assert report.scalar_value == pytest.approx(0.0, abs=1e-5)

    def test_single_objective_equals_weighted(self):
        det = single_route_model(K=1, cost_means=(4.0,))
        ip = ideal_point(det)
        report = solve_distance(det, ip, tol=1e-8)
        weighted = solve_weighted(det, WeightVector((1.0,)))
        assert report.objective_values[0] == pytest.approx(
            weighted.objective_values[0], abs=1e-6
        )
        assert report.scalar_value == pytest.approx(0.0, abs=1e-6)

    def test_iteration_cap_returns_best_iterate(self, bundled_det):
        ip = ideal_point(bundled_det)
        report = solve_distance(bundled_det, ip, tol=1e-12, max_oracle_calls=2)
        assert report.status is SolveStatus.ITERATION_LIMIT
        assert report.iterations == 2
        assert "gap" in report.message
        assert report.x is not None
        assert all(math.isfinite(v) for v in report.objective_values)

    def test_invalid_arguments(self, bundled_det):
        ip = ideal_point(bundled_det)
        with pytest.raises(ValueError):
            solve_distance(bundled_det, ip, tol=0.0)
        with pytest.raises(ValueError):
            solve_distance(bundled_det, IdealPoint((1.0,)), tol=1e-4)

    def test_infeasible_propagates(self, infeasible_model):
        det = transform(infeasible_model)
        with pytest.raises(InfeasibleModelError):
            solve_distance(det, IdealPoint((0.0, 0.0)), tol=1e-4)


class TestWeightMonotonicity:
    def test_e1_descends_as_lambda1_grows(self, bundled_det):
        values = []
        for lam1 in (0.0, 0.25, 0.5, 0.75, 1.0):
            report = solve_weighted(bundled_det, WeightVector((lam1, 1.0 - lam1)))
            values.append(report.objective_values[0])
        for earlier, later in zip(values, values[1:]):
            assert later <= earlier + 1e-9
