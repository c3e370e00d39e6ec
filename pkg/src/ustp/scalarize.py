"""Compromise solutions: weighted sums and ideal-point distance.

Two ways to collapse K expected-cost objectives into one number:

* `solve_weighted` minimizes a nonnegative unit-sum combination
  sum_t lambda_t E[f_t]; with strictly positive weights the optimum is
  Pareto optimal.
* `solve_distance` first needs the ideal point (each objective's
  individual minimum, from `ideal_point`) and then finds the feasible plan
  whose objective vector lies closest to it in Euclidean distance.

The distance problem is a convex QP over the transportation polytope, but
the objective only sees the K-dimensional image y = (E[f_1], ..., E[f_K])
of a plan, so it is really a nearest-point problem on the polytope's
low-dimensional shadow. It is solved with a fully corrective Frank-Wolfe
scheme (Wolfe's minimum-norm-point method): the LP engine serves as
linear-minimization oracle, each new oracle vertex joins a small corral,
and the iterate is re-projected exactly onto the corral's convex hull by
affine minimization with boundary drops. The Frank-Wolfe duality gap
grad(x).(x - s) certifies optimality. Plain and away-step variants crawl
on these polytopes once the gap target is far below the objective's
scale; the corrective scheme terminates after a handful of oracle calls.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from .errors import InfeasibleModelError, UstpError
from .model import DecisionTensor
from .simplex import LE, LpRow, LpStatus, StandardLp, solve_lp
from .transform import DeterministicModel

#: hard stop for the distance solver, counted in LP-oracle calls
MAX_ORACLE_CALLS = 100_000

#: unit-sum check for weight vectors
WEIGHT_SUM_TOL = 1e-12

#: a corral vertex whose convex weight falls below this is dropped
_WEIGHT_DROP_TOL = 1e-14


class Method(str, Enum):
    WEIGHTED = "weighted"
    DISTANCE = "distance"


class SolveStatus(str, Enum):
    OPTIMAL = "optimal"
    ITERATION_LIMIT = "iteration_limit"


@dataclass(frozen=True)
class WeightVector:
    """Nonnegative objective weights summing to one."""

    values: tuple[float, ...]

    def __post_init__(self):
        vals = tuple(float(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if not vals:
            raise ValueError("weight vector must not be empty")
        if any(not math.isfinite(v) or v < 0.0 for v in vals):
            raise ValueError(f"weights must be nonnegative reals, got {vals}")
        if abs(sum(vals) - 1.0) > WEIGHT_SUM_TOL:
            raise ValueError(f"weights must sum to 1, got sum {sum(vals)!r}")

    @staticmethod
    def uniform(k: int) -> "WeightVector":
        if k < 1:
            raise ValueError("need at least one objective")
        return WeightVector((1.0 / k,) * k)

    @staticmethod
    def unit(k: int, t: int) -> "WeightVector":
        if not 0 <= t < k:
            raise IndexError(f"objective index {t} out of range for K={k}")
        vals = [0.0] * k
        vals[t] = 1.0
        return WeightVector(tuple(vals))

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class IdealPoint:
    """Per-objective individual minima (E*_1, ..., E*_K)."""

    e_star: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "e_star", tuple(float(v) for v in self.e_star))


@dataclass(frozen=True)
class SolveReport:
    """Outcome of one scalarized solve.

    `objective_values[t]` is E[f_t] at the returned plan; `scalar_value` is
    the weighted sum or the Euclidean distance to the ideal, depending on
    `method`. `iterations` counts simplex pivots for weighted solves and
    LP-oracle calls for distance solves.
    """

    x: DecisionTensor
    objective_values: tuple[float, ...]
    scalar_value: float
    method: Method
    status: SolveStatus
    iterations: int
    weights: Optional[WeightVector] = None
    ideal: Optional[IdealPoint] = None
    message: str = ""


def _objective_values(det: DeterministicModel, x_flat: np.ndarray) -> tuple[float, ...]:
    return tuple(det.expectation(t, x_flat) for t in range(det.K))


def _cap(coeffs: np.ndarray, value: float) -> LpRow:
    """A row pinning `coeffs . x` to its achieved minimum (tiny slack)."""
    return LpRow(coeffs, LE, value + 1e-9 * (1.0 + abs(value)))


def solve_weighted(det: DeterministicModel, w: WeightVector) -> SolveReport:
    """Minimize the weighted combination of expected costs.

    Weighted LPs on transportation polytopes routinely have whole faces of
    optima, and which vertex a simplex run lands on is an accident of
    pivot order. To make the report deterministic and meaningful, the
    solution is canonicalized: among all scalar optima, take the plan with
    lexicographically smallest (E[f_1], ..., E[f_K]), found by re-solving
    with each objective in turn while capping the previous values.

    Raises InfeasibleModelError when the quantile bounds admit no plan.
    Unboundedness cannot happen for well-formed instances (costs and
    shipments are nonnegative) and is reported as an internal error.
    """
    if len(w) != det.K:
        raise ValueError(f"expected {det.K} weights, got {len(w)}")
    combined = np.zeros(det.n_cols)
    for t, lam in enumerate(w.values):
        if lam != 0.0:
            combined += lam * det.objective_vector(t)
    base_rows = det.lp_rows()
    sol = solve_lp(StandardLp(combined, base_rows))
    if sol.status is LpStatus.INFEASIBLE:
        raise InfeasibleModelError(
            "no plan satisfies the supply/demand/capacity quantile bounds"
        )
    if sol.status is LpStatus.UNBOUNDED:
        raise UstpError(
            "weighted objective is unbounded below; the instance data are inconsistent"
        )
    x = sol.x
    iterations = sol.iterations
    rows = list(base_rows) + [_cap(combined, sol.objective_value)]
    for t in range(det.K):
        c_t = det.objective_vector(t)
        ref = solve_lp(StandardLp(c_t, tuple(rows)))
        if ref.status is not LpStatus.OPTIMAL:
            break  # numerically degenerate cap; keep the last good vertex
        x = ref.x
        iterations += ref.iterations
        rows.append(_cap(c_t, ref.objective_value))
    obj_vals = _objective_values(det, x)
    scalar = float(np.dot(w.values, obj_vals))
    return SolveReport(
        x=det.decision_tensor(x),
        objective_values=obj_vals,
        scalar_value=scalar,
        method=Method.WEIGHTED,
        status=SolveStatus.OPTIMAL,
        iterations=iterations,
        weights=w,
    )


def ideal_point(det: DeterministicModel) -> IdealPoint:
    """Each objective's minimum, ignoring the others."""
    e_star = []
    for t in range(det.K):
        report = solve_weighted(det, WeightVector.unit(det.K, t))
        e_star.append(report.objective_values[t])
    return IdealPoint(tuple(e_star))


def _affine_minimizer(points: np.ndarray, target: np.ndarray) -> np.ndarray:
    """Weights (summing to 1, sign-free) minimizing ||w @ points - target||.

    KKT system of the equality-constrained least-squares problem; lstsq
    keeps it stable when corral points become affinely dependent.
    """
    a = len(points)
    kkt = np.zeros((a + 1, a + 1))
    kkt[:a, :a] = 2.0 * (points @ points.T)
    kkt[:a, a] = 1.0
    kkt[a, :a] = 1.0
    rhs = np.concatenate([2.0 * (points @ target), [1.0]])
    solution, *_ = np.linalg.lstsq(kkt, rhs, rcond=None)
    return solution[:a]


def _hull_weights(points: np.ndarray, target: np.ndarray, lam: np.ndarray) -> np.ndarray:
    """Convex weights minimizing ||w @ points - target|| (Wolfe minor cycles).

    Alternates affine minimization over the active points with moves to the
    simplex boundary, dropping the point whose weight hits zero. The active
    set shrinks on every pass, so the loop is finite.
    """
    lam = lam.copy()
    active = list(range(len(points)))
    while True:
        z = _affine_minimizer(points[active], target)
        if np.all(z >= -1e-12):
            lam[:] = 0.0
            lam[active] = np.clip(z, 0.0, None)
            return lam / lam.sum()
        la = lam[active]
        shrink = z < 0.0
        theta = min(1.0, float((la[shrink] / (la[shrink] - z[shrink])).min()))
        la = (1.0 - theta) * la + theta * z
        la[la < _WEIGHT_DROP_TOL] = 0.0
        lam[:] = 0.0
        lam[active] = la
        active = [i for i in active if lam[i] > 0.0]


def solve_distance(
    det: DeterministicModel,
    ideal: IdealPoint,
    tol: float = 1e-4,
    max_oracle_calls: int = MAX_ORACLE_CALLS,
) -> SolveReport:
    """Find the plan whose objective vector is nearest the ideal point.

    Minimizes F(x) = sum_t (c_t.x - E*_t)^2 — same argmin as the square
    root, differentiable everywhere — and reports sqrt(F). Returns with
    status OPTIMAL once the Frank-Wolfe gap is <= tol; if the oracle-call
    cap is hit first, the best iterate comes back with status
    ITERATION_LIMIT and a diagnostic message.
    """
    if not tol > 0.0:
        raise ValueError(f"tol must be positive, got {tol}")
    if len(ideal.e_star) != det.K:
        raise ValueError(
            f"ideal point has {len(ideal.e_star)} entries, expected {det.K}"
        )
    C = np.stack([det.objective_vector(t) for t in range(det.K)])
    e_star = np.array(ideal.e_star)

    start = solve_weighted(det, WeightVector.uniform(det.K))
    x = det.flatten(start.x)
    # the iterate as a convex combination of polytope vertices (corral);
    # images[i] = C @ corral[i] is all the objective ever looks at
    corral = [x.copy()]
    images = (C @ x)[np.newaxis, :]
    lam = np.array([1.0])
    y = images[0]
    oracle_calls = 0
    gap = math.inf
    message = ""
    while oracle_calls < max_oracle_calls:
        g_y = 2.0 * (y - e_star)
        sol = solve_lp(det.build_lp(C.T @ g_y))
        oracle_calls += 1
        if sol.status is not LpStatus.OPTIMAL:
            raise UstpError(f"linear oracle returned {sol.status.value}")
        s = sol.x
        s_y = C @ s
        gap = float(g_y @ (y - s_y))  # == grad F(x) . (x - s)
        if gap <= tol:
            break
        scale = 1.0 + float(np.abs(images).max())
        if np.any(np.linalg.norm(images - s_y, axis=1) <= 1e-9 * scale):
            # the oracle re-proposed a corral member the exact projection
            # already rejected; floating point cannot close the rest of
            # the gap
            message = (
                f"stalled after {oracle_calls} oracle calls with "
                f"gap {gap:.3e} > tol {tol:.3e}"
            )
            break
        corral.append(s)
        images = np.vstack([images, s_y])
        lam = _hull_weights(images, e_star, np.append(lam, 0.0))
        keep = lam > _WEIGHT_DROP_TOL
        corral = [v for v, k in zip(corral, keep) if k]
        images = images[keep]
        lam = lam[keep] / lam[keep].sum()
        x = lam @ np.stack(corral)
        y = lam @ images

    converged = gap <= tol
    if not converged and not message:
        message = (
            f"stopped after {oracle_calls} oracle calls with "
            f"gap {gap:.3e} > tol {tol:.3e}"
        )
    obj_vals = _objective_values(det, x)
    distance = math.sqrt(sum((ov - es) ** 2 for ov, es in zip(obj_vals, e_star)))
    return SolveReport(
        x=det.decision_tensor(x),
        objective_values=obj_vals,
        scalar_value=distance,
        method=Method.DISTANCE,
        status=SolveStatus.OPTIMAL if converged else SolveStatus.ITERATION_LIMIT,
        iterations=oracle_calls,
        ideal=ideal,
        message=message,
    )
