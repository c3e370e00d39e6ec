"""Weight-grid sweeps of the objective trade-off and dominance checks.

`sweep` walks a grid over the weight simplex, solving the weighted problem
at every grid point, and returns all points in grid order — dominated ones
(possible at degenerate vertices) are flagged rather than dropped, so the
emitted table shows exactly what was computed. `dominates` implements the
usual componentwise order on objective vectors (minimization), and
`certify_nondominated` is the empirical Pareto test used on candidates.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Sequence

from .model import DecisionTensor
from .scalarize import SolveReport, WeightVector, solve_weighted
from .transform import DeterministicModel

#: a componentwise improvement smaller than this is treated as a tie
STRICT_TOL = 1e-9


@dataclass(frozen=True)
class FrontierPoint:
    """One sweep solution: grid weights, objective vector, and plan."""

    weights: WeightVector
    objective_values: tuple[float, ...]
    x: DecisionTensor
    scalar_value: float
    dominated: bool = False


def dominates(a: Sequence[float], b: Sequence[float]) -> bool:
    """True iff `a` is at least as good everywhere and strictly better once.

    Weak comparisons are exact; the strict component must clear STRICT_TOL,
    so near-ties on degenerate polytopes do not create spurious dominance.
    With that split the relation stays antisymmetric and transitive.
    """
    if len(a) != len(b):
        raise ValueError(f"vectors differ in length: {len(a)} vs {len(b)}")
    a = [float(v) for v in a]
    b = [float(v) for v in b]
    if any(ai > bi for ai, bi in zip(a, b)):
        return False
    return any(ai < bi - STRICT_TOL for ai, bi in zip(a, b))


def certify_nondominated(
    candidate: FrontierPoint, pool: Sequence[FrontierPoint]
) -> bool:
    """True iff no pool member's objective vector dominates the candidate's."""
    return not any(
        dominates(p.objective_values, candidate.objective_values) for p in pool
    )


def weight_grid(K: int, steps: int) -> list[WeightVector]:
    """Grid weights in fixed order, first coordinate descending.

    K = 2 gives lambda_1 = 1, ..., 0 in `steps` uniform steps. Larger K
    uses the simplex lattice: every composition of steps-1 into K
    nonnegative integers, scaled to sum 1, in descending lexicographic
    order.
    """
    if steps < 2:
        raise ValueError(f"steps must be >= 2, got {steps}")
    if K < 1:
        raise ValueError(f"need at least one objective, got K={K}")
    if K == 1:
        return [WeightVector((1.0,))]
    denom = steps - 1

    def compositions(total: int, parts: int):
        if parts == 1:
            yield (total,)
            return
        for first in range(total, -1, -1):
            for rest in compositions(total - first, parts - 1):
                yield (first, *rest)

    grid = []
    for comp in compositions(denom, K):
        vals = [c / denom for c in comp]
        vals[-1] = 1.0 - sum(vals[:-1])  # absorb rounding into the last slot
        grid.append(WeightVector(tuple(vals)))
    return grid


def sweep(det: DeterministicModel, steps: int) -> list[FrontierPoint]:
    """Solve the weighted problem at every grid weight; flag dominated rows.

    Infeasibility aborts the whole sweep (the feasible set does not depend
    on the weights).
    """
    points = []
    for w in weight_grid(det.K, steps):
        report: SolveReport = solve_weighted(det, w)
        points.append(
            FrontierPoint(
                weights=w,
                objective_values=report.objective_values,
                x=report.x,
                scalar_value=report.scalar_value,
            )
        )
    flagged = []
    for pt in points:
        dominated = any(
            dominates(other.objective_values, pt.objective_values)
            for other in points
            if other is not pt
        )
        flagged.append(replace(pt, dominated=True) if dominated else pt)
    return flagged
