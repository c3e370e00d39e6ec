"""Chance-constrained model to crisp deterministic equivalent.

Each uncertain constraint "hold with confidence alpha" collapses to a
single quantile comparison:

* supply (p,i):    sum_jk x <= inv_cdf(supply[p][i], 1 - gamma[p][i])
* demand (p,j):    sum_ik x >= inv_cdf(demand[p][j], beta[p][j])
* capacity (k):    sum_pij x <= inv_cdf(capacity[k], 1 - delta[k])

and each objective becomes its expected value, linear in x. The result is
an ordinary LP over the non-forbidden routes. `chance_holds` evaluates a
chance constraint straight from the distribution, with no quantiles, and
serves as the independent oracle for the conversion.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import InvalidModelError
from .model import DecisionTensor, MmstpModel, expected_cost_array, validate
from .simplex import GE, LE, LpRow, StandardLp
from .uncertain import UncertainValue, as_alpha

#: slack allowed when testing a chance constraint exactly at its boundary
BOUNDARY_TOL = 1e-9


class ConstraintKind(Enum):
    SUPPLY = "supply"
    DEMAND = "demand"
    CAPACITY = "capacity"


def chance_holds(
    kind: ConstraintKind, param: UncertainValue, lhs_total: float, alpha
) -> bool:
    """Does the chance constraint hold at combined shipment `lhs_total`?

    Supply/capacity rows require belief >= alpha that the uncertain bound
    is at least the shipped total, i.e. 1 - cdf(lhs) >= alpha; demand rows
    require belief >= alpha that the requirement is at most the delivered
    total, i.e. cdf(lhs) >= alpha. A small tolerance keeps the boundary
    point (lhs equal to the quantile) on the feasible side.
    """
    alpha = as_alpha(alpha)
    phi = param.cdf(float(lhs_total))
    if kind is ConstraintKind.DEMAND:
        return phi >= alpha - BOUNDARY_TOL
    return (1.0 - phi) >= alpha - BOUNDARY_TOL


@dataclass(frozen=True)
class DeterministicModel:
    """Crisp LP data equivalent to an uncertain instance.

    `obj_coeffs` keeps the full (K, r, m, n, l) expected-cost tensor;
    `columns` lists the active (non-forbidden) route tuples in row-major
    order and fixes the LP column numbering used everywhere downstream.
    """

    m: int
    n: int
    l: int
    r: int
    K: int
    obj_coeffs: np.ndarray  # (K, r, m, n, l)
    supply_rhs: np.ndarray  # (r, m)
    demand_rhs: np.ndarray  # (r, n)
    capacity_rhs: np.ndarray  # (l,)
    columns: tuple  # active (p, i, j, k) tuples, LP column order
    forbidden: frozenset

    def __post_init__(self):
        for name in ("obj_coeffs", "supply_rhs", "demand_rhs", "capacity_rhs"):
            arr = np.asarray(getattr(self, name), dtype=float)
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)
        object.__setattr__(self, "columns", tuple(tuple(c) for c in self.columns))

    @property
    def n_cols(self) -> int:
        return len(self.columns)

    def column_index(self) -> dict:
        """Map (p, i, j, k) -> LP column position."""
        return {tup: c for c, tup in enumerate(self.columns)}

    def column_names(self) -> list[str]:
        """Deterministic 1-based column names, e.g. ``x_p1_i2_j3_k1``."""
        return [
            f"x_p{p + 1}_i{i + 1}_j{j + 1}_k{k + 1}" for p, i, j, k in self.columns
        ]

    def objective_vector(self, t: int) -> np.ndarray:
        """Expected-cost coefficients of objective `t` over active columns."""
        if not 0 <= t < self.K:
            raise IndexError(f"objective index {t} out of range for K={self.K}")
        return np.array([self.obj_coeffs[(t, *tup)] for tup in self.columns])

    def lp_rows(self) -> tuple[LpRow, ...]:
        """Constraint rows in fixed order: supply, demand, capacity."""
        return tuple(
            LpRow(coeffs, rel, rhs) for _, coeffs, rel, rhs in self._row_parts()
        )

    def row_labels(self) -> tuple[str, ...]:
        labels = []
        for parts, *_ in self._row_parts():
            kind = parts[0]
            if kind is ConstraintKind.SUPPLY:
                labels.append(f"supply_p{parts[1] + 1}_i{parts[2] + 1}")
            elif kind is ConstraintKind.DEMAND:
                labels.append(f"demand_p{parts[1] + 1}_j{parts[2] + 1}")
            else:
                labels.append(f"capacity_k{parts[1] + 1}")
        return tuple(labels)

    def _row_parts(self):
        idx = self.column_index()
        n_cols = self.n_cols
        for p in range(self.r):
            for i in range(self.m):
                coeffs = np.zeros(n_cols)
                for j in range(self.n):
                    for k in range(self.l):
                        c = idx.get((p, i, j, k))
                        if c is not None:
                            coeffs[c] = 1.0
                yield (ConstraintKind.SUPPLY, p, i), coeffs, LE, float(
                    self.supply_rhs[p, i]
                )
        for p in range(self.r):
            for j in range(self.n):
                coeffs = np.zeros(n_cols)
                for i in range(self.m):
                    for k in range(self.l):
                        c = idx.get((p, i, j, k))
                        if c is not None:
                            coeffs[c] = 1.0
                yield (ConstraintKind.DEMAND, p, j), coeffs, GE, float(
                    self.demand_rhs[p, j]
                )
        for k in range(self.l):
            coeffs = np.zeros(n_cols)
            for tup, c in idx.items():
                if tup[3] == k:
                    coeffs[c] = 1.0
            yield (ConstraintKind.CAPACITY, k), coeffs, LE, float(
                self.capacity_rhs[k]
            )

    def build_lp(self, objective: np.ndarray) -> StandardLp:
        objective = np.asarray(objective, dtype=float)
        if objective.shape != (self.n_cols,):
            raise ValueError(
                f"objective must have {self.n_cols} entries, got {objective.shape}"
            )
        return StandardLp(objective, self.lp_rows())

    def decision_tensor(self, x_flat: np.ndarray) -> DecisionTensor:
        """Expand an LP solution vector into the full shipment tensor."""
        x_flat = np.asarray(x_flat, dtype=float)
        if x_flat.shape != (self.n_cols,):
            raise ValueError(
                f"expected {self.n_cols} variable values, got {x_flat.shape}"
            )
        full = np.zeros((self.r, self.m, self.n, self.l))
        for c, tup in enumerate(self.columns):
            full[tup] = x_flat[c]
        return DecisionTensor(full)

    def flatten(self, x: DecisionTensor) -> np.ndarray:
        """Project a shipment tensor onto the active LP columns."""
        return np.array([x.x[tup] for tup in self.columns])

    def expectation(self, t: int, x_flat: np.ndarray) -> float:
        return float(self.objective_vector(t) @ np.asarray(x_flat, dtype=float))


def transform(model: MmstpModel) -> DeterministicModel:
    """Convert a validated uncertain model into its deterministic equivalent.

    Supply and capacity bounds take the (1 - alpha) quantile of their
    uncertain limit; demand takes the alpha quantile of its requirement.
    Forbidden routes are eliminated rather than constrained to zero, so the
    LP never sees them.
    """
    diags = validate(model)
    if diags:
        raise InvalidModelError(diags)

    obj = np.stack([expected_cost_array(model, t) for t in range(model.K)])
    supply_rhs = np.empty((model.r, model.m))
    for p in range(model.r):
        for i in range(model.m):
            alpha = as_alpha(model.gamma[p][i])
            supply_rhs[p, i] = model.supply[p][i].inv_cdf(1.0 - alpha)
    demand_rhs = np.empty((model.r, model.n))
    for p in range(model.r):
        for j in range(model.n):
            demand_rhs[p, j] = model.demand[p][j].inv_cdf(model.beta[p][j])
    capacity_rhs = np.empty(model.l)
    for k in range(model.l):
        alpha = as_alpha(model.delta[k])
        capacity_rhs[k] = model.capacity[k].inv_cdf(1.0 - alpha)

    columns = tuple(tup for tup in model.routes() if tup not in model.forbidden)
    return DeterministicModel(
        m=model.m,
        n=model.n,
        l=model.l,
        r=model.r,
        K=model.K,
        obj_coeffs=obj,
        supply_rhs=supply_rhs,
        demand_rhs=demand_rhs,
        capacity_rhs=capacity_rhs,
        columns=columns,
        forbidden=model.forbidden,
    )
