"""Dense two-phase primal simplex for small transportation-scale LPs.

Minimizes c.x subject to rows of the form a.x <= b or a.x >= b and x >= 0.
Phase 1 drives artificial variables (attached to >= rows after sign
normalization) to zero; phase 2 optimizes the true objective. Pivoting
uses Bland's rule throughout, so the method terminates even on the highly
degenerate polytopes transportation models produce.

`enumerate_vertices_bruteforce` is a testing oracle: it enumerates every
basic feasible solution of a tiny instance so the simplex answer can be
certified independently.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

PIVOT_TOL = 1e-9  # reduced-cost / pivot-element eligibility
FEAS_TOL = 1e-7  # feasibility and phase-1 zero test

LE = "<="
GE = ">="

# brute-force oracle size guard
_BRUTE_MAX_COLS = 8
_BRUTE_MAX_ROWS = 12


class LpStatus(str, Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LpRow:
    coeffs: np.ndarray
    relation: str  # LE or GE
    rhs: float

    def __post_init__(self):
        coeffs = np.asarray(self.coeffs, dtype=float)
        coeffs.flags.writeable = False
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "rhs", float(self.rhs))
        if self.relation not in (LE, GE):
            raise ValueError(f"relation must be {LE!r} or {GE!r}, got {self.relation!r}")
        if not np.all(np.isfinite(self.coeffs)) or not np.isfinite(self.rhs):
            raise ValueError("LP row contains non-finite data")


@dataclass(frozen=True)
class StandardLp:
    """min objective.x  s.t. each row holds and x >= 0."""

    objective: np.ndarray
    rows: tuple[LpRow, ...]

    def __post_init__(self):
        obj = np.asarray(self.objective, dtype=float)
        obj.flags.writeable = False
        object.__setattr__(self, "objective", obj)
        object.__setattr__(self, "rows", tuple(self.rows))
        if obj.ndim != 1 or obj.size == 0 or not np.all(np.isfinite(obj)):
            raise ValueError("objective must be a non-empty finite vector")
        for idx, row in enumerate(self.rows):
            if row.coeffs.shape != obj.shape:
                raise ValueError(
                    f"row {idx} has {row.coeffs.size} coefficients, "
                    f"expected {obj.size}"
                )

    @property
    def columns(self) -> int:
        return self.objective.size


@dataclass(frozen=True)
class LpSolution:
    status: LpStatus
    x: Optional[np.ndarray]  # structural variables, present iff OPTIMAL
    objective_value: Optional[float]
    iterations: int
    reduced_costs: Optional[np.ndarray]  # structural reduced costs at optimum

    def __post_init__(self):
        for name in ("x", "reduced_costs"):
            v = getattr(self, name)
            if v is not None:
                v = np.asarray(v, dtype=float)
                v.flags.writeable = False
                object.__setattr__(self, name, v)


def _pivot(tab: np.ndarray, pr: int, pc: int) -> None:
    """Gauss-Jordan step on the full tableau (objective row included)."""
    tab[pr] /= tab[pr, pc]
    col = tab[:, pc].copy()
    col[pr] = 0.0
    tab -= np.outer(col, tab[pr])
    tab[:, pc] = 0.0
    tab[pr, pc] = 1.0


def _choose_entering(zrow: np.ndarray, eligible: int) -> int:
    """Bland: lowest-index column with negative reduced cost, or -1."""
    for j in range(eligible):
        if zrow[j] < -PIVOT_TOL:
            return j
    return -1


def _choose_leaving(tab: np.ndarray, basis: list[int], pc: int) -> int:
    """Min-ratio row; ties broken by smallest basis variable index (Bland)."""
    nrows = len(basis)
    best, best_ratio = -1, np.inf
    for i in range(nrows):
        a = tab[i, pc]
        if a > PIVOT_TOL:
            ratio = tab[i, -1] / a
            if ratio < best_ratio - PIVOT_TOL or (
                abs(ratio - best_ratio) <= PIVOT_TOL
                and best >= 0
                and basis[i] < basis[best]
            ):
                best, best_ratio = i, ratio
    return best


def _install_objective(tab: np.ndarray, basis: list[int], cost: np.ndarray) -> None:
    """Write the reduced-cost row for `cost`, pricing out the current basis."""
    tab[-1, :] = 0.0
    tab[-1, : cost.size] = cost
    for i, b in enumerate(basis):
        if abs(cost[b]) > 0.0:
            tab[-1] -= cost[b] * tab[i]


def _run_simplex(tab: np.ndarray, basis: list[int], eligible: int) -> tuple[str, int]:
    """Pivot to optimality; returns (status, pivot count)."""
    iters = 0
    while True:
        pc = _choose_entering(tab[-1], eligible)
        if pc < 0:
            return "optimal", iters
        pr = _choose_leaving(tab, basis, pc)
        if pr < 0:
            return "unbounded", iters
        _pivot(tab, pr, pc)
        basis[pr] = pc
        iters += 1


def solve_lp(lp: StandardLp) -> LpSolution:
    """Two-phase simplex; returns a vertex optimum or a status.

    Infeasibility surfaces in phase 1 (artificials cannot all reach zero);
    unboundedness in phase 2 (an improving column with no blocking row).
    Deterministic: the same input always yields the same solution.
    """
    n = lp.columns
    nrows = len(lp.rows)
    if nrows == 0:
        # no constraints: x = 0 is optimal unless some cost is negative
        if np.any(lp.objective < -PIVOT_TOL):
            return LpSolution(LpStatus.UNBOUNDED, None, None, 0, None)
        return LpSolution(
            LpStatus.OPTIMAL, np.zeros(n), 0.0, 0, lp.objective.copy()
        )

    # normalize to rhs >= 0, then attach slack (<=) or surplus+artificial (>=)
    A = np.array([row.coeffs for row in lp.rows], dtype=float)
    b = np.array([row.rhs for row in lp.rows], dtype=float)
    rels = [row.relation for row in lp.rows]
    for i in range(nrows):
        if b[i] < 0.0:
            A[i] *= -1.0
            b[i] = -b[i]
            rels[i] = GE if rels[i] == LE else LE

    n_slack = nrows
    art_rows = [i for i in range(nrows) if rels[i] == GE]
    n_art = len(art_rows)
    total = n + n_slack + n_art

    tab = np.zeros((nrows + 1, total + 1))
    tab[:nrows, :n] = A
    tab[:nrows, -1] = b
    basis = [0] * nrows
    art_cols = {}
    next_art = n + n_slack
    for i in range(nrows):
        sign = 1.0 if rels[i] == LE else -1.0
        tab[i, n + i] = sign
        if rels[i] == LE:
            basis[i] = n + i
        else:
            tab[i, next_art] = 1.0
            basis[i] = next_art
            art_cols[next_art] = i
            next_art += 1

    iterations = 0
    if n_art:
        phase1_cost = np.zeros(total)
        for c in art_cols:
            phase1_cost[c] = 1.0
        _install_objective(tab, basis, phase1_cost)
        status, it = _run_simplex(tab, basis, total)
        iterations += it
        if -tab[-1, -1] > FEAS_TOL:  # residual artificial mass
            return LpSolution(LpStatus.INFEASIBLE, None, None, iterations, None)
        # drive any zero-valued artificial out of the basis
        drop_rows = []
        for i in range(nrows):
            if basis[i] >= n + n_slack:
                pc = -1
                for j in range(n + n_slack):
                    if abs(tab[i, j]) > PIVOT_TOL:
                        pc = j
                        break
                if pc < 0:
                    drop_rows.append(i)  # redundant row
                else:
                    _pivot(tab, i, pc)
                    basis[i] = pc
                    iterations += 1
        if drop_rows:
            keep = [i for i in range(nrows) if i not in drop_rows]
            tab = tab[keep + [nrows]]
            basis = [basis[i] for i in keep]
            nrows = len(basis)

    # phase 2 on structural + slack columns only
    tab = np.delete(tab, np.s_[n + n_slack : total], axis=1)
    cost2 = np.zeros(n + n_slack)
    cost2[:n] = lp.objective
    _install_objective(tab, basis, cost2)
    status, it = _run_simplex(tab, basis, n + n_slack)
    iterations += it
    if status == "unbounded":
        return LpSolution(LpStatus.UNBOUNDED, None, None, iterations, None)

    x = np.zeros(n)
    for i, bv in enumerate(basis):
        if bv < n:
            x[bv] = tab[i, -1]
    x[np.abs(x) < 1e-12] = 0.0
    value = float(lp.objective @ x)
    reduced = tab[-1, :n].copy()
    return LpSolution(LpStatus.OPTIMAL, x, value, iterations, reduced)


def enumerate_vertices_bruteforce(lp: StandardLp) -> list[np.ndarray]:
    """Every basic feasible solution of a tiny LP (structural coordinates).

    Converts to equality form with one slack/surplus column per row and
    tries every basis. Intended purely as a certification oracle; the size
    guard keeps the basis enumeration tractable.
    """
    n = lp.columns
    nrows = len(lp.rows)
    if n > _BRUTE_MAX_COLS or nrows > _BRUTE_MAX_ROWS:
        raise ValueError(
            f"brute-force oracle accepts at most {_BRUTE_MAX_COLS} columns "
            f"and {_BRUTE_MAX_ROWS} rows, got {n}x{nrows}"
        )
    if nrows == 0:
        return [np.zeros(n)]

    A = np.zeros((nrows, n + nrows))
    b = np.zeros(nrows)
    for i, row in enumerate(lp.rows):
        A[i, :n] = row.coeffs
        A[i, n + i] = 1.0 if row.relation == LE else -1.0
        b[i] = row.rhs

    vertices = []
    for cols in itertools.combinations(range(n + nrows), nrows):
        B = A[:, cols]
        try:
            xb = np.linalg.solve(B, b)
        except np.linalg.LinAlgError:
            continue
        if not np.all(np.isfinite(xb)) or np.any(xb < -FEAS_TOL):
            continue
        if not np.allclose(B @ xb, b, atol=1e-8):
            continue
        full = np.zeros(n + nrows)
        full[list(cols)] = xb
        vertices.append(np.maximum(full[:n], 0.0))
    return vertices
