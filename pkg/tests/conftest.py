"""Shared fixtures: the bundled instance, published reference rows, and
seeded random generators for models and small LPs."""

from __future__ import annotations

import numpy as np
import pytest

from ustp import (
    DecisionTensor,
    MmstpModel,
    UncertainValue,
    bundled_example_path,
    load_model,
    transform,
)
from ustp.simplex import GE, LE, LpRow, StandardLp

# Published 5-row sweep of the bundled instance, lambda_1 descending:
# (lambda1, lambda2, E[f1], E[f2], scalar).
SWEEP_ROWS = [
    (1.00, 0.00, 336.964, 2232.086, 336.964),
    (0.75, 0.25, 462.541, 1725.394, 778.255),
    (0.50, 0.50, 578.579, 1531.072, 1054.825),
    (0.25, 0.75, 716.810, 1436.487, 1256.568),
    (0.00, 1.00, 826.795, 1408.991, 1408.991),
]

IDEAL = (336.964, 1408.991)

# Published distance-method plan for the bundled instance: nonzero
# shipments keyed by 1-based (p, i, j, k), and its expected costs.
REFERENCE_PLAN = {
    (1, 1, 2, 1): 10.319,
    (1, 1, 2, 2): 2.893,
    (1, 2, 3, 2): 0.874,
    (1, 2, 4, 1): 14.423,
    (1, 3, 1, 1): 11.817,
    (1, 3, 3, 1): 14.549,
    (2, 1, 1, 2): 2.337,
    (2, 1, 2, 1): 3.817,
    (2, 1, 2, 2): 3.0,
    (2, 1, 4, 2): 10.423,
    (2, 2, 3, 2): 13.634,
    (2, 3, 1, 1): 2.650,
    (2, 3, 1, 2): 2.435,
}
REFERENCE_PLAN_EXPECTATIONS = (551.148, 1571.781)


@pytest.fixture(scope="session")
def bundled_model():
    return load_model(bundled_example_path())


@pytest.fixture(scope="session")
def bundled_det(bundled_model):
    return transform(bundled_model)


@pytest.fixture(scope="session")
def reference_plan_tensor(bundled_model):
    x = np.zeros((bundled_model.r, bundled_model.m, bundled_model.n, bundled_model.l))
    for (p, i, j, k), v in REFERENCE_PLAN.items():
        x[p - 1, i - 1, j - 1, k - 1] = v
    return DecisionTensor(x)


def _random_uncertain(rng, lo: float, hi: float, spread: float) -> UncertainValue:
    """A random variable of a random family centered in [lo, hi]."""
    center = float(rng.uniform(lo, hi))
    family = rng.integers(3)
    if family == 0:
        half = float(rng.uniform(0.3, spread))
        return UncertainValue.linear(center - half, center + half)
    if family == 1:
        left = float(rng.uniform(0.3, spread))
        right = float(rng.uniform(0.3, spread))
        return UncertainValue.zigzag(center - left, center, center + right)
    return UncertainValue.normal(center, float(rng.uniform(0.3, spread / 2 + 0.5)))


def make_random_model(seed: int, m=5, n=5, l=2, r=2, K=2) -> MmstpModel:
    """A random feasible instance: supplies and capacities are drawn wide
    enough to cover the demand quantiles whatever the confidence levels."""
    rng = np.random.default_rng(seed)
    gamma = [[float(rng.uniform(0.6, 0.95)) for _ in range(m)] for _ in range(r)]
    beta = [[float(rng.uniform(0.6, 0.95)) for _ in range(n)] for _ in range(r)]
    delta = [float(rng.uniform(0.6, 0.95)) for _ in range(l)]

    demand = [[_random_uncertain(rng, 4.0, 14.0, 2.0) for _ in range(n)] for _ in range(r)]
    # worst-case demand quantile per item (confidence < 0.95)
    need = [sum(demand[p][j].inv_cdf(0.96) for j in range(n)) for p in range(r)]

    supply = []
    for p in range(r):
        row = []
        for _ in range(m):
            base = 2.0 * need[p] / m + float(rng.uniform(1.0, 6.0))
            row.append(UncertainValue.linear(base, base + float(rng.uniform(1.0, 5.0))))
        supply.append(row)
    capacity = []
    for _ in range(l):
        base = 1.3 * sum(need) + float(rng.uniform(1.0, 10.0))
        capacity.append(UncertainValue.linear(base, base + float(rng.uniform(1.0, 5.0))))

    cost = [
        [
            [
                [
                    [_random_uncertain(rng, 2.0, 30.0, 3.0) for _ in range(l)]
                    for _ in range(n)
                ]
                for _ in range(m)
            ]
            for _ in range(r)
        ]
        for _ in range(K)
    ]
    return MmstpModel(
        m=m, n=n, l=l, r=r, K=K,
        cost=cost, supply=supply, demand=demand, capacity=capacity,
        gamma=gamma, beta=beta, delta=delta,
    ).check()


def make_random_lp(rng) -> StandardLp:
    """A small random LP, kept bounded by per-variable box rows so the
    brute-force oracle's status judgment (empty = infeasible) is sound."""
    n = int(rng.integers(2, 7))
    n_random = int(rng.integers(1, 7))
    objective = rng.uniform(-5.0, 5.0, size=n)
    rows = []
    for _ in range(n_random):
        coeffs = rng.uniform(-3.0, 3.0, size=n)
        relation = LE if rng.random() < 0.5 else GE
        rhs = float(rng.uniform(-4.0, 8.0))
        rows.append(LpRow(coeffs, relation, rhs))
    for i in range(n):
        box = np.zeros(n)
        box[i] = 1.0
        rows.append(LpRow(box, LE, float(rng.uniform(0.5, 10.0))))
    return StandardLp(objective, tuple(rows))


@pytest.fixture
def random_model_factory():
    return make_random_model


@pytest.fixture
def random_lp_factory():
    return make_random_lp


@pytest.fixture
def infeasible_model():
    """Demand quantiles exceed what supplies can ever provide."""
    big = UncertainValue.linear(100.0, 110.0)
    small = UncertainValue.linear(1.0, 2.0)
    cost = [[[[[UncertainValue.linear(1.0, 3.0) for _ in range(1)] for _ in range(1)]
              for _ in range(1)] for _ in range(1)] for _ in range(2)]
    return MmstpModel(
        m=1, n=1, l=1, r=1, K=2,
        cost=cost,
        supply=[[small]],
        demand=[[big]],
        capacity=[big],
        gamma=[[0.9]],
        beta=[[0.9]],
        delta=[0.9],
    ).check()
