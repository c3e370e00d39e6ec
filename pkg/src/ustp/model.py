"""Multi-item solid transportation instances with uncertain data.

An instance ships ``r`` distinct items from ``m`` sources to ``n``
destinations over ``l`` conveyances, judged by ``K`` cost objectives.
Every cost, supply, demand, and capacity figure is an
:class:`~ustp.uncertain.UncertainValue`; each constraint row carries its
own confidence level. ``forbidden`` lists (item, source, destination,
conveyance) routes that must carry zero shipment.

All indices in this module are 0-based; the file format and CLI translate
to the 1-based convention used in reports.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .errors import InvalidModelError
from .uncertain import ConfidenceLevel, UncertainValue


def _tuplify(obj):
    """Recursively freeze nested lists into tuples."""
    if isinstance(obj, (list, tuple)):
        return tuple(_tuplify(o) for o in obj)
    return obj


@dataclass(frozen=True)
class MmstpModel:
    """A complete uncertain transportation instance.

    ``cost[t][p][i][j][k]`` is the unit cost of sending item ``p`` from
    source ``i`` to destination ``j`` by conveyance ``k`` under objective
    ``t``. ``supply[p][i]``, ``demand[p][j]``, and ``capacity[k]`` bound
    shipments; ``gamma``/``beta``/``delta`` are the matching confidence
    levels. Instances are frozen; run :meth:`check` (or :func:`validate`)
    before handing one to the solvers.
    """

    m: int
    n: int
    l: int
    r: int
    K: int
    cost: tuple  # [t][p][i][j][k] UncertainValue
    supply: tuple  # [p][i] UncertainValue
    demand: tuple  # [p][j] UncertainValue
    capacity: tuple  # [k] UncertainValue
    gamma: tuple  # [p][i] ConfidenceLevel
    beta: tuple  # [p][j] ConfidenceLevel
    delta: tuple  # [k] ConfidenceLevel
    forbidden: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        for name in ("cost", "supply", "demand", "capacity", "gamma", "beta", "delta"):
            object.__setattr__(self, name, _tuplify(getattr(self, name)))
        object.__setattr__(
            self, "forbidden", frozenset(tuple(t) for t in self.forbidden)
        )

    def routes(self) -> Iterator[tuple[int, int, int, int]]:
        """All (p, i, j, k) tuples in row-major order."""
        for p in range(self.r):
            for i in range(self.m):
                for j in range(self.n):
                    for k in range(self.l):
                        yield (p, i, j, k)

    def check(self) -> "MmstpModel":
        """Raise :class:`InvalidModelError` unless :func:`validate` is clean."""
        diags = validate(self)
        if diags:
            raise InvalidModelError(diags)
        return self


@dataclass(frozen=True)
class DecisionTensor:
    """A shipment plan ``x[p][i][j][k]`` of nonnegative quantities."""

    x: np.ndarray  # shape (r, m, n, l)

    def __post_init__(self):
        arr = np.asarray(self.x, dtype=float)
        if arr.ndim != 4:
            raise ValueError(f"decision tensor must have 4 axes, got {arr.ndim}")
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "x", arr)

    @staticmethod
    def zeros(model: MmstpModel) -> "DecisionTensor":
        return DecisionTensor(np.zeros((model.r, model.m, model.n, model.l)))

    def value(self, p: int, i: int, j: int, k: int) -> float:
        return float(self.x[p, i, j, k])

    def violations(self, model: MmstpModel, tol: float = 1e-9) -> list[str]:
        """Diagnostics for negative entries and shipments on forbidden routes."""
        out = []
        if self.x.shape != (model.r, model.m, model.n, model.l):
            return [f"decision tensor shape {self.x.shape} does not match model"]
        if self.x.min(initial=0.0) < -tol:
            out.append("negative shipment quantity")
        for p, i, j, k in sorted(model.forbidden):
            if abs(self.x[p, i, j, k]) > tol:
                out.append(
                    f"forbidden route (p={p + 1}, i={i + 1}, j={j + 1}, k={k + 1}) "
                    f"carries {self.x[p, i, j, k]!r}"
                )
        return out


def _shape_ok(tensor, dims) -> bool:
    """True if `tensor` is nested tuples matching `dims` exactly."""
    if not dims:
        return not isinstance(tensor, tuple)
    if not isinstance(tensor, tuple) or len(tensor) != dims[0]:
        return False
    return all(_shape_ok(sub, dims[1:]) for sub in tensor)


def _leaves(tensor):
    if isinstance(tensor, tuple):
        for sub in tensor:
            yield from _leaves(sub)
    else:
        yield tensor


def validate(model: MmstpModel) -> list[str]:
    """Return one diagnostic string per invariant violation (empty if clean).

    Checks dimension positivity, tensor shape consistency, element types,
    confidence ranges, and forbidden-index bounds. Never raises; a model
    built from untrusted data can always be diagnosed.
    """
    diags: list[str] = []
    for name in ("m", "n", "l", "r", "K"):
        v = getattr(model, name)
        if not isinstance(v, int) or v < 1:
            diags.append(f"dimension {name} must be a positive integer, got {v!r}")
    if diags:
        return diags

    m, n, l, r, K = model.m, model.n, model.l, model.r, model.K
    shapes = [
        ("cost", model.cost, (K, r, m, n, l)),
        ("supply", model.supply, (r, m)),
        ("demand", model.demand, (r, n)),
        ("capacity", model.capacity, (l,)),
        ("gamma", model.gamma, (r, m)),
        ("beta", model.beta, (r, n)),
        ("delta", model.delta, (l,)),
    ]
    for name, tensor, dims in shapes:
        if not _shape_ok(tensor, dims):
            diags.append(
                f"dimension mismatch: {name} must be a full "
                f"{'x'.join(map(str, dims))} array"
            )
            continue
        uncertain = name in ("cost", "supply", "demand", "capacity")
        for leaf in _leaves(tensor):
            if uncertain and not isinstance(leaf, UncertainValue):
                diags.append(f"{name} contains a non-uncertain entry {leaf!r}")
                break
            if not uncertain:
                alpha = leaf.alpha if isinstance(leaf, ConfidenceLevel) else leaf
                if not isinstance(alpha, (int, float)) or not 0.0 < alpha < 1.0:
                    diags.append(
                        f"{name}: confidence level must lie in (0,1), got {leaf!r}"
                    )
                    break

    for tup in sorted(model.forbidden):
        if len(tup) != 4 or not all(isinstance(v, int) for v in tup):
            diags.append(f"forbidden entry {tup!r} is not an index quadruple")
            continue
        p, i, j, k = tup
        if not (0 <= p < r and 0 <= i < m and 0 <= j < n and 0 <= k < l):
            diags.append(
                f"forbidden route (p={p + 1}, i={i + 1}, j={j + 1}, k={k + 1}) "
                f"is out of bounds"
            )
    return diags


def expected_cost_array(model: MmstpModel, t: int) -> np.ndarray:
    """Expected unit costs for objective ``t`` as an (r, m, n, l) array."""
    if not 0 <= t < model.K:
        raise IndexError(f"objective index {t} out of range for K={model.K}")
    out = np.empty((model.r, model.m, model.n, model.l))
    for p, i, j, k in model.routes():
        out[p, i, j, k] = model.cost[t][p][i][j][k].expected_value()
    return out


def objective_expectation(model: MmstpModel, t: int, x: DecisionTensor) -> float:
    """Expected total cost of plan ``x`` under objective ``t``.

    Expectation is linear, so this is just the expected-cost tensor
    contracted with the shipment tensor.
    """
    if x.x.shape != (model.r, model.m, model.n, model.l):
        raise ValueError(
            f"decision tensor shape {x.x.shape} does not match model "
            f"({model.r}, {model.m}, {model.n}, {model.l})"
        )
    return float(np.sum(expected_cost_array(model, t) * x.x))
