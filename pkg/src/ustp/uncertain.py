"""Uncertain variables with closed-form regular distributions.

Uncertainty theory models a quantity whose value is judged by degree of
belief as an *uncertain variable* characterized by its uncertainty
distribution ``Phi(x)``, the belief that the variable is at most ``x``.
This module implements the three classical families with closed forms for
the distribution, its inverse (the quantile function), and the expected
value ``E = integral of inv_cdf(alpha) over alpha in (0, 1)``:

* ``linear(a, b)`` - belief ramps linearly from 0 at ``a`` to 1 at ``b``.
* ``zigzag(a, b, c)`` - piecewise linear through ``(a, 0)``, ``(b, 1/2)``,
  ``(c, 1)``.
* ``normal(e, sigma)`` - logistic-shaped distribution
  ``Phi(x) = 1 / (1 + exp(pi (e - x) / (sqrt(3) sigma)))`` centered at
  ``e`` with scale ``sigma``.

Independent same-family variables add parameterwise, and the inverse
distribution of a nonnegative linear combination of independent variables
is the same combination of the inverse distributions. Those two facts are
what lets the transportation model convert expected-cost objectives and
chance constraints into crisp arithmetic.

Values are immutable and all operations are pure functions, so instances
are safe to share across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

SQRT3_OVER_PI = math.sqrt(3.0) / math.pi


class Family(str, Enum):
    """Distribution family of an uncertain variable."""

    LINEAR = "linear"
    ZIGZAG = "zigzag"
    NORMAL = "normal"


#: number of parameters each family takes
PARAM_COUNT = {Family.LINEAR: 2, Family.ZIGZAG: 3, Family.NORMAL: 2}


@dataclass(frozen=True)
class ConfidenceLevel:
    """A chance-constraint confidence level, strictly inside (0, 1).

    The endpoints are rejected because the normal family's quantile is
    unbounded there.
    """

    alpha: float

    def __post_init__(self):
        alpha = float(self.alpha)
        if not 0.0 < alpha < 1.0 or math.isnan(alpha):
            raise ValueError(
                f"confidence level must lie in the open interval (0, 1), got {self.alpha!r}"
            )
        object.__setattr__(self, "alpha", alpha)

    def __float__(self) -> float:
        return self.alpha


def as_alpha(alpha) -> float:
    """Coerce a float or ConfidenceLevel to a validated float in (0, 1)."""
    if isinstance(alpha, ConfidenceLevel):
        return alpha.alpha
    return ConfidenceLevel(float(alpha)).alpha


@dataclass(frozen=True)
class UncertainValue:
    """A scalar uncertain parameter with a regular uncertainty distribution.

    Construct through :meth:`linear`, :meth:`zigzag`, or :meth:`normal`.
    Degenerate parameters (zero-width support, zero scale) are rejected so
    that the distribution is always continuous and strictly increasing on
    its support; crisp data should be modeled by the caller as plain reals.
    """

    family: Family
    params: tuple[float, ...]

    def __post_init__(self):
        params = tuple(float(p) for p in self.params)
        object.__setattr__(self, "params", params)
        if any(not math.isfinite(p) for p in params):
            raise ValueError(f"parameters must be finite, got {params}")
        if len(params) != PARAM_COUNT[self.family]:
            raise ValueError(
                f"{self.family.value} takes {PARAM_COUNT[self.family]} parameters, "
                f"got {len(params)}"
            )
        if self.family is Family.LINEAR:
            a, b = params
            if not a < b:
                raise ValueError(f"linear requires a < b, got a={a}, b={b}")
        elif self.family is Family.ZIGZAG:
            a, b, c = params
            if not (a < b < c):
                raise ValueError(f"zigzag requires a < b < c, got a={a}, b={b}, c={c}")
        else:
            _, sigma = params
            if not sigma > 0.0:
                raise ValueError(f"normal requires sigma > 0, got sigma={sigma}")

    @staticmethod
    def linear(a: float, b: float) -> "UncertainValue":
        return UncertainValue(Family.LINEAR, (a, b))

    @staticmethod
    def zigzag(a: float, b: float, c: float) -> "UncertainValue":
        return UncertainValue(Family.ZIGZAG, (a, b, c))

    @staticmethod
    def normal(e: float, sigma: float) -> "UncertainValue":
        return UncertainValue(Family.NORMAL, (e, sigma))

    def cdf(self, x: float) -> float:
        """Distribution value ``Phi(x)``; total and nondecreasing in ``x``."""
        x = float(x)
        if self.family is Family.LINEAR:
            a, b = self.params
            if x <= a:
                return 0.0
            if x >= b:
                return 1.0
            return (x - a) / (b - a)
        if self.family is Family.ZIGZAG:
            a, b, c = self.params
            if x <= a:
                return 0.0
            if x >= c:
                return 1.0
            if x <= b:
                return (x - a) / (2.0 * (b - a))
            return (x + c - 2.0 * b) / (2.0 * (c - b))
        e, sigma = self.params
        t = math.pi * (e - x) / (math.sqrt(3.0) * sigma)
        # logistic evaluated so that exp never overflows
        if t >= 0.0:
            z = math.exp(-t)
            return z / (1.0 + z)
        return 1.0 / (1.0 + math.exp(t))

    def inv_cdf(self, alpha) -> float:
        """Quantile ``inv_cdf(alpha)``, the unique x with ``Phi(x) = alpha``.

        ``alpha`` must lie strictly inside (0, 1); accepts a float or a
        :class:`ConfidenceLevel`.
        """
        alpha = as_alpha(alpha)
        if self.family is Family.LINEAR:
            a, b = self.params
            return a + alpha * (b - a)
        if self.family is Family.ZIGZAG:
            a, b, c = self.params
            if alpha <= 0.5:
                return a + 2.0 * alpha * (b - a)
            return 2.0 * b - c + 2.0 * alpha * (c - b)
        e, sigma = self.params
        return e + sigma * SQRT3_OVER_PI * math.log(alpha / (1.0 - alpha))

    def expected_value(self) -> float:
        """Closed-form expected value.

        linear: (a + b) / 2; zigzag: (a + 2b + c) / 4; normal: e.
        """
        if self.family is Family.LINEAR:
            a, b = self.params
            return (a + b) / 2.0
        if self.family is Family.ZIGZAG:
            a, b, c = self.params
            return (a + 2.0 * b + c) / 4.0
        return self.params[0]

    def expected_value_numeric(self, n_points: int) -> float:
        """Midpoint-rule quadrature of the quantile integral over (0, 1).

        Independent oracle for :meth:`expected_value`; the midpoint grid
        stays inside [1/(2n), 1 - 1/(2n)], away from the normal family's
        unbounded endpoints.
        """
        n = int(n_points)
        if n < 2:
            raise ValueError(f"n_points must be >= 2, got {n_points}")
        total = 0.0
        for i in range(n):
            total += self.inv_cdf((i + 0.5) / n)
        return total / n

    def __add__(self, other) -> "UncertainValue":
        if not isinstance(other, UncertainValue):
            return NotImplemented
        return sum_independent(self, other)

    def __mul__(self, c) -> "UncertainValue":
        if not isinstance(c, (int, float)):
            return NotImplemented
        return scale(self, c)

    __rmul__ = __mul__


def sum_independent(u: UncertainValue, v: UncertainValue) -> UncertainValue:
    """Sum of two independent same-family variables (parameterwise add).

    Mixed-family sums have no closed form here and are rejected.
    """
    if u.family is not v.family:
        raise ValueError(
            f"cannot add {u.family.value} and {v.family.value} variables in closed form"
        )
    params = tuple(a + b for a, b in zip(u.params, v.params))
    return UncertainValue(u.family, params)


def scale(v: UncertainValue, c: float) -> UncertainValue:
    """Scale by a strictly positive constant (parameterwise multiply)."""
    c = float(c)
    if not c > 0.0:
        raise ValueError(f"scale factor must be > 0, got {c}")
    return UncertainValue(v.family, tuple(c * p for p in v.params))


def inverse_of_monotone_combination(
    values: Sequence[UncertainValue],
    coeffs: Sequence[float],
    alpha,
) -> float:
    """Quantile of a nonnegative linear combination of independent variables.

    A combination with nonnegative coefficients is strictly increasing in
    every argument, so its inverse distribution at ``alpha`` is the same
    combination of the individual quantiles at ``alpha``.
    """
    if len(values) != len(coeffs):
        raise ValueError(
            f"got {len(values)} variables but {len(coeffs)} coefficients"
        )
    if not values:
        raise ValueError("need at least one variable")
    coeffs = [float(c) for c in coeffs]
    if any(c < 0.0 for c in coeffs):
        raise ValueError("coefficients must be nonnegative")
    alpha = as_alpha(alpha)
    return sum(c * v.inv_cdf(alpha) for c, v in zip(coeffs, values))
