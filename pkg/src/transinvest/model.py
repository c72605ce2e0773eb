"""
Single-period production, cost and profit functions for a firm deciding
what share of its assets to divert into low-carbon transition.

The firm chooses ``alpha``, the fraction of total assets ``A`` spent on the
transition. Output is

    units = 2 * sigmoid(alpha * k) * ((1 - alpha) * A) ** beta

and carbon intensity falls from 1 towards 0 as ``alpha * k`` grows:

    intensity = 2 - 2 * sigmoid(alpha * k)

Profit is revenue minus production cost minus carbon cost, which regroups to
``(p - c - intensity * B) * units``.

All functions accept a scalar ``alpha`` or a numpy array of them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields, replace
from typing import Callable, Union

import numpy as np

from .errors import ModelDomainError

ArrayLike = Union[float, np.ndarray]

#: Guard keeping the optimiser away from alpha = 1, where (1 - alpha)**beta
#: has an unbounded derivative for beta < 1.
ALPHA_GUARD = 1e-9
ALPHA_MAX = 1.0 - ALPHA_GUARD

#: Central finite-difference step.
FD_STEP = 1e-5


@dataclass(frozen=True)
class FirmParams:
    """Inputs of the single-period model.

    Parameters
    ----------
    p : float
        Selling price per unit.
    c : float
        Production cost per unit.
    A : float
        Total assets.
    k : float
        Low-carbon production efficiency coefficient.
    beta : float
        Original productivity coefficient (capital elasticity), ``0 < beta <= 1``.
    B : float
        Carbon price per emission unit.
    """

    p: float = 3.6
    c: float = 1.6
    A: float = 100.0
    k: float = 2.0
    beta: float = 0.8
    B: float = 1.0

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ModelDomainError(f"{f.name} must be a real number, got {value!r}")
            if not math.isfinite(value):
                raise ModelDomainError(f"{f.name} must be finite, got {value!r}")
            object.__setattr__(self, f.name, float(value))
        if self.A <= 0:
            raise ModelDomainError(f"total assets A must be > 0, got {self.A}")
        if not 0 < self.beta <= 1:
            raise ModelDomainError(f"beta must satisfy 0 < beta <= 1, got {self.beta}")
        if self.k < 0:
            raise ModelDomainError(f"efficiency coefficient k must be >= 0, got {self.k}")
        if self.B < 0:
            raise ModelDomainError(f"carbon price B must be >= 0, got {self.B}")
        if self.c < 0:
            raise ModelDomainError(f"production cost c must be >= 0, got {self.c}")

    @property
    def margin(self) -> float:
        """Selling profit per unit, ``p - c``."""
        return self.p - self.c

    def with_value(self, name: str, value: float) -> "FirmParams":
        """Copy with one parameter replaced; ``margin`` moves ``p`` with ``c`` fixed."""
        if name == "margin":
            return replace(self, p=self.c + value)
        if name not in {f.name for f in fields(self)}:
            raise ModelDomainError(f"unknown firm parameter {name!r}")
        return replace(self, **{name: value})

    def to_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


BASELINE = FirmParams()


@dataclass(frozen=True)
class ProfitBreakdown:
    units: ArrayLike
    revenue: ArrayLike
    production_cost: ArrayLike
    carbon_intensity: ArrayLike
    carbon_emission: ArrayLike
    carbon_cost: ArrayLike
    profit: ArrayLike


def _check_alpha(alpha: ArrayLike, hi: float = 1.0) -> None:
    a = np.asarray(alpha, dtype=float)
    if not np.all(np.isfinite(a)) or np.any(a < 0.0) or np.any(a > hi):
        raise ModelDomainError(f"alpha must lie in [0, {hi}], got {alpha!r}")


def sigmoid_gain(alpha: ArrayLike, k: float) -> ArrayLike:
    """Output multiplier ``2 / (1 + exp(-alpha * k))``; equals 1 at zero investment."""
    return 2.0 / (1.0 + np.exp(-np.multiply(alpha, k)))


def carbon_intensity(alpha: ArrayLike, k: float) -> ArrayLike:
    """Emissions per unit, ``2 - sigmoid_gain``, in ``(0, 1]`` for ``alpha * k >= 0``."""
    return 2.0 - sigmoid_gain(alpha, k)


def units(params: FirmParams, alpha: ArrayLike) -> ArrayLike:
    """Production volume at investment ratio ``alpha``."""
    _check_alpha(alpha)
    capital = np.multiply(1.0 - np.asarray(alpha, dtype=float), params.A)
    out = sigmoid_gain(alpha, params.k) * np.power(capital, params.beta)
    return float(out) if np.ndim(out) == 0 else out


def profit_breakdown(params: FirmParams, alpha: ArrayLike) -> ProfitBreakdown:
    """Revenue, cost components and profit at ``alpha``."""
    q = units(params, alpha)
    intensity = carbon_intensity(alpha, params.k)
    emission = intensity * q
    carbon_cost = emission * params.B
    profit = (params.p - params.c - intensity * params.B) * q
    if np.ndim(profit) == 0:
        intensity, emission, carbon_cost, profit = (
            float(intensity), float(emission), float(carbon_cost), float(profit))
    return ProfitBreakdown(
        units=q,
        revenue=params.p * q,
        production_cost=params.c * q,
        carbon_intensity=intensity,
        carbon_emission=emission,
        carbon_cost=carbon_cost,
        profit=profit,
    )


def profit(params: FirmParams, alpha: ArrayLike) -> ArrayLike:
    """Single-period profit ``(p - c - intensity * B) * units``."""
    return profit_breakdown(params, alpha).profit


def central_difference(f: Callable[[float], float], x: float, order: int = 1,
                       h: float = FD_STEP) -> float:
    """First or second central finite difference of a scalar function."""
    if order == 1:
        return (f(x + h) - f(x - h)) / (2.0 * h)
    if order == 2:
        return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h)
    raise ValueError(f"order must be 1 or 2, got {order}")


def profit_derivative(params: FirmParams, alpha: float, order: int = 1,
                      h: float = FD_STEP) -> float:
    """Numerical d(profit)/d(alpha) (``order=1``) or its second derivative.

    Raises
    ------
    ModelDomainError
        If ``alpha`` is within one step of either end of ``[0, 1 - ALPHA_GUARD]``.
    """
    if not h <= alpha <= ALPHA_MAX - h:
        raise ModelDomainError(
            f"alpha={alpha} too close to the boundary for step h={h}")
    return central_difference(lambda a: profit(params, a), alpha, order, h)


def printed_foc(params: FirmParams, alpha: ArrayLike) -> ArrayLike:
    """The closed-form first-order expression as commonly stated for this model.

    It is the bracketed margin times a positive factor and drops the
    product-rule terms, so its sign does not locate the profit maximum. Kept
    for comparison with :func:`profit_derivative` only.
    """
    e = np.exp(-np.multiply(alpha, params.k))
    cap = np.power(np.multiply(1.0 - np.asarray(alpha, dtype=float), params.A), params.beta)
    return 2.0 * cap * (-2.0 * params.B * e / (e + 1.0) - params.c + params.p) / (e + 1.0)


def printed_soc(params: FirmParams, alpha: ArrayLike) -> ArrayLike:
    """The closed-form second-order expression as commonly stated; comparison only."""
    a = np.asarray(alpha, dtype=float)
    k, beta, A = params.k, params.beta, params.A
    ek = np.exp(a * k)
    lead = 2.0 * a * ek * np.power(A - a * A, beta) / ((a - 1.0) ** 2 * (ek + 1.0) ** 3)
    body = (-(a - 1.0) ** 2 * k ** 2 * (ek - 1.0)
            + (beta - 1.0) * beta * (ek + 1.0) ** 2
            + 2.0 * (a - 1.0) * beta * k * (ek + 1.0))
    return lead * body
