"""
Discounted multi-period profit under decarbonisation scenarios.

A single investment ratio is chosen up front and held for the whole horizon;
period ``t`` (0-based) is weighted by ``g**t`` so the first period is
undiscounted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import ModelDomainError
from .model import ALPHA_MAX, BASELINE, FirmParams, profit
from .optimizer import DEFAULT_TOL, local_diagnostics, maximize_scalar

#: Discount factor used when none is given. Chosen by grid calibration so the
#: immediate-transition, 3-period cell reproduces (0.5692, 173.0291).
DEFAULT_DISCOUNT = 0.9

SCENARIO_NAMES = ("immediate", "quick", "slow", "none")
HORIZONS = (3, 6)

_TRAJECTORIES = {
    "immediate": {
        "k": [5, 4.5, 4, 3.5, 3, 2.5],
        "c": [1.6, 1.7, 1.8, 2, 2.2, 2.4],
        "beta": [0.9, 0.85, 0.8, 0.75, 0.72, 0.7],
        "B": [4, 4, 4, 4, 4, 4],
    },
    "quick": {
        "k": [1.5, 5, 4.5, 4, 3.5, 3],
        "c": [2.4, 1.6, 1.7, 1.8, 2, 2.2],
        "beta": [0.6, 0.9, 0.85, 0.8, 0.75, 0.72],
        "B": [3, 3, 3, 3, 3, 3],
    },
    "slow": {
        "k": [2, 3, 4, 5, 4.5, 4],
        "c": [2.2, 1.9, 1.6, 1.7, 1.8, 2],
        "beta": [0.7, 0.8, 0.9, 0.85, 0.8, 0.75],
        "B": [2, 2, 2, 2, 2, 2],
    },
}

#: Published (scenario, horizon) -> (optimal alpha, max discounted profit).
PUBLISHED_TARGETS = {
    ("immediate", 3): (0.5692, 173.0291),
    ("quick", 3): (0.541, 158.3299),
    ("slow", 3): (0.4768, 131.7251),
    ("immediate", 6): (0.6216, 212.0262),
    ("quick", 6): (0.5678, 235.1407),
    ("slow", 6): (0.4606, 261.1729),
}

_SERIES = ("c", "k", "beta", "B", "A")


@dataclass(frozen=True)
class ScenarioPath:
    """Per-period parameter trajectories plus constant price and discount factor."""

    name: str
    c: tuple
    k: tuple
    beta: tuple
    B: tuple
    A: tuple
    p: float = BASELINE.p
    g: float = DEFAULT_DISCOUNT

    def __post_init__(self):
        for s in _SERIES:
            object.__setattr__(self, s, tuple(float(x) for x in getattr(self, s)))
        n = len(self.c)
        if n == 0:
            raise ModelDomainError("scenario horizon must be at least 1")
        for s in _SERIES:
            if len(getattr(self, s)) != n:
                raise ModelDomainError(
                    f"series {s!r} has {len(getattr(self, s))} entries, expected {n}")
        if not (isinstance(self.g, (int, float)) and 0.0 <= self.g <= 1.0):
            raise ModelDomainError(f"discount factor g must lie in [0, 1], got {self.g}")
        # constructing the per-period params validates them
        self.periods()

    @property
    def horizon(self) -> int:
        return len(self.c)

    def periods(self) -> list:
        return [FirmParams(p=self.p, c=self.c[t], A=self.A[t], k=self.k[t],
                           beta=self.beta[t], B=self.B[t])
                for t in range(self.horizon)]

    def weights(self) -> list:
        return [self.g ** t for t in range(self.horizon)]

    def with_discount(self, g: float) -> "ScenarioPath":
        return ScenarioPath(self.name, self.c, self.k, self.beta, self.B, self.A, self.p, g)

    def to_dict(self) -> dict:
        d = {"name": self.name, "horizon": self.horizon, "p": self.p, "g": self.g}
        d.update({s: list(getattr(self, s)) for s in _SERIES})
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "ScenarioPath":
        missing = [s for s in ("c", "k", "beta", "B") if s not in d]
        if missing:
            raise ModelDomainError(f"scenario is missing series {missing}")
        n = len(d["c"])
        if "horizon" in d and int(d["horizon"]) != n:
            raise ModelDomainError(f"horizon {d['horizon']} does not match series length {n}")
        A = d.get("A", [BASELINE.A] * n)
        if isinstance(A, (int, float)):
            A = [A] * n
        return cls(name=str(d.get("name", "custom")), c=d["c"], k=d["k"], beta=d["beta"],
                   B=d["B"], A=A, p=float(d.get("p", BASELINE.p)),
                   g=float(d.get("g", DEFAULT_DISCOUNT)))


@dataclass(frozen=True)
class ScenarioResult:
    name: str
    horizon: int
    g: float
    alpha_star: float
    discounted_profit: float
    per_period_profits: list = field(default_factory=list)
    per_period_discounted: list = field(default_factory=list)
    stationarity_residual: Optional[float] = None
    second_derivative: Optional[float] = None
    soc_sign: str = "fixed"

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def builtin_scenario(name: str, horizon: int = 6, g: float = DEFAULT_DISCOUNT,
                     base: FirmParams = BASELINE) -> ScenarioPath:
    """Tabulated decarbonisation trajectory, truncated to the first ``horizon`` years.

    ``"none"`` repeats the baseline firm parameters every period.
    """
    if name not in SCENARIO_NAMES:
        raise ModelDomainError(
            f"unknown scenario {name!r}; expected one of {', '.join(SCENARIO_NAMES)}")
    if horizon not in HORIZONS:
        raise ModelDomainError(f"horizon must be 3 or 6, got {horizon}")
    A = [base.A] * horizon
    if name == "none":
        return ScenarioPath(name, [base.c] * horizon, [base.k] * horizon,
                            [base.beta] * horizon, [base.B] * horizon, A, base.p, g)
    tr = _TRAJECTORIES[name]
    return ScenarioPath(name, tr["c"][:horizon], tr["k"][:horizon], tr["beta"][:horizon],
                        tr["B"][:horizon], A, base.p, g)


def period_profits(path: ScenarioPath, alpha: float) -> list:
    return [profit(fp, alpha) for fp in path.periods()]


def discounted_objective(path: ScenarioPath, alpha):
    """``sum_t g**t * profit_t(alpha)``; vectorises over ``alpha``."""
    total = 0.0
    for w, fp in zip(path.weights(), path.periods()):
        if w == 0.0:
            continue
        total = total + w * profit(fp, alpha)
    return total


def _result(path: ScenarioPath, alpha: float, diag=(None, None, "fixed")) -> ScenarioResult:
    pis = period_profits(path, alpha)
    disc = [w * pi for w, pi in zip(path.weights(), pis)]
    return ScenarioResult(
        name=path.name, horizon=path.horizon, g=path.g, alpha_star=alpha,
        discounted_profit=float(discounted_objective(path, alpha)),
        per_period_profits=pis, per_period_discounted=disc,
        stationarity_residual=diag[0], second_derivative=diag[1], soc_sign=diag[2])


def optimize_scenario(path: ScenarioPath, tol: float = DEFAULT_TOL) -> ScenarioResult:
    """Investment ratio maximising the discounted objective.

    The ``"none"`` scenario makes no transition investment, so alpha is fixed
    at 0 and no search is run.
    """
    if path.name == "none":
        return _result(path, 0.0)
    res = maximize_scalar(lambda a: discounted_objective(path, a), 0.0, ALPHA_MAX, tol)
    return _result(path, res.alpha_star,
                   (res.stationarity_residual, res.second_derivative, res.soc_sign))


@dataclass(frozen=True)
class CalibrationTarget:
    scenario: str
    horizon: int
    alpha: float
    profit: float


@dataclass(frozen=True)
class CellResidual:
    scenario: str
    horizon: int
    target_alpha: float
    target_profit: float
    model_alpha: float
    model_profit: float

    @property
    def alpha_rel_error(self) -> float:
        return (self.model_alpha - self.target_alpha) / self.target_alpha

    @property
    def profit_rel_error(self) -> float:
        return (self.model_profit - self.target_profit) / self.target_profit

    def to_dict(self) -> dict:
        d = dict(self.__dict__)
        d["alpha_rel_error"] = self.alpha_rel_error
        d["profit_rel_error"] = self.profit_rel_error
        return d


@dataclass(frozen=True)
class CalibrationReport:
    best_g: float
    best_loss: float
    cells: list
    losses: list  # (g, loss) for every grid point, in grid order

    def to_dict(self) -> dict:
        return {"best_g": self.best_g, "best_loss": self.best_loss,
                "cells": [c.to_dict() for c in self.cells],
                "losses": [list(x) for x in self.losses]}


def published_targets() -> list:
    return [CalibrationTarget(s, n, a, pi) for (s, n), (a, pi) in PUBLISHED_TARGETS.items()]


def discount_grid(lo: float = 0.5, hi: float = 1.0, step: float = 0.01) -> list:
    """Inclusive uniform grid, rounded so that e.g. 0.95 appears exactly."""
    n = int(round((hi - lo) / step))
    return [round(lo + i * step, 12) for i in range(n + 1)]


def _cells(targets: Sequence[CalibrationTarget], g: float, base: FirmParams,
           tol: float) -> list:
    out = []
    for t in targets:
        r = optimize_scenario(builtin_scenario(t.scenario, t.horizon, g, base), tol)
        out.append(CellResidual(t.scenario, t.horizon, t.alpha, t.profit,
                                r.alpha_star, r.discounted_profit))
    return out


def calibrate_discount(targets: Optional[Sequence[CalibrationTarget]] = None,
                       g_grid: Optional[Iterable[float]] = None,
                       base: FirmParams = BASELINE,
                       tol: float = DEFAULT_TOL) -> CalibrationReport:
    """Pick the grid discount factor that best reproduces target optima.

    The loss at each ``g`` is the sum over target cells of the squared
    relative errors of both the optimal alpha and the max profit. Ties keep
    the first grid point. Large residuals are reported, never raised.
    """
    targets = list(published_targets() if targets is None else targets)
    grid = list(discount_grid() if g_grid is None else g_grid)
    if not grid:
        raise ModelDomainError("discount grid is empty")
    losses = []
    best = None
    for g in grid:
        cells = _cells(targets, g, base, tol)
        loss = math.fsum(c.alpha_rel_error ** 2 + c.profit_rel_error ** 2 for c in cells)
        losses.append((g, loss))
        if best is None or loss < best[1]:
            best = (g, loss, cells)
    return CalibrationReport(best_g=best[0], best_loss=best[1], cells=best[2], losses=losses)


def generate_targets(g: float, cells: Iterable = None, base: FirmParams = BASELINE,
                     tol: float = DEFAULT_TOL) -> list:
    """Targets produced by the model itself at discount ``g`` (for round-trip checks)."""
    cells = list(PUBLISHED_TARGETS) if cells is None else list(cells)
    out = []
    for s, n in cells:
        r = optimize_scenario(builtin_scenario(s, n, g, base), tol)
        out.append(CalibrationTarget(s, n, r.alpha_star, r.discounted_profit))
    return out


def scenario_grid(g: float = DEFAULT_DISCOUNT, base: FirmParams = BASELINE,
                  names: Sequence[str] = ("immediate", "quick", "slow"),
                  horizons: Sequence[int] = HORIZONS, tol: float = DEFAULT_TOL) -> list:
    """Optimise every requested (scenario, horizon) pair, horizon-major order."""
    return [optimize_scenario(builtin_scenario(s, n, g, base), tol)
            for n in horizons for s in names]
