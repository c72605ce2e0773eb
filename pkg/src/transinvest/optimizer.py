"""Bounded scalar maximisation over the investment ratio, plus optimality checks."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import InvalidBracketError, NonFiniteObjectiveError
from .model import ALPHA_MAX, FD_STEP, FirmParams, central_difference, profit

GOLDEN = 0.5 * (3.0 - math.sqrt(5.0))
DEFAULT_TOL = 1e-7
EPS = np.finfo(float).eps


@dataclass(frozen=True)
class OptimizationResult:
    """Outcome of :func:`maximize_scalar`.

    ``soc_sign`` is one of ``"negative"``, ``"zero"``, ``"positive"`` or
    ``"boundary"``; the last is used when ``alpha_star`` sits within one
    finite-difference step of the search interval, in which case
    ``stationarity_residual`` is a one-sided slope.
    """

    alpha_star: float
    objective_value: float
    iterations: int
    evaluations: int
    bracket_width_final: float
    stationarity_residual: float
    second_derivative: Optional[float]
    soc_sign: str
    converged: bool

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def _sign_label(value: float, scale: float, h: float) -> str:
    # FD second differences carry roughly eps * |f| / h**2 of rounding noise
    floor = 64.0 * EPS * max(1.0, abs(scale)) / (h * h)
    if value < -floor:
        return "negative"
    if value > floor:
        return "positive"
    return "zero"


def local_diagnostics(objective: Callable[[float], float], alpha: float, lo: float,
                      hi: float, h: float = FD_STEP) -> tuple:
    """Return ``(stationarity_residual, second_derivative, soc_sign)`` at ``alpha``."""
    value = objective(alpha)
    if lo + h <= alpha <= hi - h:
        slope = central_difference(objective, alpha, 1, h)
        curv = central_difference(objective, alpha, 2, h)
        return abs(slope), curv, _sign_label(curv, value, h)
    if alpha - lo < hi - alpha:
        slope = (objective(min(alpha + h, hi)) - value) / h
    else:
        slope = (value - objective(max(alpha - h, lo))) / h
    return abs(slope), None, "boundary"


def maximize_scalar(objective: Callable[[float], float], lo: float = 0.0,
                    hi: float = ALPHA_MAX, tol: float = DEFAULT_TOL,
                    max_iter: int = 500, h: float = FD_STEP) -> OptimizationResult:
    """Maximise ``objective`` on ``[lo, hi]``.

    Golden-section search with parabolic interpolation steps when they are
    well conditioned (Brent's scheme, run on ``-objective``). The loop stops
    once the bracket is no wider than ``tol``. Both interval ends are also
    evaluated so that boundary maxima are found. Among all probed points whose
    value ties the best to within a few ulps, the smallest alpha is returned.

    Raises
    ------
    InvalidBracketError
        If ``lo >= hi`` or either end lies outside ``[0, ALPHA_MAX]``.
    NonFiniteObjectiveError
        If any probed value is NaN or infinite.
    """
    if not (0.0 <= lo < hi <= ALPHA_MAX):
        raise InvalidBracketError(
            f"need 0 <= lo < hi <= {ALPHA_MAX}, got lo={lo}, hi={hi}")
    if not tol >= 1e-12:
        raise ValueError(f"tol must be >= 1e-12, got {tol}")

    probes: list[tuple[float, float]] = []

    def neg(x: float) -> float:
        fx = float(objective(x))
        if not math.isfinite(fx):
            raise NonFiniteObjectiveError(f"objective returned {fx} at alpha={x}")
        probes.append((x, fx))
        return -fx

    neg(lo)
    neg(hi)

    a, b = lo, hi
    x = w = v = a + GOLDEN * (b - a)
    fx = fw = fv = neg(x)
    d = e = 0.0
    tol1 = tol / 4.0
    tol2 = 2.0 * tol1
    iterations = 0
    converged = True
    while True:
        xm = 0.5 * (a + b)
        if abs(x - xm) <= tol2 - 0.5 * (b - a):
            break
        if iterations >= max_iter:
            converged = False
            break
        iterations += 1
        golden_step = True
        if abs(e) > tol1:
            r = (x - w) * (fx - fv)
            q = (x - v) * (fx - fw)
            p = (x - v) * q - (x - w) * r
            q = 2.0 * (q - r)
            if q > 0.0:
                p = -p
            q = abs(q)
            etemp, e = e, d
            if abs(p) < abs(0.5 * q * etemp) and q * (a - x) < p < q * (b - x):
                d = p / q
                u = x + d
                if u - a < tol2 or b - u < tol2:
                    d = tol1 if xm >= x else -tol1
                golden_step = False
        if golden_step:
            e = (a - x) if x >= xm else (b - x)
            d = GOLDEN * e
        u = x + d if abs(d) >= tol1 else x + (tol1 if d > 0 else -tol1)
        fu = neg(u)
        if fu <= fx:
            if u >= x:
                a = x
            else:
                b = x
            v, fv, w, fw, x, fx = w, fw, x, fx, u, fu
        else:
            if u < x:
                a = u
            else:
                b = u
            if fu <= fw or w == x:
                v, fv, w, fw = w, fw, u, fu
            elif fu <= fv or v == x or v == w:
                v, fv = u, fu

    best = max(fp for _, fp in probes)
    tie = 8.0 * EPS * max(1.0, abs(best))
    alpha_star = min(xp for xp, fp in probes if fp >= best - tie)
    value = float(objective(alpha_star))
    residual, curv, soc = local_diagnostics(objective, alpha_star, lo, hi, h)
    return OptimizationResult(
        alpha_star=alpha_star,
        objective_value=value,
        iterations=iterations,
        evaluations=len(probes),
        bracket_width_final=b - a,
        stationarity_residual=residual,
        second_derivative=curv,
        soc_sign=soc,
        converged=converged,
    )


def grid_argmax(objective: Callable[[np.ndarray], np.ndarray], n: int = 100_000,
                lo: float = 0.0, hi: float = ALPHA_MAX) -> tuple[float, float]:
    """Brute-force argmax of a vectorised objective on an ``n``-point uniform grid.

    Ties go to the smallest alpha.
    """
    grid = np.linspace(lo, hi, n)
    values = np.asarray(objective(grid), dtype=float)
    i = int(np.argmax(values))
    return float(grid[i]), float(values[i])


@dataclass(frozen=True)
class OptimumDiagnostics:
    alpha: float
    value: float
    stationarity_residual: float
    second_derivative: Optional[float]
    soc_sign: str
    grid_dominant: bool
    grid_alpha: float
    grid_value: float


def verify_optimum(params: FirmParams, alpha_star: float, grid_points: int = 10_000,
                   objective: Optional[Callable] = None) -> OptimumDiagnostics:
    """Check a claimed maximiser of single-period profit.

    ``grid_dominant`` is true iff the value at ``alpha_star`` is no more than
    1e-9 below every point of a ``grid_points`` uniform grid on
    ``[0, ALPHA_MAX]``. ``objective`` (vectorised, alpha -> value) replaces
    plain profit, e.g. for the policy-adjusted objective.
    """
    if objective is None:
        def objective(a):
            return profit(params, a)
    value = float(objective(alpha_star))
    residual, curv, soc = local_diagnostics(lambda a: float(objective(a)), alpha_star,
                                            0.0, ALPHA_MAX)
    grid = np.linspace(0.0, ALPHA_MAX, grid_points)
    values = np.asarray(objective(grid), dtype=float)
    i = int(np.argmax(values))
    return OptimumDiagnostics(
        alpha=alpha_star,
        value=value,
        stationarity_residual=residual,
        second_derivative=curv,
        soc_sign=soc,
        grid_dominant=bool(np.all(value >= values - 1e-9)),
        grid_alpha=float(grid[i]),
        grid_value=float(values[i]),
    )


def maximize_profit(params: FirmParams, tol: float = DEFAULT_TOL) -> OptimizationResult:
    """Optimal transition investment ratio for the single-period model."""
    return maximize_scalar(lambda a: profit(params, a), 0.0, ALPHA_MAX, tol)
