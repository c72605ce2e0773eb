"""
Government intervention: expected profit under probabilistic subsidies and taxes.

Two channels adjust single-period profit. The carbon-price channel pays
``s1`` per unit of output with probability ``pr1`` (price above threshold)
and charges ``q1`` per unit otherwise. The emission channel pays ``s2`` per
emission unit with probability ``pr2`` (emissions below threshold) and
charges ``q2`` per emission unit otherwise. Both probabilities are taken as
given inputs; the thresholds behind them are not modelled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields, replace
from typing import Optional, Sequence

from .errors import ModelDomainError
from .model import ALPHA_MAX, FirmParams, profit_breakdown
from .optimizer import DEFAULT_TOL, OptimizationResult, maximize_scalar
from .sensitivity import SweepRow, change_rate

POLICY_PARAMETERS = ("s1", "s2", "q1", "q2", "pr1", "pr2")


@dataclass(frozen=True)
class PolicyParams:
    s1: float = 0.8
    s2: float = 0.8
    q1: float = 0.6
    q2: float = 0.6
    pr1: float = 0.5
    pr2: float = 0.5

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ModelDomainError(f"{f.name} must be a real number, got {value!r}")
            if not math.isfinite(value):
                raise ModelDomainError(f"{f.name} must be finite, got {value!r}")
            object.__setattr__(self, f.name, float(value))
        for name in ("s1", "s2", "q1", "q2"):
            if getattr(self, name) < 0:
                raise ModelDomainError(f"{name} must be >= 0, got {getattr(self, name)}")
        for name in ("pr1", "pr2"):
            if not 0 <= getattr(self, name) <= 1:
                raise ModelDomainError(f"{name} must lie in [0, 1], got {getattr(self, name)}")

    def with_value(self, name: str, value: float) -> "PolicyParams":
        if name not in POLICY_PARAMETERS:
            raise ModelDomainError(f"unknown policy parameter {name!r}")
        return replace(self, **{name: value})

    def to_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


BASELINE_POLICY = PolicyParams()
ZERO_POLICY = PolicyParams(0.0, 0.0, 0.0, 0.0, 0.5, 0.5)


def policy_profit(params: FirmParams, policy: PolicyParams, alpha):
    """Expected profit after subsidies and taxes; vectorises over ``alpha``."""
    br = profit_breakdown(params, alpha)
    return (br.profit
            + policy.s1 * br.units * policy.pr1
            - policy.q1 * br.units * (1.0 - policy.pr1)
            + policy.s2 * br.carbon_emission * policy.pr2
            - policy.q2 * br.carbon_emission * (1.0 - policy.pr2))


def optimize_policy(params: FirmParams, policy: PolicyParams,
                    tol: float = DEFAULT_TOL) -> OptimizationResult:
    return maximize_scalar(lambda a: policy_profit(params, policy, a), 0.0, ALPHA_MAX, tol)


def default_policy_values(parameter: str, baseline: PolicyParams = BASELINE_POLICY,
                          points: int = 200) -> list:
    """Figure-style sweep range: ``[0, 1]`` for probabilities, ``[0, 2 x baseline]`` for rates."""
    if parameter not in POLICY_PARAMETERS:
        raise ModelDomainError(f"unknown policy parameter {parameter!r}")
    hi = 1.0 if parameter.startswith("pr") else 2.0 * getattr(baseline, parameter)
    if points == 1:
        return [hi / 2]
    return [hi * i / (points - 1) for i in range(points)]


def policy_sweep(parameter: str, values: Sequence[float], params: FirmParams,
                 policy_baseline: PolicyParams = BASELINE_POLICY,
                 tol: float = DEFAULT_TOL) -> list:
    """One-at-a-time sweep of a policy parameter.

    Change rates are relative to the optimum at ``policy_baseline``.
    """
    if parameter not in POLICY_PARAMETERS:
        raise ModelDomainError(f"unknown policy parameter {parameter!r}")
    policies = [policy_baseline.with_value(parameter, v) for v in values]
    base = optimize_policy(params, policy_baseline, tol)
    rows = []
    for v, pol in zip(values, policies):
        r = optimize_policy(params, pol, tol)
        rows.append(SweepRow(
            parameter=parameter,
            parameter_value=float(v),
            optimal_alpha=r.alpha_star,
            max_objective=r.objective_value,
            alpha_change_rate_pct=change_rate(r.alpha_star, base.alpha_star),
            profit_change_rate_pct=change_rate(r.objective_value, base.objective_value),
        ))
    return rows


def policy_directions(params: FirmParams, policy: PolicyParams = BASELINE_POLICY,
                      values: Optional[dict] = None, tol: float = DEFAULT_TOL) -> dict:
    """Sweep every policy parameter over five points; keyed by parameter name."""
    values = values or {p: default_policy_values(p, policy, 5) for p in POLICY_PARAMETERS}
    return {p: policy_sweep(p, values[p], params, policy, tol) for p in POLICY_PARAMETERS}
