"""Optimal low-carbon transition investment for a carbon-priced firm."""

from .errors import (ConfigError, InvalidBracketError, ModelDomainError, ModelError,
                     NonFiniteObjectiveError)
from .model import (ALPHA_MAX, BASELINE, FirmParams, ProfitBreakdown, carbon_intensity,
                    profit, profit_breakdown, profit_derivative, sigmoid_gain, units)
from .multiperiod import (DEFAULT_DISCOUNT, ScenarioPath, ScenarioResult, builtin_scenario,
                          calibrate_discount, discounted_objective, optimize_scenario)
from .optimizer import OptimizationResult, maximize_profit, maximize_scalar, verify_optimum
from .policy import BASELINE_POLICY, PolicyParams, optimize_policy, policy_profit, policy_sweep
from .sensitivity import SweepRow, SweepSpec, margin_sweep, run_sweep, sensitivity_table

__version__ = "0.1.0"
