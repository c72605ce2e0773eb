"""One-at-a-time parameter sweeps of the single-period optimum."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ModelDomainError
from .model import BASELINE, FirmParams
from .optimizer import DEFAULT_TOL, maximize_profit

FIRM_SWEEP_PARAMETERS = ("margin", "B", "k", "beta", "c")

CSV_HEADER = ("parameter", "parameter_value", "optimal_alpha", "max_objective",
              "alpha_change_rate_pct", "profit_change_rate_pct")

#: Blocks of the +/-10 % and +/-50 % table, in display order.
TABLE_PARAMETERS = ("k", "c", "beta", "B")
TABLE_FACTORS = (-0.5, -0.1, 0.0, 0.1, 0.5)

# Dense figure ranges; not taken from any published figure axes.
FIGURE_RANGES = {
    "margin": (-1.0, 10.0),
    "B": (0.0, 2.0),
    "k": (0.0, 6.0),
    "beta": (0.1, 1.0),
    "c": (0.0, 3.6),
}


@dataclass(frozen=True)
class SweepRow:
    parameter: str
    parameter_value: float
    optimal_alpha: float
    max_objective: float
    alpha_change_rate_pct: float
    profit_change_rate_pct: float

    def as_tuple(self) -> tuple:
        return tuple(getattr(self, h) for h in CSV_HEADER)


@dataclass(frozen=True)
class SweepSpec:
    parameter: str
    values: tuple
    baseline: FirmParams = BASELINE

    def __post_init__(self):
        if self.parameter not in FIRM_SWEEP_PARAMETERS:
            raise ModelDomainError(
                f"unknown sweep parameter {self.parameter!r}; "
                f"expected one of {', '.join(FIRM_SWEEP_PARAMETERS)}")
        values = tuple(float(v) for v in self.values)
        if not values:
            raise ModelDomainError("sweep needs at least one value")
        if any(b <= a for a, b in zip(values, values[1:])):
            raise ModelDomainError("sweep values must be strictly increasing")
        if self.parameter == "beta" and values[-1] > 1.0:
            raise ModelDomainError(f"beta sweep values must be <= 1, got {values[-1]}")
        object.__setattr__(self, "values", values)


def change_rate(value: float, base: float) -> float:
    """Percentage change of ``value`` relative to ``base``."""
    return 100.0 * (value - base) / base


def run_sweep(spec: SweepSpec, tol: float = DEFAULT_TOL) -> list:
    """Optimal alpha and max profit for each swept value.

    Change rates are relative to the optimum of ``spec.baseline``.
    """
    base = maximize_profit(spec.baseline, tol)
    rows = []
    for v in spec.values:
        params = spec.baseline.with_value(spec.parameter, v)
        r = base if params == spec.baseline else maximize_profit(params, tol)
        rows.append(SweepRow(
            parameter=spec.parameter,
            parameter_value=v,
            optimal_alpha=r.alpha_star,
            max_objective=r.objective_value,
            alpha_change_rate_pct=change_rate(r.alpha_star, base.alpha_star),
            profit_change_rate_pct=change_rate(r.objective_value, base.objective_value),
        ))
    return rows


def margin_sweep(values: Sequence[float], baseline: FirmParams = BASELINE,
                 tol: float = DEFAULT_TOL) -> list:
    """Sweep the unit margin ``p - c`` by moving ``p`` with ``c`` held fixed."""
    return run_sweep(SweepSpec("margin", tuple(values), baseline), tol)


def table_values(parameter: str, baseline: FirmParams = BASELINE) -> tuple:
    """Baseline scaled by -50/-10/0/+10/+50 %; beta is capped at 1."""
    if parameter == "margin":
        base = baseline.margin
    else:
        base = getattr(baseline, parameter)
    values = [round(base * (1.0 + f), 10) for f in TABLE_FACTORS]
    if parameter == "beta":
        values = [min(v, 1.0) for v in values]
    return tuple(values)


def sensitivity_table(baseline: FirmParams = BASELINE, tol: float = DEFAULT_TOL,
                      parameters: Iterable[str] = TABLE_PARAMETERS) -> list:
    """The 4 x 5 sensitivity table as a flat list of rows."""
    rows = []
    for name in parameters:
        rows.extend(run_sweep(SweepSpec(name, table_values(name, baseline), baseline), tol))
    return rows


def dense_values(lo: float, hi: float, points: int = 200) -> list:
    if points < 1:
        raise ModelDomainError("points must be >= 1")
    if points == 1:
        return [lo]
    return [lo + (hi - lo) * i / (points - 1) for i in range(points)]


def figure_sweep(parameter: str, baseline: FirmParams = BASELINE, points: int = 200,
                 tol: float = DEFAULT_TOL) -> list:
    lo, hi = FIGURE_RANGES[parameter]
    return run_sweep(SweepSpec(parameter, tuple(dense_values(lo, hi, points)), baseline), tol)


def format_number(x) -> str:
    """Seven significant digits, as used in every table and CSV emitted."""
    if x is None:
        return ""
    if isinstance(x, str):
        return x
    return f"{x:.7g}"


def rows_to_csv(rows: Iterable[SweepRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow([format_number(x) for x in row.as_tuple()])
    return buf.getvalue()
