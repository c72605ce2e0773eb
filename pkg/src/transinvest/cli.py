"""Command-line entry point: ``transinvest <subcommand> [options]``.

Exit codes: 0 ok, 2 parse error, 3 validation error, 4 solver error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import replace
from pathlib import Path

from .config import FORMATS, OutputConfig, RunConfig, ScenarioConfig, load_config
from .errors import (ConfigError, InvalidBracketError, ModelDomainError,
                     NonFiniteObjectiveError)
from .multiperiod import (DEFAULT_DISCOUNT, HORIZONS, CalibrationTarget, builtin_scenario,
                          calibrate_discount, discount_grid, optimize_scenario, published_targets)
from .optimizer import maximize_profit, verify_optimum
from .policy import (BASELINE_POLICY, POLICY_PARAMETERS, default_policy_values,
                     optimize_policy, policy_profit, policy_sweep)
from .sensitivity import (CSV_HEADER, FIGURE_RANGES, FIRM_SWEEP_PARAMETERS, SweepSpec,
                          dense_values, format_number, rows_to_csv, run_sweep,
                          sensitivity_table)

EXIT_OK, EXIT_PARSE, EXIT_VALIDATION, EXIT_SOLVER = 0, 2, 3, 4


class CliError(Exception):
    def __init__(self, code: int, kind: str, message: str):
        super().__init__(message)
        self.code = code
        self.kind = kind


def _round(x):
    if isinstance(x, float):
        return float(format_number(x))
    if isinstance(x, list):
        return [_round(v) for v in x]
    if isinstance(x, dict):
        return {k: _round(v) for k, v in x.items()}
    return x


def _table(header, rows) -> str:
    cells = [list(header)] + [[format_number(x) for x in r] for r in rows]
    widths = [max(len(str(r[i])) for r in cells) for i in range(len(header))]
    lines = ["  ".join(str(c).rjust(w) for c, w in zip(r, widths)) for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([format_number(x) for x in r])
    return buf.getvalue()


def _json(cfg: RunConfig, result) -> str:
    return json.dumps({"config": cfg.to_dict(), "result": _round(result)}, indent=2) + "\n"


def _emit(text: str, cfg: RunConfig) -> None:
    if cfg.output.path:
        Path(cfg.output.path).write_text(text)
    else:
        sys.stdout.write(text)


def _parse_floats(text: str, flag: str) -> list:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise CliError(EXIT_PARSE, "parse", f"{flag}: expected comma-separated numbers") from None


def _parse_range(text: str) -> list:
    try:
        lo, hi, step = (float(x) for x in text.split(":"))
    except ValueError:
        raise CliError(EXIT_PARSE, "parse", "--range: expected LO:HI:STEP") from None
    if step <= 0 or hi < lo:
        raise CliError(EXIT_VALIDATION, "validation", "--range: need LO <= HI and STEP > 0")
    return discount_grid(lo, hi, step)


# -- subcommands -------------------------------------------------------------

def cmd_optimize(cfg: RunConfig, args) -> str:
    if cfg.policy is not None:
        res = optimize_policy(cfg.firm, cfg.policy, cfg.solver.tol)

        def objective(a):
            return policy_profit(cfg.firm, cfg.policy, a)
    else:
        res = maximize_profit(cfg.firm, cfg.solver.tol)
        objective = None
    diag = verify_optimum(cfg.firm, res.alpha_star, objective=objective)
    doc = res.to_dict()
    doc["grid_dominant"] = diag.grid_dominant
    fmt = cfg.output.format or "table"
    if fmt == "json":
        return _json(cfg, doc)
    header = list(doc)
    row = [str(v) if isinstance(v, bool) or v is None else v for v in doc.values()]
    return _csv(header, [row]) if fmt == "csv" else _table(["field", "value"],
                                                           list(zip(header, row)))


def _sweep_output(cfg: RunConfig, rows, default="csv") -> str:
    fmt = cfg.output.format or default
    if fmt == "csv":
        return rows_to_csv(rows)
    if fmt == "json":
        return _json(cfg, [dict(zip(CSV_HEADER, r.as_tuple())) for r in rows])
    return _table(CSV_HEADER, [r.as_tuple() for r in rows])


def cmd_sensitivity(cfg: RunConfig, args) -> str:
    return _sweep_output(cfg, sensitivity_table(cfg.firm, cfg.solver.tol))


def cmd_scenario(cfg: RunConfig, args) -> str:
    sc = cfg.scenario
    if sc.path is not None:
        results = [optimize_scenario(sc.path.with_discount(sc.g), cfg.solver.tol)]
    else:
        names = ("immediate", "quick", "slow") if sc.name == "all" else (sc.name,)
        horizons = HORIZONS if sc.horizon is None else (sc.horizon,)
        results = [optimize_scenario(builtin_scenario(s, n, sc.g, cfg.firm), cfg.solver.tol)
                   for n in horizons for s in names]
    off_default = sc.g != DEFAULT_DISCOUNT
    fmt = cfg.output.format or "table"
    if fmt == "json":
        return _json(cfg, {"g": sc.g, "off_default_g": off_default,
                           "scenarios": [r.to_dict() for r in results]})
    header = ["scenario", "horizon", "g", "optimal_alpha", "max_profit", "per_period_profits"]
    rows = [[r.name, r.horizon, r.g, r.alpha_star, r.discounted_profit,
             " ".join(format_number(x) for x in r.per_period_profits)] for r in results]
    if fmt == "csv":
        return _csv(header, rows)
    text = _table(header, rows)
    if off_default:
        text += f"note: g={format_number(sc.g)} differs from the calibrated default {DEFAULT_DISCOUNT}\n"
    return text


def cmd_sweep(cfg: RunConfig, args) -> str:
    name = args.param
    if name not in FIRM_SWEEP_PARAMETERS + POLICY_PARAMETERS:
        raise CliError(EXIT_VALIDATION, "validation",
                       f"unknown parameter {name!r}; expected one of "
                       f"{', '.join(FIRM_SWEEP_PARAMETERS + POLICY_PARAMETERS)}")
    if args.values:
        values = _parse_floats(args.values, "--values")
    elif args.range:
        values = _parse_range(args.range)
    elif name in POLICY_PARAMETERS:
        values = default_policy_values(name, cfg.policy or BASELINE_POLICY, args.points)
    else:
        values = dense_values(*FIGURE_RANGES[name], args.points)
    if name in POLICY_PARAMETERS:
        rows = policy_sweep(name, values, cfg.firm, cfg.policy or BASELINE_POLICY,
                            cfg.solver.tol)
    else:
        rows = run_sweep(SweepSpec(name, tuple(values), cfg.firm), cfg.solver.tol)
    return _sweep_output(cfg, rows)


def load_targets(path) -> list:
    """Calibration targets from CSV (scenario,horizon,alpha,profit) or a JSON list."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read targets {path}: {exc}") from None
    try:
        if path.suffix == ".json" or text.lstrip().startswith("["):
            records = json.loads(text)
        else:
            records = list(csv.DictReader(io.StringIO(text)))
        targets = [CalibrationTarget(str(r["scenario"]), int(r["horizon"]),
                                     float(r["alpha"]), float(r["profit"])) for r in records]
    except (ValueError, KeyError, TypeError) as exc:
        raise ConfigError(f"malformed targets file {path}: {exc}") from None
    if not targets:
        raise ConfigError(f"targets file {path} has no rows")
    return targets


def cmd_calibrate(cfg: RunConfig, args) -> str:
    targets = load_targets(args.targets) if args.targets else published_targets()
    grid = _parse_range(args.range) if args.range else discount_grid()
    report = calibrate_discount(targets, grid, cfg.firm, cfg.solver.tol)
    fmt = cfg.output.format or "table"
    if fmt == "json":
        return _json(cfg, report.to_dict())
    header = ["scenario", "horizon", "target_alpha", "model_alpha", "alpha_rel_error",
              "target_profit", "model_profit", "profit_rel_error"]
    rows = [[c.scenario, c.horizon, c.target_alpha, c.model_alpha, c.alpha_rel_error,
             c.target_profit, c.model_profit, c.profit_rel_error] for c in report.cells]
    if fmt == "csv":
        return f"# best_g={format_number(report.best_g)}\n" + _csv(header, rows)
    return (f"best g: {format_number(report.best_g)}  "
            f"(loss {format_number(report.best_loss)})\n" + _table(header, rows))


COMMANDS = {
    "optimize": cmd_optimize,
    "sensitivity": cmd_sensitivity,
    "scenario": cmd_scenario,
    "sweep": cmd_sweep,
    "calibrate": cmd_calibrate,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="INI or JSON configuration file")
    common.add_argument("--format", choices=FORMATS, help="output format")
    common.add_argument("--out", help="write output to this path instead of stdout")

    parser = argparse.ArgumentParser(
        prog="transinvest",
        description="Optimal low-carbon transition investment under carbon pricing.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("optimize", parents=[common], help="single-period optimum")
    sub.add_parser("sensitivity", parents=[common], help="+/-10%% and +/-50%% table")
    p = sub.add_parser("scenario", parents=[common], help="multi-period scenarios")
    p.add_argument("--scenario", help="immediate, quick, slow, none or all")
    p.add_argument("--horizon", type=int, choices=HORIZONS)
    p.add_argument("--discount", type=float, help="discount factor g")
    p = sub.add_parser("sweep", parents=[common], help="one-parameter sweep")
    p.add_argument("--param", required=True)
    p.add_argument("--values", help="comma-separated values")
    p.add_argument("--range", help="LO:HI:STEP, inclusive")
    p.add_argument("--points", type=int, default=200, help="points for the default range")
    p = sub.add_parser("calibrate", parents=[common], help="calibrate discount factor")
    p.add_argument("--targets", help="CSV or JSON calibration targets")
    p.add_argument("--range", help="g grid LO:HI:STEP (default 0.5:1.0:0.01)")
    return parser


def _apply_overrides(cfg: RunConfig, args) -> RunConfig:
    out = OutputConfig(format=args.format or cfg.output.format,
                       path=args.out or cfg.output.path)
    cfg = replace(cfg, output=out)
    if args.command == "scenario":
        sc = cfg.scenario
        cfg = replace(cfg, scenario=ScenarioConfig(
            name=args.scenario or sc.name,
            horizon=args.horizon if args.horizon is not None else sc.horizon,
            g=args.discount if args.discount is not None else sc.g,
            path=None if args.scenario else sc.path))
    return cfg


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config) if args.config else RunConfig()
        cfg = _apply_overrides(cfg, args)
        text = COMMANDS[args.command](cfg, args)
        _emit(text, cfg)
    except CliError as exc:
        return _fail(exc.code, exc.kind, str(exc))
    except ConfigError as exc:
        return _fail(EXIT_PARSE, "parse", str(exc))
    except ModelDomainError as exc:
        return _fail(EXIT_VALIDATION, "validation", str(exc))
    except (NonFiniteObjectiveError, InvalidBracketError) as exc:
        return _fail(EXIT_SOLVER, "solver", str(exc))
    return EXIT_OK


def _fail(code: int, kind: str, message: str) -> int:
    sys.stderr.write(json.dumps({"error": kind, "code": code, "message": message}) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
