import csv
import io

import pytest

from transinvest.errors import ModelDomainError
from transinvest.model import BASELINE, profit
from transinvest.optimizer import grid_argmax
from transinvest.sensitivity import (CSV_HEADER, SweepSpec, change_rate, figure_sweep,
                                     margin_sweep, rows_to_csv, run_sweep, sensitivity_table,
                                     table_values)

# published sensitivity table: parameter -> (values, alpha*, max profit)
PUBLISHED_K = ((1.0, 1.8, 2.0, 2.2, 3.0),
           (0.1399250, 0.3560002, 0.3758660, 0.3896782, 0.4102122),
           (40.38998, 48.03570, 50.43508, 52.88084, 62.52014))


def test_k_sweep_matches_table():
    rows = run_sweep(SweepSpec("k", PUBLISHED_K[0]))
    for row, a, v in zip(rows, PUBLISHED_K[1], PUBLISHED_K[2]):
        assert row.optimal_alpha == pytest.approx(a, abs=1e-4)
        assert row.max_objective == pytest.approx(v, abs=1e-3)


def test_c_point():
    (row,) = run_sweep(SweepSpec("c", (2.40,)))
    assert row.optimal_alpha == pytest.approx(0.5191683, abs=1e-4)
    assert row.max_objective == pytest.approx(22.16245, abs=1e-3)
    assert row.alpha_change_rate_pct == pytest.approx(38.125899, abs=1e-3)
    assert row.profit_change_rate_pct == pytest.approx(-56.05747, abs=1e-3)


def test_beta_one_point():
    (row,) = run_sweep(SweepSpec("beta", (1.00,)))
    assert row.optimal_alpha == pytest.approx(0.2971025, abs=1e-4)
    assert row.max_objective == pytest.approx(116.72607, abs=1e-3)
    assert row.profit_change_rate_pct == pytest.approx(131.43825, abs=1e-3)


def test_table_values_grid():
    assert table_values("k") == (1.0, 1.8, 2.0, 2.2, 3.0)
    assert table_values("c") == (0.8, 1.44, 1.6, 1.76, 2.4)
    assert table_values("beta") == (0.4, 0.72, 0.8, 0.88, 1.0)
    assert table_values("B") == (0.5, 0.9, 1.0, 1.1, 1.5)


@pytest.mark.parametrize("name", ["k", "c", "beta", "B", "margin"])
def test_baseline_row_reproduced(name):
    rows = run_sweep(SweepSpec(name, table_values(name)))
    base = rows[2]
    assert base.optimal_alpha == pytest.approx(0.3758660, abs=1e-4)
    assert base.max_objective == pytest.approx(50.43508, abs=1e-3)
    assert base.alpha_change_rate_pct == 0.0
    assert base.profit_change_rate_pct == 0.0


def _block(rows, name):
    return [r for r in rows if r.parameter == name]


def _strict(xs, sign):
    return all(sign * (b - a) > 0 for a, b in zip(xs, xs[1:]))


def test_monotonicity_on_table_grids():
    rows = sensitivity_table()
    alpha = {n: [r.optimal_alpha for r in _block(rows, n)] for n in ("k", "c", "beta", "B")}
    prof = {n: [r.max_objective for r in _block(rows, n)] for n in ("k", "c", "beta", "B")}
    assert _strict(alpha["B"], +1) and _strict(alpha["c"], +1)
    assert _strict(alpha["beta"], -1)
    assert _strict(prof["B"], -1) and _strict(prof["c"], -1)
    assert _strict(prof["k"], +1) and _strict(prof["beta"], +1)


def test_change_rates_self_consistent():
    rows = sensitivity_table()
    for name in ("k", "c", "beta", "B"):
        block = _block(rows, name)
        base = block[2]
        for r in block:
            exp_a = change_rate(r.optimal_alpha, base.optimal_alpha)
            exp_p = change_rate(r.max_objective, base.max_objective)
            assert r.alpha_change_rate_pct == pytest.approx(exp_a, rel=1e-6, abs=1e-12)
            assert r.profit_change_rate_pct == pytest.approx(exp_p, rel=1e-6, abs=1e-12)


def test_margin_sweep_examples():
    rows = margin_sweep([-0.5, 2.0, 50.0])
    lo, base, hi = (r.optimal_alpha for r in rows)
    assert base == pytest.approx(0.3758660, abs=1e-4)

    def oracle(margin):
        fp = BASELINE.with_value("margin", margin)
        return grid_argmax(lambda a: profit(fp, a), 100_000)[0]

    assert oracle(50.0) < oracle(2.0) <= oracle(-0.5)
    assert hi < base <= lo


def test_margin_sweep_shape():
    rows = figure_sweep("margin", points=60)
    alphas = [r.optimal_alpha for r in rows]
    top = max(alphas)
    start = next(i for i, a in enumerate(alphas) if a < top - 1e-6)
    assert all(a == pytest.approx(top) for a in alphas[:start])
    assert all(b <= a + 1e-7 for a, b in zip(alphas[start:], alphas[start + 1:]))


def test_csv_schema():
    text = rows_to_csv(run_sweep(SweepSpec("B", (0.5, 1.0))))
    reader = csv.reader(io.StringIO(text))
    assert tuple(next(reader)) == CSV_HEADER
    assert text.splitlines()[0] == ("parameter,parameter_value,optimal_alpha,max_objective,"
                                    "alpha_change_rate_pct,profit_change_rate_pct")
    assert len(list(reader)) == 2


@pytest.mark.parametrize("name,values", [
    ("beta", (0.8, 1.2)),
    ("k", ()),
    ("k", (2.0, 1.0)),
    ("k", (1.0, 1.0)),
    ("A", (50.0,)),
])
def test_sweep_spec_validation(name, values):
    with pytest.raises(ModelDomainError):
        SweepSpec(name, values)
