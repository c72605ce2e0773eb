import math

import numpy as np
import pytest

from transinvest.errors import ModelDomainError
from transinvest.model import ALPHA_MAX, BASELINE, profit
from transinvest.multiperiod import (ScenarioPath, builtin_scenario, calibrate_discount,
                                     discount_grid, discounted_objective, generate_targets,
                                     optimize_scenario, published_targets)
from transinvest.optimizer import grid_argmax


def hand_profit(a, c, k, beta, B, p=3.6, A=100.0):
    s = 2 / (1 + math.exp(-a * k))
    return (p - c - (2 - s) * B) * s * ((1 - a) * A) ** beta


def test_builtin_examples():
    imm = builtin_scenario("immediate", 6)
    assert imm.k == (5, 4.5, 4, 3.5, 3, 2.5)
    assert imm.B == (4,) * 6
    assert builtin_scenario("quick", 3).c == (2.4, 1.6, 1.7)
    none = builtin_scenario("none", 3)
    assert none.c == (1.6,) * 3 and none.k == (2.0,) * 3
    assert none.beta == (0.8,) * 3 and none.B == (1.0,) * 3
    assert imm.A == (100.0,) * 6 and imm.p == 3.6 and imm.g == 0.9


def test_builtin_rejects_unknown():
    with pytest.raises(ModelDomainError):
        builtin_scenario("sudden", 3)
    with pytest.raises(ModelDomainError):
        builtin_scenario("slow", 4)


def test_horizon_one_equals_single_period():
    path = ScenarioPath("custom", [1.6], [2.0], [0.8], [1.0], [100.0], 3.6, 0.37)
    for a in np.linspace(0, ALPHA_MAX, 101):
        assert discounted_objective(path, a) == profit(BASELINE, a)


def test_full_discounting_keeps_first_period():
    path = builtin_scenario("slow", 6).with_discount(0.0)
    first = path.periods()[0]
    assert discounted_objective(path, 0.4) == profit(first, 0.4)


def test_immediate_short_hand_sum():
    a = 0.5692
    pis = [hand_profit(a, c, k, b, 4.0) for c, k, b in
           zip((1.6, 1.7, 1.8), (5, 4.5, 4), (0.9, 0.85, 0.8))]
    assert pis[0] == pytest.approx(87.2, abs=0.1)
    assert pis[1] == pytest.approx(60.4, abs=0.1)
    assert pis[2] == pytest.approx(38.8, abs=0.1)
    hand = pis[0] + 0.9 * pis[1] + 0.81 * pis[2]
    path = builtin_scenario("immediate", 3, 0.9)
    assert discounted_objective(path, a) == pytest.approx(hand, rel=1e-12)
    assert hand == pytest.approx(173.03, abs=0.5)


def test_optimize_immediate_short():
    r = optimize_scenario(builtin_scenario("immediate", 3, 0.9))
    assert r.alpha_star == pytest.approx(0.5692, abs=5e-3)
    assert r.discounted_profit == pytest.approx(173.0291, abs=0.5)
    assert r.discounted_profit == pytest.approx(sum(r.per_period_discounted), rel=1e-12)


@pytest.mark.parametrize("name", ["immediate", "quick", "slow"])
@pytest.mark.parametrize("horizon", [3, 6])
def test_optimize_matches_grid_oracle(name, horizon):
    path = builtin_scenario(name, horizon, 0.9)
    r = optimize_scenario(path)
    a, v = grid_argmax(lambda x: discounted_objective(path, x), 100_000)
    assert abs(r.alpha_star - a) <= 2 * ALPHA_MAX / (100_000 - 1)
    assert r.discounted_profit >= v - 1e-9


@pytest.mark.parametrize("horizon", [3, 6])
def test_none_scenario_fixed_at_zero(horizon):
    r = optimize_scenario(builtin_scenario("none", horizon, 0.9))
    assert r.alpha_star == 0.0
    base = profit(BASELINE, 0.0)
    assert r.per_period_profits == [base] * horizon
    assert r.discounted_profit == pytest.approx(sum(0.9 ** t * base for t in range(horizon)))


@pytest.mark.parametrize("name", ["immediate", "quick", "slow", "none"])
def test_long_horizon_exceeds_short(name):
    short = optimize_scenario(builtin_scenario(name, 3, 0.9))
    long = optimize_scenario(builtin_scenario(name, 6, 0.9))
    if all(p > 0 for p in long.per_period_profits):
        assert long.discounted_profit > short.discounted_profit


def test_scaling_profits_leaves_argmax():
    # A enters as A**beta; with beta = 1 in every period, scaling A scales every profit
    path = ScenarioPath("custom", [1.6, 1.8], [2.0, 3.0], [1.0, 1.0], [1.0, 2.0],
                        [100.0, 100.0], 3.6, 0.8)
    scaled = ScenarioPath("custom", [1.6, 1.8], [2.0, 3.0], [1.0, 1.0], [1.0, 2.0],
                          [250.0, 250.0], 3.6, 0.8)
    for a in (0.1, 0.4, 0.7):
        assert discounted_objective(scaled, a) == pytest.approx(
            2.5 * discounted_objective(path, a), rel=1e-12)
    assert optimize_scenario(scaled).alpha_star == pytest.approx(
        optimize_scenario(path).alpha_star, abs=1e-7)


def test_scenario_path_validation():
    with pytest.raises(ModelDomainError):
        ScenarioPath("custom", [1.6, 1.7], [2.0], [0.8, 0.8], [1, 1], [100, 100])
    with pytest.raises(ModelDomainError):
        ScenarioPath("custom", [1.6], [2.0], [1.2], [1.0], [100])
    with pytest.raises(ModelDomainError):
        ScenarioPath("custom", [1.6], [2.0], [0.8], [1.0], [100], g=1.5)


def test_scenario_dict_round_trip():
    path = builtin_scenario("quick", 6, 0.85)
    assert ScenarioPath.from_dict(path.to_dict()) == path


def test_discount_grid_exact_points():
    grid = discount_grid(0.5, 1.0, 0.01)
    assert len(grid) == 51 and grid[0] == 0.5 and grid[-1] == 1.0
    assert 0.95 in grid and 0.9 in grid


def test_calibration_round_trip():
    targets = generate_targets(0.95)
    report = calibrate_discount(targets, discount_grid(0.5, 1.0, 0.01))
    assert report.best_g == 0.95
    assert report.best_loss == 0.0


def test_calibration_single_point_reports_residual():
    report = calibrate_discount(published_targets(), [1.0])
    assert report.best_g == 1.0
    cell = next(c for c in report.cells if (c.scenario, c.horizon) == ("immediate", 3))
    assert cell.model_profit == pytest.approx(186.4, abs=0.1)
    assert abs(cell.profit_rel_error) > 0.05
    assert report.best_loss > 0
