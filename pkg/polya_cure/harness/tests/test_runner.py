"""
Tests for trial and ensemble execution.
"""

import os

import numpy as np
import pytest

from ...exceptions import InvalidInputError, StrategyError
from ...graph.generator import generate_barabasi_albert
from ...graph.models import Graph
from ...strategy.base import CuringStrategy
from ...strategy.strategies import (
    CentralityStrategy,
    GradientStrategy,
    SuperUrnSupermartingaleStrategy,
    UniformStrategy,
    UrnMartingaleStrategy,
)
from ...urn.models import InitialCondition
from ...urn.oracle import exact_infection_rate
from ..config import validate_config
from ..initial import generate_ic
from ..runner import (
    resolve_budget,
    run_ensemble,
    run_trial,
    simulate_ensemble,
    trial_seed,
)

K2 = Graph.from_edges(2, [(0, 1)])
PATH3 = Graph.from_edges(3, [(0, 1), (1, 2)])
K2_IC = InitialCondition(red=[1, 3], black=[2, 1], delta_r=[2, 1])


@pytest.fixture(scope="module")
def ba20():
    graph = generate_barabasi_albert(20, 1, seed=1)
    return graph, generate_ic(graph, 2)


class ExplodingStrategy(CuringStrategy):
    name = "boom"

    def compute(self, inp):
        if inp.n == 3:
            raise ArithmeticError("division by zero")
        return np.full(inp.node_count, inp.budget / inp.node_count)


class TestSeeds:
    def test_trial_seed_depends_on_master_and_trial(self):
        def first(seq):
            return np.random.default_rng(seq).random()

        assert first(trial_seed(1, 0)) == first(trial_seed(1, 0))
        assert first(trial_seed(1, 0)) != first(trial_seed(1, 1))
        assert first(trial_seed(1, 0)) != first(trial_seed(2, 0))

    def test_budget_rules(self):
        assert resolve_budget("sum_delta_r", K2_IC) == 3.0
        assert resolve_budget(2.5, K2_IC) == 2.5

    def test_budget_from_first_schedule_row(self):
        ic = InitialCondition(red=[1, 1], black=[1, 1], delta_r=[[1, 2], [5, 5]])
        assert resolve_budget("sum_delta_r", ic) == 3.0


class TestRunTrial:
    """Test a single trial."""

    def test_same_seed_same_trial(self, ba20):
        graph, ic = ba20
        runs = [
            run_trial(graph, ic, UniformStrategy(), 10.0, 15, trial_seed(4, 0))
            for _ in range(2)
        ]
        np.testing.assert_array_equal(runs[0].draws, runs[1].draws)
        np.testing.assert_array_equal(runs[0].exposure, runs[1].exposure)

    def test_strategies_share_first_draw(self, ba20):
        """The first draw happens before curing can change any proportion."""
        graph, ic = ba20
        seed = trial_seed(4, 2)
        first = run_trial(graph, ic, UniformStrategy(), 10.0, 3, seed)
        second = run_trial(graph, ic, CentralityStrategy(), 10.0, 3, seed)
        np.testing.assert_array_equal(first.draws[0], second.draws[0])

    def test_record_shapes(self, ba20):
        graph, ic = ba20
        record = run_trial(
            graph,
            ic,
            UniformStrategy(),
            10.0,
            6,
            0,
            snapshot_steps=(0, 3),
            record_allocations=True,
        )
        assert record.steps == 6
        assert record.draws.shape == (6, 20)
        assert record.susceptibility.shape == (7,)
        assert sorted(record.snapshots) == [0, 3]
        assert record.allocations.shape == (6, 20)
        np.testing.assert_allclose(record.spend, 10.0)
        np.testing.assert_allclose(record.infection_rate, record.draws.mean(axis=1))

    def test_urn_martingale_spend_on_pair(self):
        """U = (1/3, 3/4) and S = 4/7 need 16/3 and 4/9 black balls."""
        record = run_trial(K2, K2_IC, UrnMartingaleStrategy(), 3.0, 1, 0)
        assert record.spend[0] == pytest.approx(16 / 3 + 4 / 9)

    def test_waste_is_curing_on_red_draws(self, ba20):
        graph, ic = ba20
        record = run_trial(
            graph, ic, UniformStrategy(), 10.0, 5, 7, record_allocations=True
        )
        expected = (record.allocations * record.draws).sum(axis=1)
        np.testing.assert_allclose(record.waste, expected)

    def test_invariant_checking(self, ba20):
        graph, ic = ba20
        record = run_trial(
            graph, ic, GradientStrategy(iterations=5), 10.0, 5, 1, check_invariants=True
        )
        assert record.steps == 5

    def test_strategy_failure_reports_step(self, ba20):
        graph, ic = ba20
        with pytest.raises(StrategyError) as exc_info:
            run_trial(graph, ic, ExplodingStrategy(), 10.0, 5, 0)
        assert exc_info.value.details == {"strategy": "boom", "step": 3}

    def test_centrality_computed_when_missing(self, ba20):
        graph, ic = ba20
        record = run_trial(graph, ic, CentralityStrategy(), 10.0, 2, 0)
        np.testing.assert_allclose(record.spend, 10.0)


class TestSimulateEnsemble:
    """Test trial averaging."""

    def test_single_trial_equals_trial(self, ba20):
        graph, ic = ba20
        result = simulate_ensemble(graph, ic, UniformStrategy(), 10.0, 8, 1, 5)
        record = run_trial(graph, ic, UniformStrategy(), 10.0, 8, trial_seed(5, 0))
        np.testing.assert_array_equal(result.infection_rate, record.infection_rate)
        np.testing.assert_array_equal(result.infection_stderr, np.zeros(8))
        np.testing.assert_array_equal(result.waste, np.cumsum(record.waste))
        assert result.label == "v"
        assert result.trials == 1

    def test_same_seed_same_result(self, ba20):
        graph, ic = ba20
        runs = [
            simulate_ensemble(graph, ic, UniformStrategy(), 10.0, 5, 6, 9)
            for _ in range(2)
        ]
        np.testing.assert_array_equal(runs[0].infection_rate, runs[1].infection_rate)
        np.testing.assert_array_equal(runs[0].exposure, runs[1].exposure)

    def test_default_snapshots_first_and_last(self, ba20):
        graph, ic = ba20
        result = simulate_ensemble(graph, ic, UniformStrategy(), 10.0, 4, 3, 0)
        assert sorted(result.snapshots) == [0, 4]
        u0, s0 = result.snapshots[0]
        np.testing.assert_allclose(u0, ic.red / ic.total)

    def test_allocations_logged_for_first_trial(self, ba20):
        graph, ic = ba20
        result = simulate_ensemble(
            graph, ic, UniformStrategy(), 10.0, 4, 3, 0, log_allocations=True
        )
        assert result.allocations.shape == (4, 20)

    def test_summary_properties(self, ba20):
        graph, ic = ba20
        result = simulate_ensemble(
            graph, ic, SuperUrnSupermartingaleStrategy(), 10.0, 4, 3, 0
        )
        assert result.final_infection_rate == result.infection_rate[-1]
        assert result.total_waste == result.waste[-1]
        assert result.mean_usage == pytest.approx(result.usage.mean())
        assert result.parameters["strategy"] == "ii"

    @pytest.mark.parametrize("trials,steps", [(0, 5), (5, 0)])
    def test_invalid_sizes(self, ba20, trials, steps):
        graph, ic = ba20
        with pytest.raises(InvalidInputError):
            simulate_ensemble(graph, ic, UniformStrategy(), 1.0, steps, trials, 0)

    @pytest.mark.integration
    def test_worker_count_does_not_change_result(self, ba20):
        graph, ic = ba20
        serial = simulate_ensemble(graph, ic, UniformStrategy(), 10.0, 6, 9, 3)
        parallel = simulate_ensemble(
            graph, ic, UniformStrategy(), 10.0, 6, 9, 3, workers=2
        )
        np.testing.assert_array_equal(serial.infection_rate, parallel.infection_rate)
        np.testing.assert_array_equal(
            serial.infection_stderr, parallel.infection_stderr
        )
        np.testing.assert_array_equal(serial.usage, parallel.usage)
        for step in serial.snapshots:
            np.testing.assert_array_equal(
                serial.snapshots[step][1], parallel.snapshots[step][1]
            )

    def test_run_ensemble_from_config(self):
        config = validate_config(
            {
                "seed": 1,
                "trials": 3,
                "steps": 4,
                "workers": 1,
                "graph": {"generator": "ba:15:1:seed=3"},
                "cases": [{"strategy": "iv", "label": "central"}],
            }
        ).case_configs()[0]
        result = run_ensemble(config)
        assert result.label == "central"
        assert result.steps == 4
        np.testing.assert_allclose(result.usage, result.budget)


@pytest.mark.slow
class TestEstimator:
    """Monte-Carlo estimates against enumeration and scaling."""

    @pytest.mark.parametrize(
        "graph,ic",
        [
            (K2, K2_IC),
            (
                PATH3,
                InitialCondition(red=[2, 1, 1], black=[1, 1, 1], delta_r=[1, 2, 3]),
            ),
        ],
        ids=["pair", "path"],
    )
    def test_matches_enumeration(self, graph, ic):
        budget = float(ic.delta_r.sum())
        steps = 3
        exact = exact_infection_rate(
            graph, ic, steps, np.full(graph.node_count, budget / graph.node_count)
        )
        result = simulate_ensemble(
            graph,
            ic,
            UniformStrategy(),
            budget,
            steps,
            50_000,
            17,
            workers=os.cpu_count() or 1,
        )
        z = np.abs(result.infection_rate - exact) / result.infection_stderr
        assert np.all(z <= 4)

    def test_zero_budget_is_pure_contagion(self, ba20):
        graph, ic = ba20
        result = simulate_ensemble(graph, ic, UniformStrategy(), 0.0, 30, 2000, 8)
        stderr = result.infection_stderr
        assert result.infection_rate[-1] > result.infection_rate[0] + 3 * (
            stderr[-1] + stderr[0]
        )

    def test_doubling_trials_shrinks_error(self, ba20):
        graph, ic = ba20
        small = simulate_ensemble(graph, ic, UniformStrategy(), 10.0, 3, 2000, 1)
        large = simulate_ensemble(graph, ic, UniformStrategy(), 10.0, 3, 4000, 1)
        ratio = small.infection_stderr / large.infection_stderr
        assert np.all(np.abs(ratio / np.sqrt(2) - 1) <= 0.2)
