"""
Tests for the five curing strategies and the budget contract.
"""

import dataclasses

import numpy as np
import pytest

from ...exceptions import InvalidInputError, StrategyError
from ...graph.centrality import closeness_centrality
from ...graph.generator import generate_barabasi_albert
from ...graph.models import Graph
from ...urn.models import NetworkState
from ..base import CuringAllocation, StrategyInput, clamp_to_budget
from ..strategies import (
    CentralityStrategy,
    GradientStrategy,
    SuperUrnSupermartingaleStrategy,
    UniformStrategy,
    UrnMartingaleStrategy,
    neighborhood_odds,
    strategy_i,
    strategy_ii,
    strategy_iv,
    strategy_v,
    submartingale_bound_ii,
)

K2 = Graph.from_edges(2, [(0, 1)])
PATH3 = Graph.from_edges(3, [(0, 1), (1, 2)])


def state_of(graph, red, total):
    return NetworkState(
        graph=graph,
        red=np.asarray(red, dtype=float),
        total=np.asarray(total, dtype=float),
    )


def input_of(graph, red, total, delta_r, budget=0.0, centrality=None):
    state = state_of(graph, red, total)
    delta_r = np.asarray(delta_r, dtype=float)
    return StrategyInput.from_state(state, delta_r, budget, centrality)


def balanced(graph, budget, centrality=None):
    """Every urn holds one red ball out of two, so U = S = 1/2 everywhere."""
    size = graph.node_count
    return input_of(
        graph, np.ones(size), np.full(size, 2.0), np.ones(size), budget, centrality
    )


class TestStrategyInput:
    """Test the read-only strategy view."""

    def test_step_index_is_next_step(self):
        state = state_of(K2, [1, 1], [2, 2])
        state.n = 4
        inp = StrategyInput.from_state(state, np.ones(2), 1.0)
        assert inp.n == 5
        assert inp.node_count == 2

    def test_arrays_are_read_only(self):
        inp = balanced(K2, 1.0)
        with pytest.raises(ValueError):
            inp.s[0] = 0.9

    def test_view_is_detached_from_state(self):
        state = state_of(K2, [1, 1], [2, 2])
        inp = StrategyInput.from_state(state, np.ones(2), 1.0)
        state.red[0] = 1.5
        assert inp.red[0] == 1.0

    def test_negative_budget_rejected(self):
        with pytest.raises(InvalidInputError):
            balanced(K2, -1.0)


class TestCuringAllocation:
    """Test allocation validation."""

    def test_negative_entries_rejected(self):
        with pytest.raises(InvalidInputError):
            CuringAllocation(delta_b=np.array([1.0, -0.5]))

    def test_non_finite_rejected(self):
        with pytest.raises(InvalidInputError):
            CuringAllocation(delta_b=np.array([1.0, np.inf]))

    def test_budget_bound_must_match(self):
        with pytest.raises(InvalidInputError):
            CuringAllocation(delta_b=np.array([1.0, 1.0]), budget_bound=True, budget=3)

    def test_budget_bound_within_tolerance(self):
        allocation = CuringAllocation(
            delta_b=np.array([1.0, 2.0 + 1e-12]), budget_bound=True, budget=3.0
        )
        assert allocation.spend == pytest.approx(3.0)

    def test_clamp_rescales(self):
        clamped = clamp_to_budget(np.array([1.0, 3.0]), 2.0)
        np.testing.assert_allclose(clamped, [0.5, 1.5])

    def test_clamp_of_zero_is_uniform(self):
        np.testing.assert_allclose(clamp_to_budget(np.zeros(4), 2.0), [0.5] * 4)


class TestUrnMartingaleStrategy:
    """Strategy i: (1 - U) S / (U (1 - S)) times delta_r."""

    def test_symmetric_state(self):
        """U = S = 1/2 cancels, leaving delta_r itself."""
        inp = input_of(K2, [1, 1], [2, 2], [2, 2])
        np.testing.assert_allclose(strategy_i(inp).delta_b, [2.0, 2.0])

    def test_exposed_node(self):
        """U = 1/2 and S = 0.8 need four black balls per red one."""
        inp = input_of(K2, [1, 7], [2, 8], [1, 1])
        np.testing.assert_allclose(inp.s, [0.8, 0.8])
        np.testing.assert_allclose(strategy_i(inp).delta_b, [4.0, 4 / 7])

    def test_spend_is_not_budget_bound(self):
        inp = input_of(K2, [1, 7], [2, 8], [1, 1], budget=1.0)
        allocation = UrnMartingaleStrategy().allocate(inp)
        assert not allocation.budget_bound
        assert allocation.spend == pytest.approx(4 + 4 / 7)

    def test_clamp_keeps_shape_and_spends_budget(self):
        inp = input_of(K2, [1, 7], [2, 8], [1, 1], budget=2.0)
        allocation = UrnMartingaleStrategy(clamp=True).allocate(inp)
        assert allocation.budget_bound
        assert allocation.spend == pytest.approx(2.0)
        assert allocation.delta_b[0] / allocation.delta_b[1] == pytest.approx(7.0)


class TestSuperUrnSupermartingaleStrategy:
    """Strategy ii and its lower companion bound."""

    def test_worst_neighbour_sets_the_bound(self):
        """S_1 = 1/2 next to S = 0.5 and S = 0.25: odds 3 give three black."""
        inp = input_of(PATH3, [8, 2, 1], [10, 10, 2], [1, 1, 1])
        np.testing.assert_allclose(inp.s, [0.5, 0.5, 0.25])
        np.testing.assert_allclose(neighborhood_odds(inp, np.maximum), [1, 3, 3])
        assert strategy_ii(inp).delta_b[1] == pytest.approx(3.0)

    def test_equal_exposure_returns_delta_r(self):
        inp = input_of(K2, [1, 3], [3, 4], [2, 5])
        np.testing.assert_allclose(strategy_ii(inp).delta_b, [2.0, 5.0])

    def test_epsilon_scales_the_bound(self):
        inp = input_of(K2, [1, 3], [3, 4], [2, 5])
        np.testing.assert_allclose(strategy_ii(inp, 0.5).delta_b, [3.0, 7.5])

    def test_strict_flag_applies_epsilon(self):
        inp = input_of(K2, [1, 3], [3, 4], [2, 5])
        loose = SuperUrnSupermartingaleStrategy().allocate(inp)
        strict = SuperUrnSupermartingaleStrategy(strict=True, epsilon=0.1).allocate(inp)
        np.testing.assert_allclose(loose.delta_b, [2.0, 5.0])
        np.testing.assert_allclose(strict.delta_b, [2.2, 5.5])

    def test_negative_epsilon_rejected(self):
        with pytest.raises(InvalidInputError):
            SuperUrnSupermartingaleStrategy(epsilon=-1.0)

    def test_lower_bound_factor(self):
        inp = input_of(K2, [1, 3], [3, 4], [2, 4])
        np.testing.assert_allclose(
            submartingale_bound_ii(inp, 0.5).delta_b, [1.0, 2.0]
        )

    def test_lower_bound_uses_best_neighbour(self):
        inp = input_of(PATH3, [8, 2, 1], [10, 10, 2], [1, 1, 1])
        assert submartingale_bound_ii(inp, 1.0).delta_b[2] == pytest.approx(1 / 3)

    @pytest.mark.parametrize("factor", [0.0, -0.5, 1.5])
    def test_lower_bound_factor_range(self, factor):
        with pytest.raises(InvalidInputError):
            submartingale_bound_ii(balanced(K2, 0.0), factor)

    def test_upper_bound_dominates_lower(self):
        graph = generate_barabasi_albert(30, 2, seed=5)
        rng = np.random.default_rng(6)
        red = rng.uniform(1, 10, 30)
        inp = input_of(graph, red, red + rng.uniform(1, 10, 30), np.ones(30))
        assert np.all(
            strategy_ii(inp).delta_b >= submartingale_bound_ii(inp, 1.0).delta_b
        )


class TestBudgetedStrategies:
    """Strategies iii, iv and v spend exactly the budget."""

    def test_centrality_on_path(self):
        """Weights 1/3, 1, 1/3 give the centre three fifths."""
        table = closeness_centrality(PATH3)
        allocation = strategy_iv(balanced(PATH3, 5.0, table))
        np.testing.assert_allclose(allocation.delta_b, [1.0, 3.0, 1.0])

    @pytest.mark.parametrize("factor", [0.37, 2.5])
    def test_centrality_ignores_common_scale_of_exposure(self, factor):
        graph = generate_barabasi_albert(30, 1, seed=5)
        rng = np.random.default_rng(8)
        red = rng.uniform(1, 10, 30)
        inp = input_of(
            graph,
            red,
            red + rng.uniform(1, 10, 30),
            np.ones(30),
            budget=50.0,
            centrality=closeness_centrality(graph),
        )
        scaled = dataclasses.replace(inp, s=inp.s * factor)
        np.testing.assert_allclose(
            strategy_iv(scaled).delta_b,
            strategy_iv(inp).delta_b,
            rtol=1e-12,
            atol=1e-12,
        )

    def test_centrality_on_pair(self):
        table = closeness_centrality(K2)
        allocation = CentralityStrategy().allocate(balanced(K2, 3.0, table))
        np.testing.assert_allclose(allocation.delta_b, [1.5, 1.5])

    def test_centrality_table_required(self):
        with pytest.raises(StrategyError):
            CentralityStrategy().allocate(balanced(K2, 3.0))

    def test_uniform(self):
        graph = Graph.from_edges(5, [(i, i + 1) for i in range(4)])
        np.testing.assert_allclose(strategy_v(balanced(graph, 10.0)).delta_b, [2] * 5)

    def test_uniform_zero_budget(self):
        allocation = UniformStrategy().allocate(balanced(K2, 0.0))
        np.testing.assert_array_equal(allocation.delta_b, [0.0, 0.0])

    @pytest.mark.parametrize(
        "strategy",
        [GradientStrategy(iterations=20), CentralityStrategy(), UniformStrategy()],
        ids=["iii", "iv", "v"],
    )
    def test_spend_equals_budget(self, strategy):
        graph = generate_barabasi_albert(40, 1, seed=2)
        rng = np.random.default_rng(3)
        red = rng.uniform(1, 10, 40)
        inp = input_of(
            graph,
            red,
            red + rng.uniform(1, 10, 40),
            rng.uniform(1, 10, 40),
            budget=123.4,
            centrality=closeness_centrality(graph),
        )
        allocation = strategy.allocate(inp)
        assert allocation.budget_bound
        assert np.all(allocation.delta_b >= 0)
        assert allocation.spend == pytest.approx(123.4, rel=1e-9, abs=1e-9)

    def test_gradient_parameters_validated(self):
        with pytest.raises(InvalidInputError):
            GradientStrategy(iterations=0)
        with pytest.raises(InvalidInputError):
            GradientStrategy(granularity=1)


class TestDescribe:
    def test_parameters_echoed(self):
        strategy = SuperUrnSupermartingaleStrategy(strict=True, epsilon=1e-3)
        assert strategy.describe() == {
            "strategy": "ii",
            "clamp": False,
            "strict": True,
            "epsilon": 1e-3,
        }
        assert repr(strategy).startswith("SuperUrnSupermartingaleStrategy(")

    def test_gradient_parameters(self):
        params = GradientStrategy(iterations=7, granularity=9).describe()
        assert params["iterations"] == 7
        assert params["granularity"] == 9
