"""
The five curing strategies.

``i`` and ``ii`` are unbudgeted: they pour in exactly the curing needed to
keep every individual urn (``i``) or every super urn (``ii``) from drifting
towards infection in expectation. ``iii``, ``iv`` and ``v`` split a fixed
budget B each step: by minimising the expected exposure, in proportion to
degree times closeness times exposure, or uniformly.
"""

import logging

import numpy as np

from ..exceptions import InvalidInputError, StrategyError
from ..optimizer import (
    DEFAULT_GRANULARITY,
    DEFAULT_ITERATIONS,
    build_objective,
    frank_wolfe,
)
from .base import CuringAllocation, CuringStrategy, StrategyInput

logger = logging.getLogger(__name__)

DEFAULT_EPSILON = 1e-6


def neighborhood_odds(inp: StrategyInput, reducer: np.ufunc) -> np.ndarray:
    """
    Reduce ``(1 - S_k) / S_k`` over each closed neighbourhood.

    On an undirected graph ``i in N_k'`` iff ``k in N_i'``, so the set of
    super urns containing node i is indexed by N_i' itself.
    """
    odds = (1.0 - inp.s) / inp.s
    indptr, indices = inp.graph.closed_index
    return reducer.reduceat(odds[indices], indptr[:-1])


def strategy_i(inp: StrategyInput) -> CuringAllocation:
    """Curing that makes every U_i a martingale in first moment."""
    u, s = inp.u, inp.s
    delta_b = inp.delta_r * (1.0 - u) * s / (u * (1.0 - s))
    return CuringAllocation(delta_b=delta_b)


def strategy_ii(inp: StrategyInput, epsilon: float = 0.0) -> CuringAllocation:
    """
    Curing at the supermartingale bound for every super urn.

    With ``epsilon = 0`` the bound is met with equality (non-strict); a
    positive ``epsilon`` scales it by ``1 + epsilon``.
    """
    if epsilon < 0:
        raise InvalidInputError(f"epsilon must be >= 0, got {epsilon}", "epsilon")
    s = inp.s
    worst = neighborhood_odds(inp, np.maximum)
    delta_b = inp.delta_r * s / (1.0 - s) * worst * (1.0 + epsilon)
    return CuringAllocation(delta_b=delta_b)


def submartingale_bound_ii(inp: StrategyInput, factor: float) -> CuringAllocation:
    """
    Curing below which every super urn drifts towards infection.

    Uses the neighbourhood minimum of the odds instead of the maximum, scaled
    by ``factor`` in (0, 1]. Not a curing policy; it brackets the drift from
    the other side in property checks.
    """
    if not 0 < factor <= 1:
        raise InvalidInputError(f"factor must lie in (0, 1], got {factor}", "factor")
    s = inp.s
    best = neighborhood_odds(inp, np.minimum)
    delta_b = inp.delta_r * s / (1.0 - s) * best * factor
    return CuringAllocation(delta_b=delta_b)


def strategy_iii(
    inp: StrategyInput,
    iterations: int = DEFAULT_ITERATIONS,
    granularity: int = DEFAULT_GRANULARITY,
) -> CuringAllocation:
    """Budget split minimising next-step expected exposure (Frank-Wolfe)."""
    objective = build_objective(inp, inp.delta_r)
    point = frank_wolfe(objective, inp.budget, iterations, granularity)
    # Iterates are convex combinations, so only rounding separates the sum from B
    delta_b = np.clip(point.x, 0.0, None)
    return CuringAllocation(delta_b=delta_b, budget_bound=True, budget=inp.budget)


def strategy_iv(inp: StrategyInput) -> CuringAllocation:
    """Budget split in proportion to degree times closeness times S."""
    if inp.centrality is None:
        raise StrategyError("centrality table required", strategy="iv", step=inp.n)
    weight = inp.centrality.weight * inp.s
    delta_b = inp.budget * weight / weight.sum()
    delta_b[-1] = max(inp.budget - delta_b[:-1].sum(), 0.0)
    return CuringAllocation(delta_b=delta_b, budget_bound=True, budget=inp.budget)


def strategy_v(inp: StrategyInput) -> CuringAllocation:
    """Uniform budget split."""
    delta_b = np.full(inp.node_count, inp.budget / inp.node_count)
    return CuringAllocation(delta_b=delta_b, budget_bound=True, budget=inp.budget)


class UrnMartingaleStrategy(CuringStrategy):
    """Strategy ``i``: hold every individual urn at its current proportion."""

    name = "i"
    budgeted = False

    def compute(self, inp: StrategyInput) -> np.ndarray:
        return strategy_i(inp).delta_b


class SuperUrnSupermartingaleStrategy(CuringStrategy):
    """Strategy ``ii``: keep every super urn from drifting upwards."""

    name = "ii"
    budgeted = False

    def __init__(
        self,
        strict: bool = False,
        epsilon: float = DEFAULT_EPSILON,
        clamp: bool = False,
    ) -> None:
        super().__init__(clamp=clamp)
        if epsilon < 0:
            raise InvalidInputError(f"epsilon must be >= 0, got {epsilon}", "epsilon")
        self.strict = strict
        self.epsilon = epsilon

    def compute(self, inp: StrategyInput) -> np.ndarray:
        return strategy_ii(inp, self.epsilon if self.strict else 0.0).delta_b

    def describe(self) -> dict:
        return {**super().describe(), "strict": self.strict, "epsilon": self.epsilon}


class GradientStrategy(CuringStrategy):
    """Strategy ``iii``: myopic exposure minimisation under the budget."""

    name = "iii"

    def __init__(
        self,
        iterations: int = DEFAULT_ITERATIONS,
        granularity: int = DEFAULT_GRANULARITY,
        clamp: bool = False,
    ) -> None:
        super().__init__(clamp=clamp)
        if iterations < 1:
            raise InvalidInputError("iterations must be >= 1", "iterations")
        if granularity < 2:
            raise InvalidInputError("granularity must be >= 2", "granularity")
        self.iterations = iterations
        self.granularity = granularity

    def compute(self, inp: StrategyInput) -> np.ndarray:
        return strategy_iii(inp, self.iterations, self.granularity).delta_b

    def describe(self) -> dict:
        return {
            **super().describe(),
            "iterations": self.iterations,
            "granularity": self.granularity,
        }


class CentralityStrategy(CuringStrategy):
    """Strategy ``iv``: centrality-and-exposure weighted budget split."""

    name = "iv"
    needs_centrality = True

    def compute(self, inp: StrategyInput) -> np.ndarray:
        return strategy_iv(inp).delta_b


class UniformStrategy(CuringStrategy):
    """Strategy ``v``: the same share of the budget for every node."""

    name = "v"

    def compute(self, inp: StrategyInput) -> np.ndarray:
        return strategy_v(inp).delta_b
