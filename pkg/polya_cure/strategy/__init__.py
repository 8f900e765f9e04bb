"""
Curing strategies and the one-step expectation oracle that checks them.
"""

from .base import (
    BUDGET_RTOL,
    CuringAllocation,
    CuringStrategy,
    StrategyInput,
    clamp_to_budget,
)
from .expectation import (
    MAX_ENUMERATED_NEIGHBORHOOD,
    OneStepExpectation,
    exact_one_step_expectation,
    first_moment_s,
    first_moment_u,
)
from .registry import StrategyRegistry, default_registry
from .strategies import (
    DEFAULT_EPSILON,
    CentralityStrategy,
    GradientStrategy,
    SuperUrnSupermartingaleStrategy,
    UniformStrategy,
    UrnMartingaleStrategy,
    neighborhood_odds,
    strategy_i,
    strategy_ii,
    strategy_iii,
    strategy_iv,
    strategy_v,
    submartingale_bound_ii,
)

__all__ = [
    "BUDGET_RTOL",
    "DEFAULT_EPSILON",
    "MAX_ENUMERATED_NEIGHBORHOOD",
    "StrategyInput",
    "CuringAllocation",
    "CuringStrategy",
    "clamp_to_budget",
    "OneStepExpectation",
    "exact_one_step_expectation",
    "first_moment_u",
    "first_moment_s",
    "StrategyRegistry",
    "default_registry",
    "UrnMartingaleStrategy",
    "SuperUrnSupermartingaleStrategy",
    "GradientStrategy",
    "CentralityStrategy",
    "UniformStrategy",
    "neighborhood_odds",
    "strategy_i",
    "strategy_ii",
    "strategy_iii",
    "strategy_iv",
    "strategy_v",
    "submartingale_bound_ii",
]
