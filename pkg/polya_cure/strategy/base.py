"""
Base classes for curing strategies.

A strategy maps the observable state at time n-1 and the red additions of
step n to the black additions of step n. Strategies are pure: they read a
frozen :class:`StrategyInput` and never touch the random stream, so every
strategy in a suite sees the same draws for the same trial seed.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..exceptions import InvalidInputError
from ..graph.models import CentralityTable, Graph
from ..urn.models import NetworkState

BUDGET_RTOL = 1e-9


def _frozen(values: np.ndarray) -> np.ndarray:
    array = np.array(values, dtype=np.float64, copy=True)
    array.flags.writeable = False
    return array


@dataclass(frozen=True)
class StrategyInput:
    """
    Read-only view of the state a strategy may observe before step ``n``.

    ``u`` and ``s`` are U_{i,n-1} and S_{i,n-1}; ``delta_r`` holds the red
    additions that will apply at step ``n``.
    """

    graph: Graph
    u: np.ndarray
    s: np.ndarray
    red: np.ndarray
    total: np.ndarray
    super_red: np.ndarray
    super_total: np.ndarray
    delta_r: np.ndarray
    budget: float
    n: int
    centrality: Optional[CentralityTable] = None

    @classmethod
    def from_state(
        cls,
        state: NetworkState,
        delta_r: np.ndarray,
        budget: float,
        centrality: Optional[CentralityTable] = None,
    ) -> "StrategyInput":
        if budget < 0 or not np.isfinite(budget):
            raise InvalidInputError(f"budget must be >= 0, got {budget}", "budget")
        return cls(
            graph=state.graph,
            u=_frozen(state.u),
            s=_frozen(state.s),
            red=_frozen(state.red),
            total=_frozen(state.total),
            super_red=_frozen(state.super_red),
            super_total=_frozen(state.super_total),
            delta_r=_frozen(delta_r),
            budget=float(budget),
            n=state.n + 1,
            centrality=centrality,
        )

    @property
    def node_count(self) -> int:
        return self.graph.node_count


@dataclass(frozen=True)
class CuringAllocation:
    """Black additions for one step, and whether they must exhaust the budget."""

    delta_b: np.ndarray
    budget_bound: bool = False
    budget: float = 0.0

    def __post_init__(self) -> None:
        delta_b = np.asarray(self.delta_b, dtype=np.float64)
        object.__setattr__(self, "delta_b", delta_b)
        if np.any(delta_b < 0) or not np.all(np.isfinite(delta_b)):
            raise InvalidInputError("allocation must be finite and >= 0", "delta_b")
        if self.budget_bound and not np.isclose(
            delta_b.sum(), self.budget, rtol=BUDGET_RTOL, atol=BUDGET_RTOL
        ):
            raise InvalidInputError(
                f"allocation spends {delta_b.sum()!r}, budget is {self.budget!r}",
                "delta_b",
            )

    @property
    def spend(self) -> float:
        return float(self.delta_b.sum())


def clamp_to_budget(delta_b: np.ndarray, budget: float) -> np.ndarray:
    """
    Rescale an allocation so that it spends exactly ``budget``.

    A zero allocation has no shape to keep and becomes uniform.
    """
    spend = delta_b.sum()
    if spend <= 0:
        return np.full(len(delta_b), budget / len(delta_b))
    return delta_b * (budget / spend)


class CuringStrategy(ABC):
    """
    Abstract base class for curing strategies.

    Unbudgeted strategies report whatever they spend unless ``clamp`` is set,
    in which case their allocation is rescaled to the budget.
    """

    name: str = ""
    budgeted: bool = True
    needs_centrality: bool = False

    def __init__(self, clamp: bool = False) -> None:
        self.clamp = clamp

    @abstractmethod
    def compute(self, inp: StrategyInput) -> np.ndarray:
        """Return the per-node black additions for step ``inp.n``."""
        pass

    def allocate(self, inp: StrategyInput) -> CuringAllocation:
        """
        Allocate curing for one step.

        Args:
            inp: State view and step parameters

        Returns:
            The allocation, budget-bound for budgeted or clamped strategies
        """
        delta_b = self.compute(inp)
        bound = self.budgeted or self.clamp
        if not self.budgeted and self.clamp:
            delta_b = clamp_to_budget(delta_b, inp.budget)
        return CuringAllocation(delta_b=delta_b, budget_bound=bound, budget=inp.budget)

    def describe(self) -> dict:
        """Parameters echoed into run manifests."""
        return {"strategy": self.name, "clamp": self.clamp}

    def __repr__(self) -> str:
        params = ", ".join(f"{k}={v!r}" for k, v in self.describe().items())
        return f"{type(self).__name__}({params})"
