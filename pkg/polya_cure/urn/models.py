"""
Data models for the network Polya contagion.

Ball counts are stored as real-valued masses: curing strategies hand out
fractional numbers of black balls, and every proportion in the model is
scale free.
"""

from dataclasses import dataclass, field

import numpy as np

from ..exceptions import InitialConditionError
from ..graph.models import Graph


@dataclass
class InitialCondition:
    """
    Initial urn composition and red-ball reinforcement.

    ``delta_r`` is either a per-node vector used at every step, or a
    ``(K, N)`` schedule whose row ``t - 1`` applies at step ``t`` (the last
    row repeats once the schedule is exhausted).
    """

    red: np.ndarray
    black: np.ndarray
    delta_r: np.ndarray

    def __post_init__(self) -> None:
        self.red = np.asarray(self.red, dtype=np.float64)
        self.black = np.asarray(self.black, dtype=np.float64)
        self.delta_r = np.asarray(self.delta_r, dtype=np.float64)

        if self.red.ndim != 1 or self.black.shape != self.red.shape:
            raise InitialConditionError(
                "red and black must be vectors of equal length", "black"
            )
        if np.any(self.red <= 0):
            raise InitialConditionError("every node needs R_i > 0", "red")
        if np.any(self.black <= 0):
            raise InitialConditionError("every node needs B_i > 0", "black")
        shape = self.delta_r.shape
        if self.delta_r.ndim not in (1, 2) or shape[-1] != len(self.red):
            raise InitialConditionError(
                "delta_r must be a per-node vector or a (steps, nodes) schedule",
                "delta_r",
            )
        if np.any(self.delta_r < 0):
            raise InitialConditionError("delta_r must be non-negative", "delta_r")

    @property
    def node_count(self) -> int:
        return len(self.red)

    @property
    def total(self) -> np.ndarray:
        return self.red + self.black

    @property
    def rho(self) -> float:
        """Network-wide initial proportion of red balls."""
        return float(self.red.sum() / self.total.sum())

    def delta_r_at(self, step: int) -> np.ndarray:
        """Red additions applied at ``step`` (1-based)."""
        if self.delta_r.ndim == 1:
            return self.delta_r
        row = min(step - 1, self.delta_r.shape[0] - 1)
        return self.delta_r[row]

    def check_against(self, graph: Graph) -> None:
        if self.node_count != graph.node_count:
            raise InitialConditionError(
                f"initial condition has {self.node_count} nodes, "
                f"graph has {graph.node_count}",
                "red",
            )


@dataclass
class NetworkState:
    """
    Urn masses at time ``n`` with cached super-urn sums.

    ``super_red[i]`` and ``super_total[i]`` hold the red and total mass of
    node i's super urn. They are maintained incrementally by the engine and
    can be checked against a fresh recomputation with :meth:`check_caches`.
    """

    graph: Graph
    red: np.ndarray
    total: np.ndarray
    n: int = 0
    super_red: np.ndarray = field(default=None)  # type: ignore[assignment]
    super_total: np.ndarray = field(default=None)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if self.super_red is None or self.super_total is None:
            self.recompute_caches()

    def recompute_caches(self) -> None:
        self.super_red = self.graph.closed_matrix @ self.red
        self.super_total = self.graph.closed_matrix @ self.total

    @property
    def u(self) -> np.ndarray:
        """Individual urn red proportions U_{i,n}."""
        return self.red / self.total

    @property
    def s(self) -> np.ndarray:
        """Super urn red proportions S_{i,n}."""
        return self.super_red / self.super_total

    @property
    def black(self) -> np.ndarray:
        return self.total - self.red

    @property
    def susceptibility(self) -> float:
        """Network susceptibility, the node average of U."""
        return float(self.u.mean())

    @property
    def exposure(self) -> float:
        """Network exposure, the node average of S."""
        return float(self.s.mean())

    def copy(self) -> "NetworkState":
        return NetworkState(
            graph=self.graph,
            red=self.red.copy(),
            total=self.total.copy(),
            n=self.n,
            super_red=self.super_red.copy(),
            super_total=self.super_total.copy(),
        )

    def cache_error(self) -> float:
        """Largest relative gap between cached and recomputed super-urn sums."""
        fresh_red = self.graph.closed_matrix @ self.red
        fresh_total = self.graph.closed_matrix @ self.total
        return float(
            max(
                np.max(np.abs(fresh_red - self.super_red) / fresh_red),
                np.max(np.abs(fresh_total - self.super_total) / fresh_total),
            )
        )

    def check_caches(self, rtol: float = 1e-12) -> None:
        error = self.cache_error()
        if error > rtol:
            raise AssertionError(
                f"super-urn cache drifted by {error:.3g} (relative) at n={self.n}"
            )


@dataclass(frozen=True)
class DrawOutcome:
    """Result of one network draw: z[i] = 1 when node i drew red."""

    z: np.ndarray
    s_prev: np.ndarray

    @property
    def infection_rate(self) -> float:
        return float(self.z.mean())


@dataclass
class ClassicalUrn:
    """
    Single Polya urn with constant reinforcement.

    ``rho`` is the initial red proportion R/T and ``delta`` the correlation
    parameter Delta/T. The urn tracks only how many draws were made and how
    many of them were red, which determines its composition exactly.
    """

    rho: float
    delta: float
    draws: int = 0
    reds: int = 0

    @classmethod
    def from_counts(cls, red: float, black: float, added: float) -> "ClassicalUrn":
        total = red + black
        if red <= 0 or black <= 0:
            raise InitialConditionError("classical urn needs R > 0 and B > 0")
        if added < 0:
            raise InitialConditionError("reinforcement must be non-negative")
        return cls(rho=red / total, delta=added / total)
