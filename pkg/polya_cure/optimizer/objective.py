"""
Expected network exposure after one step, as a function of the curing vector.

With red additions ``delta_r`` fixed and curing ``x`` chosen before the draw,
the node average of the super-urn first moments is

    f(x) = (1/N) sum_i c_i / (d_i + sigma_i(x)),
    sigma_i(x) = sum_{j in N_i'} x_j (1 - S_j),

where ``c_i`` is the current red mass of super urn i plus the expected red
inflow ``sum_{j in N_i'} delta_r_j S_j`` and ``d_i`` is the current total
mass plus that same inflow. f is convex and non-increasing in every x_j.
"""

import logging
from dataclasses import dataclass
from typing import Protocol

import numpy as np

from ..exceptions import InvalidInputError
from ..graph.models import Graph

logger = logging.getLogger(__name__)


class SuperUrnView(Protocol):
    """Anything exposing super-urn sums, such as a state or a strategy input."""

    graph: Graph
    super_red: np.ndarray
    super_total: np.ndarray

    @property
    def s(self) -> np.ndarray: ...


@dataclass(frozen=True)
class ExposureObjective:
    """Coefficients of the one-step expected exposure."""

    graph: Graph
    c: np.ndarray
    d: np.ndarray
    w: np.ndarray

    @property
    def node_count(self) -> int:
        return self.graph.node_count

    def sigma(self, x: np.ndarray) -> np.ndarray:
        """Expected black inflow into every super urn under curing ``x``."""
        return self.graph.closed_matrix @ (self.w * x)


def build_objective(state: SuperUrnView, delta_r: np.ndarray) -> ExposureObjective:
    """
    Freeze the coefficients of f for the coming step.

    Args:
        state: State at time n-1
        delta_r: Red additions of step n

    Returns:
        ExposureObjective with ``c``, ``d`` and weights ``w = 1 - S``
    """
    delta_r = np.asarray(delta_r, dtype=np.float64)
    if delta_r.shape != (state.graph.node_count,) or np.any(delta_r < 0):
        raise InvalidInputError("delta_r must be a non-negative per-node vector")
    s = state.s
    inflow = state.graph.closed_matrix @ (delta_r * s)
    return ExposureObjective(
        graph=state.graph,
        c=state.super_red + inflow,
        d=state.super_total + inflow,
        w=1.0 - s,
    )


def evaluate(obj: ExposureObjective, x: np.ndarray) -> float:
    """Value of f at ``x``."""
    return float(np.mean(obj.c / (obj.d + obj.sigma(x))))


def gradient(obj: ExposureObjective, x: np.ndarray) -> np.ndarray:
    """
    Analytic gradient of f.

    ``df/dx_j = -(w_j / N) sum_{i : j in N_i'} c_i / (d_i + sigma_i(x))**2``;
    every partial is non-positive.
    """
    ratio = obj.c / (obj.d + obj.sigma(x)) ** 2
    return -(obj.w / obj.node_count) * (obj.graph.closed_matrix.T @ ratio)
