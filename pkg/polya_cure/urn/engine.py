"""
Network Polya contagion engine.

One call to :func:`step` performs a network-wide draw: every node draws from
its super urn with probability ``S_{i,n-1}`` of red, then receives
``delta_r[i]`` red balls if it drew red or ``delta_b[i]`` black balls
otherwise. Super-urn sums are updated by pushing each node's mass change to
the super urns that contain it.
"""

import logging
from typing import Protocol

import numpy as np

from ..exceptions import InvalidInputError
from ..graph.models import Graph
from .models import DrawOutcome, InitialCondition, NetworkState

logger = logging.getLogger(__name__)


class UniformSource(Protocol):
    """Anything that produces uniform variates like numpy's Generator."""

    def random(self, size: int) -> np.ndarray: ...


def init_state(graph: Graph, ic: InitialCondition) -> NetworkState:
    """
    Build the time-0 state: U_{i,0} = R_i / T_i and S_{i,0} = R̄_i / T̄_i.

    Raises:
        InitialConditionError: If the initial condition does not fit the graph
    """
    ic.check_against(graph)
    return NetworkState(graph=graph, red=ic.red.copy(), total=ic.total.copy())


def super_urn_proportion(state: NetworkState, i: int) -> float:
    """Red proportion of node ``i``'s super urn."""
    return float(state.super_red[i] / state.super_total[i])


def _as_deltas(values: np.ndarray, size: int, name: str) -> np.ndarray:
    deltas = np.asarray(values, dtype=np.float64)
    if deltas.shape != (size,):
        raise InvalidInputError(
            f"{name} must have one entry per node ({size}), got shape {deltas.shape}",
            name,
        )
    if np.any(deltas < 0) or not np.all(np.isfinite(deltas)):
        raise InvalidInputError(f"{name} must be finite and non-negative", name)
    return deltas


def apply_draws(
    state: NetworkState,
    z: np.ndarray,
    delta_r: np.ndarray,
    delta_b: np.ndarray,
) -> None:
    """
    Add the balls implied by draw vector ``z`` and advance time.

    Used by :func:`step` and by the enumeration oracles that replay fixed
    draw histories.
    """
    red_added = delta_r * z
    total_added = red_added + delta_b * (1 - z)
    state.red += red_added
    state.total += total_added
    closed = state.graph.closed_matrix
    state.super_red += closed @ red_added
    state.super_total += closed @ total_added
    state.n += 1


def step(
    state: NetworkState,
    delta_r: np.ndarray,
    delta_b: np.ndarray,
    rng: UniformSource,
    check_invariants: bool = False,
) -> DrawOutcome:
    """
    Advance the contagion by one draw.

    One uniform variate is consumed per node, in node-id order; node i draws
    red when its variate is at most ``S_{i,n-1}``.

    Args:
        state: State at time n-1, updated in place to time n
        delta_r: Red additions for this step
        delta_b: Black (curing) additions for this step
        rng: Source of uniform variates
        check_invariants: Recompute super-urn sums and compare with the caches

    Returns:
        The draw vector and the probabilities it was drawn with

    Raises:
        InvalidInputError: If a delta vector is negative or mis-shaped
    """
    size = state.graph.node_count
    delta_r = _as_deltas(delta_r, size, "delta_r")
    delta_b = _as_deltas(delta_b, size, "delta_b")

    s_prev = state.s
    variates = rng.random(size)
    z = (variates <= s_prev).astype(np.int8)
    apply_draws(state, z, delta_r, delta_b)

    if check_invariants:
        state.check_caches()
        if np.any(state.red <= 0) or np.any(state.red >= state.total):
            raise AssertionError(f"urn proportions left (0, 1) at n={state.n}")

    return DrawOutcome(z=z, s_prev=s_prev)
