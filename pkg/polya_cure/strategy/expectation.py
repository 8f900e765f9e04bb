"""
One-step conditional expectations of the urn proportions.

Two quantities are reported for every node:

* the exact conditional expectation, enumerating the joint outcomes of the
  draws that feed the urn (two outcomes for U_i, ``2**|N_i'|`` for S_i);
* the first-moment ratio ``E[red_n | F] / E[total_n | F]``.

The drift bounds of the curing strategies sign the first-moment ratio. The
two agree whenever every node adds the same mass on either colour
(``delta_b == delta_r``), because the urn sizes are then known in advance.
"""

import logging
from dataclasses import dataclass
from typing import Dict

import numpy as np

from ..exceptions import InvalidInputError, OracleLimitError
from ..urn.models import NetworkState
from ..urn.oracle import draw_patterns

logger = logging.getLogger(__name__)

MAX_ENUMERATED_NEIGHBORHOOD = 20


@dataclass(frozen=True)
class OneStepExpectation:
    """Per-node conditional expectations after the coming draw."""

    u: np.ndarray
    s: np.ndarray
    exact_u: np.ndarray
    exact_s: np.ndarray
    first_moment_u: np.ndarray
    first_moment_s: np.ndarray

    @property
    def network_exposure(self) -> float:
        """First-moment expectation of the network exposure."""
        return float(self.first_moment_s.mean())

    @property
    def network_susceptibility(self) -> float:
        return float(self.first_moment_u.mean())


def first_moment_u(
    state: NetworkState, delta_r: np.ndarray, delta_b: np.ndarray
) -> np.ndarray:
    s = state.s
    return (state.red + delta_r * s) / (state.total + delta_r * s + delta_b * (1 - s))


def first_moment_s(
    state: NetworkState, delta_r: np.ndarray, delta_b: np.ndarray
) -> np.ndarray:
    s = state.s
    closed = state.graph.closed_matrix
    red_inflow = closed @ (delta_r * s)
    black_inflow = closed @ (delta_b * (1 - s))
    return (state.super_red + red_inflow) / (
        state.super_total + red_inflow + black_inflow
    )


def exact_u(
    state: NetworkState, delta_r: np.ndarray, delta_b: np.ndarray
) -> np.ndarray:
    s = state.s
    red_branch = (state.red + delta_r) / (state.total + delta_r)
    black_branch = state.red / (state.total + delta_b)
    return s * red_branch + (1 - s) * black_branch


def exact_s(
    state: NetworkState, delta_r: np.ndarray, delta_b: np.ndarray
) -> np.ndarray:
    """
    Exact E[S_i | F] by enumerating the draws of each closed neighbourhood.

    Raises:
        OracleLimitError: If a closed neighbourhood has more than 20 nodes
    """
    largest = state.graph.max_closed_neighborhood
    if largest > MAX_ENUMERATED_NEIGHBORHOOD:
        raise OracleLimitError(
            f"closed neighbourhood of {largest} nodes exceeds the enumeration "
            f"limit of {MAX_ENUMERATED_NEIGHBORHOOD}",
            MAX_ENUMERATED_NEIGHBORHOOD,
        )
    s = state.s
    patterns: Dict[int, np.ndarray] = {}
    result = np.empty(state.graph.node_count, dtype=np.float64)
    for i, members in enumerate(state.graph.closed_neighborhoods):
        idx = np.asarray(members)
        z = patterns.setdefault(len(idx), draw_patterns(len(idx)))
        probabilities = np.prod(np.where(z == 1, s[idx], 1 - s[idx]), axis=1)
        red_added = z @ delta_r[idx]
        black_added = (1 - z) @ delta_b[idx]
        ratio = (state.super_red[i] + red_added) / (
            state.super_total[i] + red_added + black_added
        )
        result[i] = probabilities @ ratio
    return result


def exact_one_step_expectation(
    state: NetworkState, delta_r: np.ndarray, delta_b: np.ndarray
) -> OneStepExpectation:
    """
    Expectations of U_{i,n} and S_{i,n} given the state at time n-1.

    Args:
        state: State at time n-1 (not modified)
        delta_r: Red additions of step n
        delta_b: Black additions of step n

    Returns:
        OneStepExpectation with exact and first-moment values per node
    """
    size = state.graph.node_count
    delta_r = np.asarray(delta_r, dtype=np.float64)
    delta_b = np.asarray(delta_b, dtype=np.float64)
    for name, values in (("delta_r", delta_r), ("delta_b", delta_b)):
        if values.shape != (size,) or np.any(values < 0):
            raise InvalidInputError(
                f"{name} must be a non-negative per-node vector", name
            )
    return OneStepExpectation(
        u=state.u,
        s=state.s,
        exact_u=exact_u(state, delta_r, delta_b),
        exact_s=exact_s(state, delta_r, delta_b),
        first_moment_u=first_moment_u(state, delta_r, delta_b),
        first_moment_s=first_moment_s(state, delta_r, delta_b),
    )
