"""
Enumeration oracles for tiny networks.

These replay the deterministic state recursion over every possible draw
history and are meant for tests and property checks only. No closed form
for the average infection rate exists on general graphs, so the exact
values come from brute force.
"""

import itertools
import logging
from typing import Callable, Union

import numpy as np

from ..exceptions import InvalidInputError, OracleLimitError
from ..graph.models import Graph
from .engine import apply_draws, init_state
from .models import InitialCondition, NetworkState

logger = logging.getLogger(__name__)

CuringRule = Union[np.ndarray, Callable[[NetworkState, int], np.ndarray]]

MAX_JOINT_STEPS = 12
MAX_JOINT_NODES = 3
MAX_ENUMERATED_DRAWS = 16


def curing_at(rule: CuringRule, state: NetworkState, step: int) -> np.ndarray:
    """Black additions for ``step`` from a schedule array or a state rule."""
    if callable(rule):
        return np.asarray(rule(state, step), dtype=np.float64)
    schedule = np.asarray(rule, dtype=np.float64)
    if schedule.ndim == 1:
        return schedule
    return schedule[step - 1]


def draw_patterns(size: int) -> np.ndarray:
    """All 2**size binary vectors as rows, in lexicographic order."""
    return np.array(list(itertools.product((0, 1), repeat=size)), dtype=np.int8)


def joint_probability(
    graph: Graph,
    ic: InitialCondition,
    draws: np.ndarray,
    delta_b_schedule: CuringRule,
) -> float:
    """
    Probability of one complete draw history.

    Args:
        graph: Network with at most three nodes
        ic: Initial condition
        draws: ``(N, n)`` binary array, row i holding node i's draws
        delta_b_schedule: ``(n, N)`` curing array or ``rule(state, step)``

    Returns:
        The product over steps and nodes of S^z (1 - S)^(1 - z)

    Raises:
        OracleLimitError: Beyond three nodes or twelve steps
    """
    draws = np.asarray(draws, dtype=np.int8)
    if draws.ndim != 2 or draws.shape[0] != graph.node_count:
        raise InvalidInputError("draws must be an (N, n) array", "draws")
    if graph.node_count > MAX_JOINT_NODES:
        raise OracleLimitError(
            f"joint probability enumerates at most {MAX_JOINT_NODES} nodes",
            MAX_JOINT_NODES,
        )
    if draws.shape[1] > MAX_JOINT_STEPS:
        raise OracleLimitError(
            f"joint probability replays at most {MAX_JOINT_STEPS} steps",
            MAX_JOINT_STEPS,
        )
    if np.any((draws != 0) & (draws != 1)):
        raise InvalidInputError("draws must be binary", "draws")

    state = init_state(graph, ic)
    probability = 1.0
    for t in range(1, draws.shape[1] + 1):
        z = draws[:, t - 1]
        s = state.s
        probability *= float(np.prod(np.where(z == 1, s, 1.0 - s)))
        apply_draws(state, z, ic.delta_r_at(t), curing_at(delta_b_schedule, state, t))
    return probability


def exact_infection_rate(
    graph: Graph,
    ic: InitialCondition,
    steps: int,
    delta_b_rule: CuringRule,
) -> np.ndarray:
    """
    Exact average infection rate for steps 1..``steps``.

    The value at step t is the node average of the marginal P(Z_{i,t} = 1),
    summed over every draw history weighted by its joint probability.

    Raises:
        OracleLimitError: If ``N * steps`` exceeds the enumeration limit
    """
    if graph.node_count * steps > MAX_ENUMERATED_DRAWS:
        raise OracleLimitError(
            f"enumeration limited to N * steps <= {MAX_ENUMERATED_DRAWS}",
            MAX_ENUMERATED_DRAWS,
        )
    patterns = draw_patterns(graph.node_count)
    pattern_rates = patterns.mean(axis=1)
    rates = np.zeros(steps, dtype=np.float64)

    def descend(state: NetworkState, weight: float, t: int) -> None:
        if t > steps:
            return
        s = state.s
        probabilities = np.prod(np.where(patterns == 1, s, 1.0 - s), axis=1)
        rates[t - 1] += weight * float(probabilities @ pattern_rates)
        if t == steps:
            return
        delta_r = ic.delta_r_at(t)
        delta_b = curing_at(delta_b_rule, state, t)
        for z, p in zip(patterns, probabilities):
            child = state.copy()
            apply_draws(child, z, delta_r, delta_b)
            descend(child, weight * float(p), t + 1)

    descend(init_state(graph, ic), 1.0, 1)
    logger.debug(f"Enumerated infection rate over {steps} steps: {rates}")
    return rates
