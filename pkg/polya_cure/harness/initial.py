"""
Initial-condition rules.
"""

import logging
from typing import Optional

import numpy as np

from ..graph.models import Graph
from ..urn.models import InitialCondition
from .config import EXPLICIT, InitialConditionConfig

logger = logging.getLogger(__name__)

LOW = 1
HIGH = 10


def generate_ic(graph: Graph, seed: Optional[int]) -> InitialCondition:
    """
    Draw R_i, B_i and delta_r_i as i.i.d. integers in {1, ..., 10}.

    The three vectors are drawn in that order from one generator seeded with
    ``seed``; ``delta_r`` is constant in time.
    """
    rng = np.random.default_rng(seed)
    size = graph.node_count
    red = rng.integers(LOW, HIGH, size=size, endpoint=True)
    black = rng.integers(LOW, HIGH, size=size, endpoint=True)
    delta_r = rng.integers(LOW, HIGH, size=size, endpoint=True)
    ic = InitialCondition(red=red, black=black, delta_r=delta_r)
    logger.debug(f"Generated initial condition for {graph!r}: rho={ic.rho:.6g}")
    return ic


def build_initial_condition(
    config: InitialConditionConfig, graph: Graph, seed: int
) -> InitialCondition:
    """Initial condition described by a configuration section."""
    if config.rule == EXPLICIT:
        ic = InitialCondition(
            red=config.red, black=config.black, delta_r=config.delta_r
        )
        ic.check_against(graph)
        return ic
    return generate_ic(graph, seed)
