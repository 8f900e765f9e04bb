"""
One-step expected exposure and its minimisation under a curing budget.
"""

from .frank_wolfe import (
    DEFAULT_GRANULARITY,
    DEFAULT_ITERATIONS,
    SimplexPoint,
    frank_wolfe,
)
from .objective import ExposureObjective, build_objective, evaluate, gradient

__all__ = [
    "ExposureObjective",
    "build_objective",
    "evaluate",
    "gradient",
    "SimplexPoint",
    "frank_wolfe",
    "DEFAULT_ITERATIONS",
    "DEFAULT_GRANULARITY",
]
