"""
Conditional-gradient minimisation of the expected exposure over the budget
simplex ``{x >= 0, sum(x) = B}``.
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, List

import numpy as np

from ..exceptions import InvalidInputError
from .objective import ExposureObjective, gradient

logger = logging.getLogger(__name__)

DEFAULT_ITERATIONS = 50
DEFAULT_GRANULARITY = 100

GradientFn = Callable[[ExposureObjective, np.ndarray], np.ndarray]


@dataclass
class SimplexPoint:
    """A feasible curing vector and the objective values that led to it."""

    x: np.ndarray
    budget: float
    history: List[float] = field(default_factory=list)

    @property
    def value(self) -> float:
        return self.history[-1]

    def is_feasible(self, tol: float = 1e-9) -> bool:
        scale = max(1.0, self.budget)
        return bool(
            np.all(self.x >= 0) and abs(self.x.sum() - self.budget) <= tol * scale
        )


def frank_wolfe(
    obj: ExposureObjective,
    budget: float,
    iterations: int = DEFAULT_ITERATIONS,
    granularity: int = DEFAULT_GRANULARITY,
    gradient_fn: GradientFn = gradient,
) -> SimplexPoint:
    """
    Minimise f over the simplex scaled by ``budget``.

    Starts at ``B e_0``. Each iteration moves towards the vertex ``B e_i`` of
    the most negative partial (lowest id on ties) by the step
    ``alpha in {0, 1/a, ..., 1}`` minimising f along the segment, the smallest
    such alpha on ties. Because sigma is linear in x, the whole segment is
    evaluated in one vectorised pass.

    Args:
        obj: Objective for the coming step
        budget: Total curing B >= 0
        iterations: Number of iterations T >= 1
        granularity: Line-search grid size a >= 2
        gradient_fn: Partials of f, called as ``gradient_fn(obj, y)``

    Returns:
        SimplexPoint holding y_{T+1} and the non-increasing value history
    """
    if iterations < 1:
        raise InvalidInputError(f"iterations must be >= 1, got {iterations}")
    if granularity < 2:
        raise InvalidInputError(f"granularity must be >= 2, got {granularity}")
    if budget < 0 or not np.isfinite(budget):
        raise InvalidInputError(f"budget must be >= 0, got {budget}", "budget")

    closed = obj.graph.closed_matrix
    alphas = np.linspace(0.0, 1.0, granularity + 1)[:, np.newaxis]

    y = np.zeros(obj.node_count, dtype=np.float64)
    y[0] = budget
    sigma_y = obj.sigma(y)
    history = [float(np.mean(obj.c / (obj.d + sigma_y)))]

    for k in range(iterations):
        i = int(np.argmin(gradient_fn(obj, y)))

        vertex_sigma = budget * obj.w[i] * closed[:, i].toarray().ravel()
        direction = vertex_sigma - sigma_y
        segment = sigma_y + alphas * direction
        values = np.mean(obj.c / (obj.d + segment), axis=1)
        best = int(np.argmin(values))
        alpha = float(alphas[best, 0])

        y = (1.0 - alpha) * y
        y[i] += alpha * budget
        sigma_y = segment[best]
        history.append(float(values[best]))
        logger.debug(f"Frank-Wolfe iteration {k + 1}: vertex={i} alpha={alpha}")

    return SimplexPoint(x=y, budget=float(budget), history=history)
