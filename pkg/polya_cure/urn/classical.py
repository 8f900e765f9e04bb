"""
Classical single-urn Polya process.

Used as the baseline the network model generalises: after n draws with r of
them red, the urn's red proportion is ``(rho + delta * r) / (1 + n * delta)``.
"""

import numpy as np

from ..exceptions import InvalidInputError
from .engine import UniformSource
from .models import ClassicalUrn


def classical_proportion(urn: ClassicalUrn) -> float:
    """Current red proportion U_n of the urn."""
    return (urn.rho + urn.delta * urn.reds) / (1.0 + urn.draws * urn.delta)


def classical_draw(urn: ClassicalUrn, rng: UniformSource) -> int:
    """Draw once, reinforce the drawn colour, and return 1 for red."""
    red = int(rng.random(1)[0] <= classical_proportion(urn))
    urn.draws += 1
    urn.reds += red
    return red


def simulate_classical_urns(
    count: int,
    draws: int,
    red: float,
    black: float,
    added: float,
    rng: np.random.Generator,
) -> np.ndarray:
    """
    Run ``count`` independent urns for ``draws`` draws, vectorised across urns.

    Returns:
        Final red proportions, one per urn
    """
    if count < 1 or draws < 0:
        raise InvalidInputError("need count >= 1 and draws >= 0")
    urn = ClassicalUrn.from_counts(red, black, added)
    reds = np.zeros(count, dtype=np.int64)
    for n in range(draws):
        proportion = (urn.rho + urn.delta * reds) / (1.0 + n * urn.delta)
        reds += rng.random(count) <= proportion
    return (urn.rho + urn.delta * reds) / (1.0 + draws * urn.delta)
