"""
Barabasi-Albert graph generator.

Convention: the process starts from a complete graph on ``m + 1`` nodes; each
further node attaches to ``m`` distinct existing nodes chosen with
probability proportional to their current degree. The result has
``m (m + 1) / 2 + m (n - m - 1)`` edges; with ``m = 1`` it is a tree.
"""

import logging
import re
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from ..exceptions import GraphGenerationError
from .models import Graph

logger = logging.getLogger(__name__)

_SPEC_PATTERN = re.compile(r"^ba:(\d+):(\d+)(?::seed=(\d+))?$")


def generate_barabasi_albert(n: int, m: int, seed: Optional[int] = None) -> Graph:
    """
    Generate a preferential-attachment graph.

    Args:
        n: Number of nodes
        m: Edges added per new node
        seed: Seed for ``numpy.random.default_rng``

    Returns:
        A connected Graph, deterministic for a fixed seed

    Raises:
        GraphGenerationError: If ``m < 1`` or ``n <= m``
    """
    if m < 1:
        raise GraphGenerationError(f"m must be at least 1, got {m}")
    if n <= m:
        raise GraphGenerationError(f"n must exceed m (n={n}, m={m})")

    rng = np.random.default_rng(seed)
    edges: List[Tuple[int, int]] = [
        (u, v) for u in range(m + 1) for v in range(u + 1, m + 1)
    ]
    degree = np.zeros(n, dtype=np.float64)
    degree[: m + 1] = m

    for new in range(m + 1, n):
        weights = degree[:new] / degree[:new].sum()
        targets = rng.choice(new, size=m, replace=False, p=weights)
        for t in sorted(int(t) for t in targets):
            edges.append((t, new))
            degree[t] += 1
        degree[new] = m

    graph = Graph.from_edges(n, edges, source=f"ba:{n}:{m}:seed={seed}")
    logger.debug(f"Generated BA graph n={n} m={m} seed={seed}: {graph!r}")
    return graph


@dataclass(frozen=True)
class GeneratorSpec:
    """Parsed ``ba:<n>:<m>[:seed=<s>]`` generator string."""

    n: int
    m: int
    seed: Optional[int] = None

    @classmethod
    def parse(cls, spec: str) -> "GeneratorSpec":
        match = _SPEC_PATTERN.match(spec.strip())
        if not match:
            raise GraphGenerationError(
                f"Invalid generator spec {spec!r}; expected ba:<n>:<m>[:seed=<s>]",
                spec=spec,
            )
        n, m, seed = match.groups()
        parsed = cls(int(n), int(m), int(seed) if seed is not None else None)
        if parsed.m < 1 or parsed.n <= parsed.m:
            raise GraphGenerationError(
                f"Invalid generator spec {spec!r}: need n > m >= 1", spec=spec
            )
        return parsed

    def build(self) -> Graph:
        return generate_barabasi_albert(self.n, self.m, self.seed)

    def __str__(self) -> str:
        suffix = f":seed={self.seed}" if self.seed is not None else ""
        return f"ba:{self.n}:{self.m}{suffix}"
