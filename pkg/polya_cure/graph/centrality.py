"""
Closeness centrality by breadth-first search.

C_i is the reciprocal of the summed hop distances from node i to every
other node (no ``N - 1`` normalisation).
"""

import logging

import numpy as np
from scipy.sparse import csgraph

from .models import CentralityTable, Graph

logger = logging.getLogger(__name__)


def hop_distances(graph: Graph) -> np.ndarray:
    """All-pairs hop distances, one unit-weight search per node."""
    return csgraph.shortest_path(
        graph.adjacency_matrix, method="D", directed=False, unweighted=True
    )


def closeness_centrality(graph: Graph) -> CentralityTable:
    """
    Compute degree and closeness for every node.

    Args:
        graph: A connected graph

    Returns:
        CentralityTable with ``closeness[i] = 1 / sum_j d(i, j)``
    """
    distances = hop_distances(graph)
    totals = distances.sum(axis=1)
    closeness = 1.0 / totals
    logger.debug(
        f"Closeness for {graph!r}: min={closeness.min():.6g} "
        f"max={closeness.max():.6g}"
    )
    return CentralityTable(
        degree=graph.degrees.astype(np.float64), closeness=closeness
    )
