"""
Data models for network topologies.

The contagion runs on an undirected, connected graph whose nodes carry dense
0-based ids. Original node labels are kept alongside so that outputs can
refer to nodes by the names they had in the input file.
"""

import hashlib
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Optional, Tuple

import numpy as np
from scipy import sparse
from scipy.sparse import csgraph

from ..exceptions import DisconnectedGraphError, GraphFormatError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Graph:
    """
    Immutable undirected connected graph.

    ``adjacency[i]`` is the sorted tuple of neighbours of node ``i`` (no self
    loops). Derived structures (closed-neighbourhood matrix, degrees, CSR
    index arrays) are computed lazily and cached; the object is safe to share
    between concurrent trials.
    """

    node_count: int
    adjacency: Tuple[Tuple[int, ...], ...]
    labels: Tuple[str, ...] = field(default=())
    source: Optional[str] = None

    def __post_init__(self) -> None:
        if self.node_count < 1:
            raise GraphFormatError("Graph must have at least one node")
        if len(self.adjacency) != self.node_count:
            raise GraphFormatError(
                f"Adjacency has {len(self.adjacency)} rows for "
                f"{self.node_count} nodes"
            )
        if not self.labels:
            object.__setattr__(
                self, "labels", tuple(str(i) for i in range(self.node_count))
            )
        elif len(self.labels) != self.node_count:
            raise GraphFormatError("One label per node is required")
        self._check_symmetry()
        self._check_connected()

    @classmethod
    def from_edges(
        cls,
        node_count: int,
        edges: Iterable[Tuple[int, int]],
        labels: Tuple[str, ...] = (),
        source: Optional[str] = None,
    ) -> "Graph":
        """
        Build a graph from an iterable of (u, v) id pairs.

        Duplicate edges collapse to one; self loops are rejected.
        """
        neighbours = [set() for _ in range(node_count)]
        for u, v in edges:
            if u == v:
                raise GraphFormatError(f"Self loop on node {u}")
            if not (0 <= u < node_count and 0 <= v < node_count):
                raise GraphFormatError(f"Edge ({u}, {v}) out of range")
            neighbours[u].add(v)
            neighbours[v].add(u)
        adjacency = tuple(tuple(sorted(n)) for n in neighbours)
        return cls(node_count, adjacency, labels=labels, source=source)

    def _check_symmetry(self) -> None:
        for i, row in enumerate(self.adjacency):
            if i in row:
                raise GraphFormatError(f"Self loop on node {i}")
            for j in row:
                if i not in self.adjacency[j]:
                    raise GraphFormatError(f"Edge ({i}, {j}) is not symmetric")

    def _check_connected(self) -> None:
        if self.node_count == 1:
            # A lone node has no neighbours to share a super urn with
            raise DisconnectedGraphError(1, 1)
        count, _ = csgraph.connected_components(
            self.adjacency_matrix, directed=False
        )
        if count != 1:
            raise DisconnectedGraphError(int(count), self.node_count)

    @property
    def edge_count(self) -> int:
        return int(sum(len(row) for row in self.adjacency) // 2)

    def edges(self) -> Iterator[Tuple[int, int]]:
        """Yield each undirected edge once as (u, v) with u < v."""
        for u, row in enumerate(self.adjacency):
            for v in row:
                if u < v:
                    yield u, v

    @cached_property
    def closed_neighborhoods(self) -> Tuple[Tuple[int, ...], ...]:
        """Per-node sorted tuple of {i} plus its neighbours."""
        return tuple(
            tuple(sorted((i,) + row)) for i, row in enumerate(self.adjacency)
        )

    @cached_property
    def degrees(self) -> np.ndarray:
        return np.array([len(row) for row in self.adjacency], dtype=np.int64)

    @cached_property
    def adjacency_matrix(self) -> sparse.csr_matrix:
        """Symmetric 0/1 adjacency matrix without the diagonal."""
        rows = np.repeat(
            np.arange(self.node_count), [len(r) for r in self.adjacency]
        )
        cols = np.fromiter(
            (j for row in self.adjacency for j in row), dtype=np.int64
        )
        data = np.ones(len(cols), dtype=np.float64)
        return sparse.csr_matrix(
            (data, (rows, cols)), shape=(self.node_count, self.node_count)
        )

    @cached_property
    def closed_matrix(self) -> sparse.csr_matrix:
        """
        Closed-neighbourhood operator M with M[i, j] = 1 iff j is in N_i'.

        ``M @ v`` sums ``v`` over every node's super urn. M is symmetric, so
        it also maps a per-node quantity onto every super urn containing it.
        """
        eye = sparse.identity(self.node_count, format="csr", dtype=np.float64)
        return (self.adjacency_matrix + eye).tocsr()

    @cached_property
    def closed_index(self) -> Tuple[np.ndarray, np.ndarray]:
        """CSR (indptr, indices) of the closed neighbourhoods, for reduceat."""
        sizes = [len(c) for c in self.closed_neighborhoods]
        indptr = np.concatenate(([0], np.cumsum(sizes))).astype(np.int64)
        indices = np.fromiter(
            (j for c in self.closed_neighborhoods for j in c), dtype=np.int64
        )
        return indptr, indices

    @property
    def max_closed_neighborhood(self) -> int:
        return max(len(c) for c in self.closed_neighborhoods)

    def canonical_edge_list(self) -> str:
        """Edge list over dense ids, one ``u v`` pair per line, sorted."""
        return "".join(f"{u} {v}\n" for u, v in self.edges())

    @cached_property
    def content_hash(self) -> str:
        """Git blob hash (sha1 over ``blob <len>\\0`` + canonical edge list)."""
        body = self.canonical_edge_list().encode("utf-8")
        header = f"blob {len(body)}\0".encode("utf-8")
        return hashlib.sha1(header + body).hexdigest()  # nosec B324

    def __repr__(self) -> str:
        return f"Graph(nodes={self.node_count}, edges={self.edge_count})"


@dataclass(frozen=True)
class CentralityTable:
    """Static topology quantities consumed by the centrality heuristic."""

    degree: np.ndarray
    closeness: np.ndarray

    @property
    def weight(self) -> np.ndarray:
        """Degree times closeness, the static part of the heuristic ratio."""
        return self.degree * self.closeness
