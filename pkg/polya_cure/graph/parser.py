"""
Edge-list reader and writer.

The format is one whitespace-separated pair of node labels per line, with
``#`` starting a comment. Labels are remapped to dense 0-based ids: when
every label is an integer the ids follow numeric order (so a ``0..N-1``
file keeps its numbering), otherwise they follow first appearance.
"""

import logging
from pathlib import Path
from typing import (
    BinaryIO,
    Dict,
    Iterable,
    Iterator,
    List,
    Optional,
    TextIO,
    Tuple,
    Union,
)

from ..exceptions import GraphFormatError
from .models import Graph

logger = logging.getLogger(__name__)


def _label_order(labels: List[str]) -> List[str]:
    try:
        numeric = {label: int(label) for label in labels}
    except ValueError:
        return labels
    return sorted(labels, key=numeric.__getitem__)


def _decode_lines(stream: BinaryIO) -> Iterator[str]:
    for line_number, raw in enumerate(stream, start=1):
        try:
            yield raw.decode("utf-8")
        except UnicodeDecodeError as e:
            raise GraphFormatError(
                f"invalid UTF-8 at byte {e.start}", line_number=line_number
            ) from e


def load_edge_list(source: Iterable[str], name: Optional[str] = None) -> Graph:
    """
    Parse an edge list into a Graph.

    Args:
        source: Text stream or lines, one edge per non-comment line
        name: Optional source name recorded on the graph

    Returns:
        A connected, symmetric Graph with duplicate edges collapsed

    Raises:
        GraphFormatError: On a malformed line, a self loop or undecodable text
        DisconnectedGraphError: If the edges do not form one component
    """
    raw_edges: List[Tuple[str, str]] = []
    first_seen: Dict[str, None] = {}

    line_number = 0
    lines = iter(source)
    while True:
        try:
            line = next(lines)
        except StopIteration:
            break
        except UnicodeDecodeError as e:
            raise GraphFormatError("invalid UTF-8 text", line_number + 1) from e
        line_number += 1
        content = line.split("#", 1)[0].strip()
        if not content:
            continue
        parts = content.split()
        if len(parts) != 2:
            raise GraphFormatError(
                f"expected two node labels, found {len(parts)}: {content!r}",
                line_number=line_number,
            )
        u, v = parts
        if u == v:
            raise GraphFormatError(f"self loop on node {u!r}", line_number)
        raw_edges.append((u, v))
        first_seen.setdefault(u)
        first_seen.setdefault(v)

    if not raw_edges:
        raise GraphFormatError("edge list contains no edges")

    labels = _label_order(list(first_seen))
    ids = {label: i for i, label in enumerate(labels)}
    graph = Graph.from_edges(
        len(labels),
        ((ids[u], ids[v]) for u, v in raw_edges),
        labels=tuple(labels),
        source=name,
    )
    logger.info(
        f"Loaded graph from {name or 'stream'}: "
        f"{graph.node_count} nodes, {graph.edge_count} edges"
    )
    return graph


def load_edge_list_file(path: Union[str, Path]) -> Graph:
    """Open ``path`` and parse it with :func:`load_edge_list`."""
    with open(path, "rb") as f:
        return load_edge_list(_decode_lines(f), name=str(path))


def write_edge_list(
    graph: Graph, target: TextIO, comment: Optional[str] = None
) -> None:
    """
    Write a graph as an edge list using its original labels.

    Args:
        graph: The graph to write
        target: Text stream to write into
        comment: Optional first header line (without the leading ``#``)
    """
    if comment:
        target.write(f"# {comment}\n")
    target.write(f"# nodes {graph.node_count} edges {graph.edge_count}\n")
    for u, v in graph.edges():
        target.write(f"{graph.labels[u]} {graph.labels[v]}\n")
