"""
Graph representation, edge-list I/O, generation and centrality.
"""

from .centrality import closeness_centrality, hop_distances
from .generator import GeneratorSpec, generate_barabasi_albert
from .models import CentralityTable, Graph
from .parser import load_edge_list, load_edge_list_file, write_edge_list

__all__ = [
    "Graph",
    "CentralityTable",
    "load_edge_list",
    "load_edge_list_file",
    "write_edge_list",
    "generate_barabasi_albert",
    "GeneratorSpec",
    "closeness_centrality",
    "hop_distances",
]
