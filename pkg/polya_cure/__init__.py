"""
Network Polya contagion and curing strategies.

Simulates the reinforcement contagion in which every node draws from the
union of its own and its neighbours' urns, and compares strategies for
distributing curing (black) balls under a per-step budget.

Basic usage:
    from polya_cure import generate_barabasi_albert, generate_ic, simulate_ensemble
    from polya_cure import CentralityStrategy
    graph = generate_barabasi_albert(100, 1, seed=7)
    ic = generate_ic(graph, seed=11)
    result = simulate_ensemble(
        graph, ic, CentralityStrategy(), ic.delta_r.sum(), 1000, 100, 0
    )
    print(result.final_infection_rate)
"""

__version__ = "0.1.0"

from .exceptions import ErrorCode, PolyaCureError
from .graph import (
    CentralityTable,
    Graph,
    closeness_centrality,
    generate_barabasi_albert,
    load_edge_list_file,
)
from .harness import (
    EnsembleResult,
    ExperimentSuite,
    generate_ic,
    load_config,
    run_ensemble,
    run_trial,
    simulate_ensemble,
)
from .strategy import (
    CentralityStrategy,
    CuringStrategy,
    GradientStrategy,
    SuperUrnSupermartingaleStrategy,
    UniformStrategy,
    UrnMartingaleStrategy,
    default_registry,
    exact_one_step_expectation,
)
from .urn import InitialCondition, NetworkState, init_state, step

__all__ = [
    "ErrorCode",
    "PolyaCureError",
    "Graph",
    "CentralityTable",
    "closeness_centrality",
    "generate_barabasi_albert",
    "load_edge_list_file",
    "InitialCondition",
    "NetworkState",
    "init_state",
    "step",
    "CuringStrategy",
    "UrnMartingaleStrategy",
    "SuperUrnSupermartingaleStrategy",
    "GradientStrategy",
    "CentralityStrategy",
    "UniformStrategy",
    "default_registry",
    "exact_one_step_expectation",
    "EnsembleResult",
    "ExperimentSuite",
    "generate_ic",
    "load_config",
    "run_trial",
    "run_ensemble",
    "simulate_ensemble",
]


def get_version() -> str:
    """Get the version of the polya-cure package."""
    return __version__
