"""
Strategy comparison suites.

Every case of a suite runs on the same graph, the same initial condition,
the same budget and the same per-trial seeds, so cases differ only in how
they cure.
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional

from ..graph.centrality import closeness_centrality
from ..graph.models import CentralityTable, Graph
from ..strategy.registry import default_registry
from ..urn.models import InitialCondition
from .config import SuiteConfig
from .initial import build_initial_condition
from .models import EnsembleResult
from .runner import resolve_budget, simulate_ensemble

logger = logging.getLogger(__name__)


@dataclass
class ExperimentSuite:
    """Shared graph, initial condition and budget plus the cases to compare."""

    config: SuiteConfig
    graph: Graph
    ic: InitialCondition
    budget: float
    centrality: Optional[CentralityTable] = None

    @classmethod
    def from_config(
        cls, config: SuiteConfig, base_dir: Optional[Path] = None
    ) -> "ExperimentSuite":
        """
        Build the shared inputs of a suite.

        Raises:
            ConfigurationError: If the graph file is missing
            GraphError: If the graph cannot be parsed
            InitialConditionError: If explicit vectors do not fit the graph
        """
        graph = config.graph.load(base_dir)
        ic = build_initial_condition(config.initial_condition, graph, config.ic_seed)
        budget = resolve_budget(config.budget, ic)
        centrality = None
        if any(
            default_registry.get_strategy_class(case.strategy).needs_centrality
            for case in config.cases
        ):
            centrality = closeness_centrality(graph)
        logger.info(
            f"Suite on {graph!r}: rho={ic.rho:.4f}, budget={budget:g}, "
            f"{len(config.cases)} case(s)"
        )
        return cls(config, graph, ic, budget, centrality)

    def run(self) -> List[EnsembleResult]:
        """Run every case in configuration order."""
        results = []
        for case in self.config.cases:
            strategy = default_registry.create(case.strategy, **case.strategy_params())
            results.append(
                simulate_ensemble(
                    self.graph,
                    self.ic,
                    strategy,
                    self.budget,
                    self.config.steps,
                    self.config.trials,
                    self.config.seed,
                    label=case.case_label,
                    workers=self.config.resolved_workers,
                    centrality=self.centrality,
                    snapshot_steps=self.config.resolved_snapshot_steps,
                    check_invariants=self.config.check_invariants,
                    log_allocations=self.config.output.log_allocations,
                )
            )
        return results
