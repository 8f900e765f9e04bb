"""
Experiment harness: configuration, trials, ensembles and artifacts.
"""

from .config import (
    GraphSource,
    InitialConditionConfig,
    OutputConfig,
    SimConfig,
    StrategyConfig,
    SuiteConfig,
    load_config,
    validate_config,
)
from .initial import build_initial_condition, generate_ic
from .models import EnsembleResult, TrialRecord, TrialSummary
from .output import build_manifest, validate_manifest, write_artifacts, write_case
from .runner import (
    aggregate,
    resolve_budget,
    run_ensemble,
    run_trial,
    simulate_ensemble,
    trial_seed,
)
from .suite import ExperimentSuite

__all__ = [
    "GraphSource",
    "InitialConditionConfig",
    "OutputConfig",
    "SimConfig",
    "StrategyConfig",
    "SuiteConfig",
    "load_config",
    "validate_config",
    "generate_ic",
    "build_initial_condition",
    "TrialRecord",
    "TrialSummary",
    "EnsembleResult",
    "trial_seed",
    "resolve_budget",
    "run_trial",
    "aggregate",
    "simulate_ensemble",
    "run_ensemble",
    "ExperimentSuite",
    "write_case",
    "write_artifacts",
    "build_manifest",
    "validate_manifest",
]
