"""
Run artifacts: metric CSVs, per-node snapshots, a summary table and a JSON
manifest.

Column names and order are fixed. Floats are written with 17 significant
digits, so two runs of the same configuration produce identical files.
"""

import json
import logging
import os
from pathlib import Path
from typing import Any, Dict, List, Sequence

import jsonschema
import numpy as np
import pandas as pd

from ..exceptions import OutputError
from ..urn.snapshot import snapshot_frame, write_snapshot
from .models import EnsembleResult
from .suite import ExperimentSuite

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.17g"
SEED_RULE = "numpy.random.SeedSequence(entropy=master_seed, spawn_key=(trial,))"

SERIES_COLUMNS = ["step", "value"]
INFECTION_COLUMNS = ["step", "value", "stderr"]
ALLOCATION_COLUMNS = ["step", "node_id", "delta_b"]
SUMMARY_COLUMNS = [
    "case",
    "strategy",
    "final_infection_rate",
    "total_waste",
    "mean_usage",
    "rho",
]

_SCHEMA_NAME = "run-manifest-schema.json"
_SCHEMA_PATHS = [
    Path(__file__).resolve().parents[2] / "docs" / "spec" / _SCHEMA_NAME,
    Path("docs") / "spec" / _SCHEMA_NAME,
]


def _get_schema() -> Dict[str, Any]:
    """
    Load the run manifest schema.

    Falls back to an embedded schema with the required top-level fields when
    the documented schema file is not shipped alongside the package.
    """
    for path in _SCHEMA_PATHS:
        if path.is_file():
            try:
                with open(path, "r", encoding="utf-8") as f:
                    return json.load(f)
            except (json.JSONDecodeError, OSError):
                continue
    return {
        "$schema": "http://json-schema.org/draft-07/schema#",
        "title": "Run Manifest Schema",
        "type": "object",
        "required": ["tool", "version", "master_seed", "graph", "cases"],
        "properties": {
            "master_seed": {"type": "integer", "minimum": 0},
            "cases": {"type": "array", "minItems": 1},
        },
    }


def validate_manifest(manifest: Dict[str, Any]) -> None:
    """
    Check a manifest against the run manifest schema.

    Raises:
        OutputError: If the manifest does not conform
    """
    try:
        jsonschema.validate(manifest, _get_schema())
    except jsonschema.ValidationError as e:
        location = "/".join(str(p) for p in e.absolute_path) or "<root>"
        raise OutputError(f"manifest invalid at {location}: {e.message}") from None


def _to_csv(frame: pd.DataFrame, path: Path) -> Path:
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT)
    return path


def _series(values: np.ndarray, first_step: int) -> pd.DataFrame:
    steps = np.arange(first_step, first_step + len(values))
    return pd.DataFrame({"step": steps, "value": values}, columns=SERIES_COLUMNS)


def write_case(
    result: EnsembleResult, directory: Path, labels: Sequence[str]
) -> List[Path]:
    """
    Write the CSVs of one case into ``directory``.

    Returns:
        The written paths
    """
    directory.mkdir(parents=True, exist_ok=True)
    written = []

    infection = pd.DataFrame(
        {
            "step": np.arange(1, result.steps + 1),
            "value": result.infection_rate,
            "stderr": result.infection_stderr,
        },
        columns=INFECTION_COLUMNS,
    )
    written.append(_to_csv(infection, directory / "infection_rate.csv"))
    written.append(
        _to_csv(_series(result.susceptibility, 0), directory / "susceptibility.csv")
    )
    written.append(_to_csv(_series(result.exposure, 0), directory / "exposure.csv"))
    written.append(_to_csv(_series(result.usage, 1), directory / "usage.csv"))
    written.append(_to_csv(_series(result.waste, 1), directory / "waste.csv"))

    for snap_step, (u, s) in sorted(result.snapshots.items()):
        path = directory / f"snapshot_{snap_step}.csv"
        write_snapshot(snapshot_frame(labels, u, s), path)
        written.append(path)

    if result.allocations is not None:
        steps, size = result.allocations.shape
        allocations = pd.DataFrame(
            {
                "step": np.repeat(np.arange(1, steps + 1), size),
                "node_id": np.tile(np.asarray(labels), steps),
                "delta_b": result.allocations.ravel(),
            },
            columns=ALLOCATION_COLUMNS,
        )
        written.append(_to_csv(allocations, directory / "allocations.csv"))
    return written


def summary_frame(results: Sequence[EnsembleResult]) -> pd.DataFrame:
    """One row per case: final infection rate, total waste, mean usage, rho."""
    rows = [
        {
            "case": r.label,
            "strategy": r.strategy,
            "final_infection_rate": r.final_infection_rate,
            "total_waste": r.total_waste,
            "mean_usage": r.mean_usage,
            "rho": r.rho,
        }
        for r in results
    ]
    return pd.DataFrame(rows, columns=SUMMARY_COLUMNS)


def build_manifest(
    suite: ExperimentSuite, results: Sequence[EnsembleResult]
) -> Dict[str, Any]:
    """Machine-readable description of a run and how to reproduce it."""
    from .. import __version__

    config = suite.config
    return {
        "tool": "polya-cure",
        "version": __version__,
        "master_seed": config.seed,
        "seed_rule": SEED_RULE,
        "budget": suite.budget,
        "rho": suite.ic.rho,
        "graph": {
            "source": suite.graph.source or config.graph.describe(),
            "nodes": suite.graph.node_count,
            "edges": suite.graph.edge_count,
            "content_hash": suite.graph.content_hash,
        },
        "initial_condition": {
            "rule": config.initial_condition.rule,
            "seed": config.ic_seed,
        },
        "config": config.model_dump(mode="json"),
        "cases": [
            {
                "label": r.label,
                "strategy": r.strategy,
                "parameters": r.parameters,
                "trials": r.trials,
                "steps": r.steps,
                "directory": r.label,
                "final_infection_rate": r.final_infection_rate,
                "total_waste": r.total_waste,
                "mean_usage": r.mean_usage,
            }
            for r in results
        ],
    }


def write_artifacts(
    suite: ExperimentSuite, results: Sequence[EnsembleResult], directory: Path
) -> List[Path]:
    """
    Write every artifact of a suite run under ``directory``.

    Raises:
        OutputError: If the directory is not writable or the manifest is invalid
    """
    directory = Path(directory)
    try:
        directory.mkdir(parents=True, exist_ok=True)
        if not os.access(directory, os.W_OK):
            raise OutputError(
                f"output directory not writable: {directory}", str(directory)
            )
        written = []
        for result in results:
            written.extend(
                write_case(result, directory / result.label, suite.graph.labels)
            )
        written.append(_to_csv(summary_frame(results), directory / "summary.csv"))

        manifest = build_manifest(suite, results)
        validate_manifest(manifest)
        manifest_path = directory / "manifest.json"
        with open(manifest_path, "w", encoding="utf-8") as f:
            json.dump(manifest, f, indent=2, sort_keys=True)
            f.write("\n")
        written.append(manifest_path)
    except OSError as e:
        raise OutputError(
            f"cannot write artifacts to {directory}: {e}", str(directory)
        ) from e

    logger.info(f"Wrote {len(written)} artifact(s) to {directory}")
    return written
