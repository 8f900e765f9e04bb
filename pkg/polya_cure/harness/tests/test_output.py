"""
Tests for suites and run artifacts.
"""

import json

import pandas as pd
import pytest

from ...exceptions import OutputError
from ..config import validate_config
from ..output import (
    INFECTION_COLUMNS,
    SUMMARY_COLUMNS,
    build_manifest,
    summary_frame,
    validate_manifest,
    write_artifacts,
)
from ..suite import ExperimentSuite

SUITE = {
    "seed": 21,
    "trials": 3,
    "steps": 5,
    "workers": 1,
    "snapshot_steps": [0, 2, 5],
    "graph": {"generator": "ba:12:1:seed=4"},
    "cases": [
        {"strategy": "i"},
        {"strategy": "ii", "strict": True},
        {"strategy": "iii", "iterations": 5},
        {"strategy": "iv"},
        {"strategy": "v", "label": "uniform"},
    ],
    "output": {"log_allocations": True},
}


@pytest.fixture(scope="module")
def suite_run():
    suite = ExperimentSuite.from_config(validate_config(SUITE))
    return suite, suite.run()


class TestExperimentSuite:
    """Test shared suite inputs."""

    def test_shared_inputs(self, suite_run):
        suite, results = suite_run
        assert suite.graph.node_count == 12
        assert suite.budget == float(suite.ic.delta_r.sum())
        assert suite.centrality is not None
        assert [r.label for r in results] == ["i", "ii", "iii", "iv", "uniform"]

    def test_centrality_only_when_needed(self):
        config = validate_config({**SUITE, "cases": [{"strategy": "v"}]})
        assert ExperimentSuite.from_config(config).centrality is None

    def test_cases_share_initial_state(self, suite_run):
        _, results = suite_run
        first = results[0].exposure[0]
        assert all(r.exposure[0] == first for r in results)

    def test_budgeted_cases_spend_budget(self, suite_run):
        suite, results = suite_run
        for result in results[2:]:
            assert result.usage == pytest.approx(suite.budget, rel=1e-9)


class TestArtifacts:
    """Test the written files."""

    def test_layout_and_headers(self, suite_run, tmp_path):
        suite, results = suite_run
        write_artifacts(suite, results, tmp_path)
        case = tmp_path / "uniform"
        for name in (
            "infection_rate.csv",
            "susceptibility.csv",
            "exposure.csv",
            "usage.csv",
            "waste.csv",
            "snapshot_0.csv",
            "snapshot_2.csv",
            "snapshot_5.csv",
            "allocations.csv",
        ):
            assert (case / name).is_file(), name

        infection = pd.read_csv(case / "infection_rate.csv")
        assert list(infection.columns) == INFECTION_COLUMNS
        assert infection["step"].tolist() == [1, 2, 3, 4, 5]
        exposure = pd.read_csv(case / "exposure.csv")
        assert exposure["step"].tolist() == [0, 1, 2, 3, 4, 5]
        snapshot = pd.read_csv(case / "snapshot_5.csv", dtype={"node_id": str})
        assert list(snapshot.columns) == ["node_id", "U", "S"]
        assert len(snapshot) == 12
        allocations = pd.read_csv(case / "allocations.csv")
        assert list(allocations.columns) == ["step", "node_id", "delta_b"]
        assert len(allocations) == 5 * 12

        summary = pd.read_csv(tmp_path / "summary.csv")
        assert list(summary.columns) == SUMMARY_COLUMNS
        assert summary["case"].tolist() == ["i", "ii", "iii", "iv", "uniform"]

    def test_manifest(self, suite_run, tmp_path):
        suite, results = suite_run
        write_artifacts(suite, results, tmp_path)
        manifest = json.loads((tmp_path / "manifest.json").read_text())
        assert manifest["tool"] == "polya-cure"
        assert manifest["master_seed"] == 21
        assert manifest["graph"]["content_hash"] == suite.graph.content_hash
        assert manifest["graph"]["edges"] == 11
        assert manifest["initial_condition"] == {"rule": "uniform-1-10", "seed": 21}
        assert [c["strategy"] for c in manifest["cases"]] == [
            "i",
            "ii",
            "iii",
            "iv",
            "v",
        ]
        assert manifest["cases"][1]["parameters"]["strict"] is True
        assert manifest["config"]["trials"] == 3

    def test_reruns_are_byte_identical(self, tmp_path):
        """Two runs of one configuration write identical CSVs."""
        outputs = []
        for name in ("first", "second"):
            suite = ExperimentSuite.from_config(validate_config(SUITE))
            directory = tmp_path / name
            write_artifacts(suite, suite.run(), directory)
            outputs.append(
                {
                    p.relative_to(directory): p.read_bytes()
                    for p in sorted(directory.rglob("*.csv"))
                }
            )
        assert outputs[0].keys() == outputs[1].keys()
        assert outputs[0] == outputs[1]

    def test_unwritable_directory(self, suite_run, tmp_path):
        suite, results = suite_run
        blocker = tmp_path / "file"
        blocker.write_text("not a directory")
        with pytest.raises(OutputError):
            write_artifacts(suite, results, blocker / "out")

    def test_summary_frame(self, suite_run):
        _, results = suite_run
        frame = summary_frame(results)
        assert frame["final_infection_rate"].between(0, 1).all()
        assert (frame["total_waste"] >= 0).all()


class TestManifestSchema:
    def test_valid_manifest_passes(self, suite_run):
        validate_manifest(build_manifest(*suite_run))

    def test_missing_field(self, suite_run):
        manifest = build_manifest(*suite_run)
        del manifest["seed_rule"]
        with pytest.raises(OutputError, match="seed_rule"):
            validate_manifest(manifest)

    def test_bad_hash(self, suite_run):
        manifest = build_manifest(*suite_run)
        manifest["graph"]["content_hash"] = "xyz"
        with pytest.raises(OutputError, match="graph/content_hash"):
            validate_manifest(manifest)
