"""
Experiment configuration.

A run is described by one TOML file holding the shared experiment settings
(graph, initial condition, trials, steps, budget, seed) and a list of
strategy ``[[cases]]``. The file is validated with pydantic; every failure
is reported with the dotted path of the offending field.
"""

import logging
import os
import sys
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Union

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    NonNegativeFloat,
    ValidationError,
    field_validator,
    model_validator,
)

from ..exceptions import ConfigurationError, GraphGenerationError
from ..graph.generator import GeneratorSpec
from ..graph.models import Graph
from ..graph.parser import load_edge_list_file
from ..strategy.registry import default_registry

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

logger = logging.getLogger(__name__)

SUM_DELTA_R = "sum_delta_r"
UNIFORM_1_10 = "uniform-1-10"
EXPLICIT = "explicit"
MAX_SEED = 2**64 - 1


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid")


class GraphSource(_Section):
    """Where the graph comes from: a BA generator spec or an edge-list file."""

    generator: Optional[str] = None
    path: Optional[Path] = None

    @field_validator("generator")
    @classmethod
    def _check_generator(cls, value: Optional[str]) -> Optional[str]:
        if value is not None:
            try:
                GeneratorSpec.parse(value)
            except GraphGenerationError as e:
                raise ValueError(e.args[0]) from None
        return value

    @model_validator(mode="after")
    def _exactly_one(self) -> "GraphSource":
        if (self.generator is None) == (self.path is None):
            raise ValueError("set exactly one of 'generator' or 'path'")
        return self

    def load(self, base_dir: Optional[Path] = None) -> Graph:
        """
        Build or read the graph.

        Relative paths resolve against ``base_dir`` (the config file's folder).

        Raises:
            ConfigurationError: If the edge-list file does not exist
        """
        if self.generator is not None:
            return GeneratorSpec.parse(self.generator).build()
        path = self.path
        if base_dir is not None and not path.is_absolute():
            path = base_dir / path
        if not path.is_file():
            raise ConfigurationError(f"graph file not found: {path}", "graph.path")
        return load_edge_list_file(path)

    def describe(self) -> str:
        return self.generator if self.generator is not None else str(self.path)


class InitialConditionConfig(_Section):
    """Initial ball counts: drawn from {1..10} or given per node."""

    rule: Literal["uniform-1-10", "explicit"] = UNIFORM_1_10
    seed: Optional[int] = Field(default=None, ge=0, le=MAX_SEED)
    red: Optional[List[float]] = None
    black: Optional[List[float]] = None
    delta_r: Optional[Union[List[float], List[List[float]]]] = None

    @model_validator(mode="after")
    def _explicit_vectors(self) -> "InitialConditionConfig":
        given = [self.red, self.black, self.delta_r]
        if self.rule == EXPLICIT and any(v is None for v in given):
            raise ValueError("rule 'explicit' needs red, black and delta_r")
        if self.rule == UNIFORM_1_10 and any(v is not None for v in given):
            raise ValueError("red, black and delta_r are only used with 'explicit'")
        return self


class StrategyConfig(_Section):
    """One curing strategy case and its parameters."""

    strategy: str
    label: Optional[str] = None
    strict: bool = False
    epsilon: NonNegativeFloat = 1e-6
    clamp: bool = False
    iterations: int = Field(default=50, ge=1)
    granularity: int = Field(default=100, ge=2)

    @field_validator("strategy")
    @classmethod
    def _known_strategy(cls, value: str) -> str:
        if not default_registry.is_strategy_supported(value):
            available = ", ".join(default_registry.list_strategies())
            raise ValueError(f"unknown strategy '{value}' (available: {available})")
        return value

    @field_validator("label")
    @classmethod
    def _safe_label(cls, value: Optional[str]) -> Optional[str]:
        if value is not None and (not value or "/" in value or value in (".", "..")):
            raise ValueError("label must be a non-empty directory name")
        return value

    @property
    def case_label(self) -> str:
        return self.label or self.strategy

    def strategy_params(self) -> Dict[str, Any]:
        return self.model_dump(exclude={"strategy", "label"})


class OutputConfig(_Section):
    directory: Path = Path("results")
    log_allocations: bool = False


class _RunSettings(_Section):
    seed: int = Field(default=0, ge=0, le=MAX_SEED)
    trials: int = Field(ge=1)
    steps: int = Field(ge=1)
    budget: Union[Literal["sum_delta_r"], NonNegativeFloat] = SUM_DELTA_R
    snapshot_steps: Optional[List[int]] = None
    workers: Optional[int] = Field(default=None, ge=1)
    check_invariants: bool = False
    graph: GraphSource
    initial_condition: InitialConditionConfig = Field(
        default_factory=InitialConditionConfig
    )

    @model_validator(mode="after")
    def _snapshots_in_range(self) -> "_RunSettings":
        for step in self.snapshot_steps or []:
            if not 0 <= step <= self.steps:
                raise ValueError(
                    f"snapshot step {step} outside [0, {self.steps}]"
                )
        return self

    @property
    def resolved_snapshot_steps(self) -> List[int]:
        """Requested snapshot steps, defaulting to the first and last."""
        if self.snapshot_steps is None:
            return sorted({0, self.steps})
        return sorted(set(self.snapshot_steps))

    @property
    def ic_seed(self) -> int:
        seed = self.initial_condition.seed
        return self.seed if seed is None else seed

    @property
    def resolved_workers(self) -> int:
        return self.workers or os.cpu_count() or 1


class SimConfig(_RunSettings):
    """Settings of a single-strategy ensemble run."""

    strategy: StrategyConfig
    log_allocations: bool = False


class SuiteConfig(_RunSettings):
    """A whole configuration file: shared settings plus strategy cases."""

    cases: List[StrategyConfig] = Field(min_length=1)
    output: OutputConfig = Field(default_factory=OutputConfig)

    @field_validator("cases")
    @classmethod
    def _unique_labels(cls, cases: List[StrategyConfig]) -> List[StrategyConfig]:
        labels = [case.case_label for case in cases]
        duplicates = sorted({label for label in labels if labels.count(label) > 1})
        if duplicates:
            raise ValueError(f"duplicate case labels: {', '.join(duplicates)}")
        return cases

    def case_configs(self) -> List[SimConfig]:
        """One SimConfig per case, sharing every other setting."""
        shared = self.model_dump(exclude={"cases", "output"})
        return [
            SimConfig(
                **shared,
                strategy=case,
                log_allocations=self.output.log_allocations,
            )
            for case in self.cases
        ]

    def with_overrides(
        self,
        seed: Optional[int] = None,
        workers: Optional[int] = None,
        directory: Optional[Path] = None,
    ) -> "SuiteConfig":
        """Copy with command-line overrides applied and re-validated."""
        data = self.model_dump()
        if seed is not None:
            data["seed"] = seed
        if workers is not None:
            data["workers"] = workers
        if directory is not None:
            data["output"]["directory"] = directory
        return validate_config(data)


def _format_errors(error: ValidationError) -> List[str]:
    messages = []
    for item in error.errors():
        location = ".".join(str(part) for part in item["loc"]) or "<root>"
        messages.append(f"{location}: {item['msg']}")
    return messages


def validate_config(data: Dict[str, Any]) -> SuiteConfig:
    """
    Validate a parsed configuration mapping.

    Raises:
        ConfigurationError: With one ``field: message`` entry per problem
    """
    try:
        return SuiteConfig.model_validate(data)
    except ValidationError as e:
        errors = _format_errors(e)
        raise ConfigurationError(
            f"invalid configuration: {'; '.join(errors)}",
            validation_errors=errors,
        ) from None


def load_config(path: Union[str, Path]) -> SuiteConfig:
    """
    Read and validate a TOML experiment file.

    Raises:
        ConfigurationError: If the file is missing, not TOML, or invalid
    """
    path = Path(path)
    try:
        with open(path, "rb") as f:
            data = tomllib.load(f)
    except FileNotFoundError:
        raise ConfigurationError(f"config file not found: {path}") from None
    except OSError as e:
        raise ConfigurationError(f"cannot read config file {path}: {e}") from None
    except tomllib.TOMLDecodeError as e:
        raise ConfigurationError(f"config file {path} is not valid TOML: {e}") from None
    config = validate_config(data)
    logger.info(f"Loaded configuration from {path} with {len(config.cases)} case(s)")
    return config
