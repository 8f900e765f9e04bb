"""
Records produced by trials and ensembles.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Tuple

import numpy as np

Snapshot = Tuple[np.ndarray, np.ndarray]


@dataclass
class TrialRecord:
    """
    Everything observed in one trial of ``steps`` network draws.

    Row ``t - 1`` of ``draws`` and entry ``t - 1`` of ``spend`` and ``waste``
    belong to step t; ``susceptibility`` and ``exposure`` have an extra
    leading entry for time 0. ``waste`` holds per-step increments: curing
    given to nodes that drew red and so could not use it.
    """

    draws: np.ndarray
    spend: np.ndarray
    waste: np.ndarray
    susceptibility: np.ndarray
    exposure: np.ndarray
    snapshots: Dict[int, Snapshot] = field(default_factory=dict)
    allocations: Optional[np.ndarray] = None

    @property
    def steps(self) -> int:
        return int(self.draws.shape[0])

    @property
    def infection_rate(self) -> np.ndarray:
        """Node average of the draws at every step."""
        return self.draws.mean(axis=1)


@dataclass
class TrialSummary:
    """The per-step series of one trial that ensembles average over."""

    infection_rate: np.ndarray
    spend: np.ndarray
    waste: np.ndarray
    susceptibility: np.ndarray
    exposure: np.ndarray
    snapshots: Dict[int, Snapshot] = field(default_factory=dict)
    allocations: Optional[np.ndarray] = None

    @classmethod
    def from_record(cls, record: TrialRecord) -> "TrialSummary":
        return cls(
            infection_rate=record.infection_rate,
            spend=record.spend,
            waste=record.waste,
            susceptibility=record.susceptibility,
            exposure=record.exposure,
            snapshots=record.snapshots,
            allocations=record.allocations,
        )


@dataclass
class EnsembleResult:
    """
    Trial averages of one strategy case.

    ``infection_rate``, ``usage`` and ``waste`` cover steps 1..K (``waste`` is
    cumulative); ``susceptibility`` and ``exposure`` cover steps 0..K.
    Snapshots map a step to the trial-mean per-node (U, S).
    """

    label: str
    strategy: str
    trials: int
    steps: int
    rho: float
    budget: float
    infection_rate: np.ndarray
    infection_stderr: np.ndarray
    susceptibility: np.ndarray
    exposure: np.ndarray
    usage: np.ndarray
    waste: np.ndarray
    snapshots: Dict[int, Snapshot] = field(default_factory=dict)
    allocations: Optional[np.ndarray] = None
    parameters: Dict[str, Any] = field(default_factory=dict)

    @property
    def final_infection_rate(self) -> float:
        return float(self.infection_rate[-1])

    @property
    def total_waste(self) -> float:
        return float(self.waste[-1])

    @property
    def mean_usage(self) -> float:
        return float(self.usage.mean())
