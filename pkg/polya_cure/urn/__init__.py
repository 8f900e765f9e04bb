"""
Network Polya contagion state machine and reference urn processes.
"""

from .classical import classical_draw, classical_proportion, simulate_classical_urns
from .engine import UniformSource, apply_draws, init_state, step, super_urn_proportion
from .models import ClassicalUrn, DrawOutcome, InitialCondition, NetworkState
from .oracle import (
    CuringRule,
    curing_at,
    draw_patterns,
    exact_infection_rate,
    joint_probability,
)
from .snapshot import snapshot_frame, state_snapshot, write_snapshot

__all__ = [
    "InitialCondition",
    "NetworkState",
    "DrawOutcome",
    "ClassicalUrn",
    "UniformSource",
    "init_state",
    "super_urn_proportion",
    "apply_draws",
    "step",
    "classical_proportion",
    "classical_draw",
    "simulate_classical_urns",
    "CuringRule",
    "curing_at",
    "draw_patterns",
    "joint_probability",
    "exact_infection_rate",
    "snapshot_frame",
    "state_snapshot",
    "write_snapshot",
]
