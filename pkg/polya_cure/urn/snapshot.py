"""
Per-node state dumps.
"""

from pathlib import Path
from typing import Union

import numpy as np
import pandas as pd

from .models import NetworkState

SNAPSHOT_COLUMNS = ["node_id", "U", "S"]


def snapshot_frame(labels, u: np.ndarray, s: np.ndarray) -> pd.DataFrame:
    """Frame with one row per node, in node-id order."""
    return pd.DataFrame(
        {"node_id": list(labels), "U": np.asarray(u), "S": np.asarray(s)},
        columns=SNAPSHOT_COLUMNS,
    )


def state_snapshot(state: NetworkState) -> pd.DataFrame:
    """Snapshot of U and S for every node of ``state``."""
    return snapshot_frame(state.graph.labels, state.u, state.s)


def write_snapshot(frame: pd.DataFrame, path: Union[str, Path]) -> None:
    frame.to_csv(path, index=False, float_format="%.17g")
