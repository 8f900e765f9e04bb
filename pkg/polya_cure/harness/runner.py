"""
Trial and ensemble execution.

Seed splitting: trial ``t`` of a run with master seed ``m`` draws from
``numpy.random.default_rng(SeedSequence(entropy=m, spawn_key=(t,)))``. The
stream depends only on ``(m, t)``, so a trial sees the same variates whatever
strategy it runs and whichever worker executes it. Trial results are put back
in trial order before averaging, so ensembles are bitwise reproducible for
any worker count.
"""

import logging
import math
import multiprocessing as mp
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..exceptions import InvalidInputError, PolyaCureError, StrategyError
from ..graph.centrality import closeness_centrality
from ..graph.models import CentralityTable, Graph
from ..strategy.base import CuringStrategy, StrategyInput
from ..strategy.registry import default_registry
from ..urn.engine import init_state, step
from ..urn.models import InitialCondition
from .config import SUM_DELTA_R, SimConfig
from .initial import build_initial_condition
from .models import EnsembleResult, Snapshot, TrialRecord, TrialSummary

logger = logging.getLogger(__name__)

BudgetRule = Union[str, float]


def trial_seed(master_seed: int, trial: int) -> np.random.SeedSequence:
    """Seed sequence of trial ``trial`` under ``master_seed``."""
    return np.random.SeedSequence(entropy=master_seed, spawn_key=(trial,))


def resolve_budget(rule: BudgetRule, ic: InitialCondition) -> float:
    """
    Per-step budget B.

    ``"sum_delta_r"`` gives the total red addition of the first step.
    """
    if rule == SUM_DELTA_R:
        return float(ic.delta_r_at(1).sum())
    return float(rule)


def run_trial(
    graph: Graph,
    ic: InitialCondition,
    strategy: CuringStrategy,
    budget: float,
    steps: int,
    seed: Union[int, np.random.SeedSequence],
    centrality: Optional[CentralityTable] = None,
    snapshot_steps: Iterable[int] = (),
    check_invariants: bool = False,
    record_allocations: bool = False,
) -> TrialRecord:
    """
    Run one trial: at every step the strategy allocates, then the network draws.

    Args:
        graph: Network
        ic: Initial condition
        strategy: Curing strategy
        budget: Per-step budget B
        steps: Number of steps K
        seed: Seed of this trial's random stream
        centrality: Centrality table; computed when the strategy needs one
        snapshot_steps: Steps (0..K) at which per-node U and S are kept
        check_invariants: Verify super-urn caches after every step
        record_allocations: Keep the full (K, N) curing matrix

    Returns:
        TrialRecord of draws, spend, waste and network averages

    Raises:
        StrategyError: If the strategy fails; carries the step index
    """
    if strategy.needs_centrality and centrality is None:
        centrality = closeness_centrality(graph)

    rng = np.random.default_rng(seed)
    state = init_state(graph, ic)
    size = graph.node_count
    wanted = set(snapshot_steps)

    draws = np.zeros((steps, size), dtype=np.int8)
    spend = np.zeros(steps)
    waste = np.zeros(steps)
    susceptibility = np.zeros(steps + 1)
    exposure = np.zeros(steps + 1)
    allocations = np.zeros((steps, size)) if record_allocations else None
    snapshots: Dict[int, Snapshot] = {}

    susceptibility[0] = state.susceptibility
    exposure[0] = state.exposure
    if 0 in wanted:
        snapshots[0] = (state.u, state.s)

    for t in range(1, steps + 1):
        delta_r = ic.delta_r_at(t)
        inp = StrategyInput.from_state(state, delta_r, budget, centrality)
        try:
            allocation = strategy.allocate(inp)
        except StrategyError:
            raise
        except (PolyaCureError, ArithmeticError, ValueError) as e:
            raise StrategyError(
                f"strategy '{strategy.name}' failed at step {t}: {e}",
                strategy=strategy.name,
                step=t,
            ) from e

        outcome = step(state, delta_r, allocation.delta_b, rng, check_invariants)
        draws[t - 1] = outcome.z
        spend[t - 1] = allocation.spend
        waste[t - 1] = float(allocation.delta_b @ outcome.z)
        susceptibility[t] = state.susceptibility
        exposure[t] = state.exposure
        if allocations is not None:
            allocations[t - 1] = allocation.delta_b
        if t in wanted:
            snapshots[t] = (state.u, state.s)

    return TrialRecord(
        draws=draws,
        spend=spend,
        waste=waste,
        susceptibility=susceptibility,
        exposure=exposure,
        snapshots=snapshots,
        allocations=allocations,
    )


@dataclass(frozen=True)
class _TrialContext:
    """Everything a worker needs to run any trial of one ensemble."""

    graph: Graph
    ic: InitialCondition
    strategy: CuringStrategy
    budget: float
    steps: int
    master_seed: int
    centrality: Optional[CentralityTable]
    snapshot_steps: Tuple[int, ...]
    check_invariants: bool
    log_allocations: bool

    def run(self, trial: int) -> TrialSummary:
        record = run_trial(
            self.graph,
            self.ic,
            self.strategy,
            self.budget,
            self.steps,
            trial_seed(self.master_seed, trial),
            centrality=self.centrality,
            snapshot_steps=self.snapshot_steps,
            check_invariants=self.check_invariants,
            record_allocations=self.log_allocations and trial == 0,
        )
        return TrialSummary.from_record(record)


_WORKER_CONTEXT: Optional[_TrialContext] = None


def _init_worker(context: _TrialContext) -> None:
    global _WORKER_CONTEXT
    _WORKER_CONTEXT = context


def _run_chunk(trials: Sequence[int]) -> List[Tuple[int, TrialSummary]]:
    if _WORKER_CONTEXT is None:
        raise RuntimeError("worker context not initialised")
    return [(t, _WORKER_CONTEXT.run(t)) for t in trials]


def _chunks(trials: int, workers: int) -> List[range]:
    size = max(1, math.ceil(trials / (workers * 4)))
    starts = range(0, trials, size)
    return [range(start, min(start + size, trials)) for start in starts]


def _run_parallel(
    context: _TrialContext, trials: int, workers: int
) -> List[TrialSummary]:
    results: List[Optional[TrialSummary]] = [None] * trials
    ctx = mp.get_context("spawn")
    with ProcessPoolExecutor(
        max_workers=workers,
        mp_context=ctx,
        initializer=_init_worker,
        initargs=(context,),
    ) as ex:
        futures = [
            ex.submit(_run_chunk, tuple(chunk))
            for chunk in _chunks(trials, workers)
        ]
        for fut in as_completed(futures):
            for t, summary in fut.result():
                results[t] = summary
    return [r for r in results if r is not None]


def _mean(arrays: List[np.ndarray]) -> np.ndarray:
    return np.mean(np.stack(arrays), axis=0)


def aggregate(
    summaries: List[TrialSummary],
    label: str,
    strategy: CuringStrategy,
    rho: float,
    budget: float,
) -> EnsembleResult:
    """
    Average trial summaries given in trial order.

    The standard error of the infection rate is the sample standard
    deviation of the per-trial rates over the square root of the trial count
    (zero for a single trial).
    """
    trials = len(summaries)
    rates = np.stack([s.infection_rate for s in summaries])
    if trials > 1:
        stderr = rates.std(axis=0, ddof=1) / np.sqrt(trials)
    else:
        stderr = np.zeros(rates.shape[1])

    snapshots: Dict[int, Snapshot] = {}
    for snap_step in summaries[0].snapshots:
        snapshots[snap_step] = (
            _mean([s.snapshots[snap_step][0] for s in summaries]),
            _mean([s.snapshots[snap_step][1] for s in summaries]),
        )

    return EnsembleResult(
        label=label,
        strategy=strategy.name,
        trials=trials,
        steps=int(rates.shape[1]),
        rho=rho,
        budget=budget,
        infection_rate=rates.mean(axis=0),
        infection_stderr=stderr,
        susceptibility=_mean([s.susceptibility for s in summaries]),
        exposure=_mean([s.exposure for s in summaries]),
        usage=_mean([s.spend for s in summaries]),
        waste=np.cumsum(_mean([s.waste for s in summaries])),
        snapshots=snapshots,
        allocations=summaries[0].allocations,
        parameters=strategy.describe(),
    )


def simulate_ensemble(
    graph: Graph,
    ic: InitialCondition,
    strategy: CuringStrategy,
    budget: float,
    steps: int,
    trials: int,
    master_seed: int,
    *,
    label: Optional[str] = None,
    workers: int = 1,
    centrality: Optional[CentralityTable] = None,
    snapshot_steps: Optional[Iterable[int]] = None,
    check_invariants: bool = False,
    log_allocations: bool = False,
) -> EnsembleResult:
    """
    Run ``trials`` independent trials and average them.

    Args:
        graph: Network shared by all trials
        ic: Initial condition shared by all trials
        strategy: Curing strategy
        budget: Per-step budget B
        steps: Steps per trial K
        trials: Number of trials T
        master_seed: Seed the per-trial streams derive from
        label: Case label, defaults to the strategy id
        workers: Worker processes; 1 runs in-process
        centrality: Precomputed centrality table
        snapshot_steps: Steps of the per-node snapshots, default {0, K}
        check_invariants: Verify engine caches after every step
        log_allocations: Keep the curing matrix of trial 0

    Returns:
        EnsembleResult with trial-mean series
    """
    if trials < 1 or steps < 1:
        raise InvalidInputError(
            f"need trials >= 1 and steps >= 1 (got {trials}, {steps})"
        )
    if strategy.needs_centrality and centrality is None:
        centrality = closeness_centrality(graph)
    if snapshot_steps is None:
        snapshot_steps = (0, steps)
    context = _TrialContext(
        graph=graph,
        ic=ic,
        strategy=strategy,
        budget=budget,
        steps=steps,
        master_seed=master_seed,
        centrality=centrality,
        snapshot_steps=tuple(sorted(set(snapshot_steps))),
        check_invariants=check_invariants,
        log_allocations=log_allocations,
    )
    label = label or strategy.name
    workers = max(1, min(workers, trials))

    logger.info(
        f"Running case '{label}' ({strategy!r}): {trials} trials x {steps} steps "
        f"on {graph!r} with {workers} worker(s)"
    )
    started = time.perf_counter()
    if workers == 1:
        summaries = [context.run(t) for t in range(trials)]
    else:
        summaries = _run_parallel(context, trials, workers)
    elapsed = time.perf_counter() - started

    result = aggregate(summaries, label, strategy, ic.rho, budget)
    logger.info(
        f"Case '{label}' finished in {elapsed:.1f}s: "
        f"final infection rate {result.final_infection_rate:.4f}"
    )
    return result


def run_ensemble(
    config: SimConfig,
    graph: Optional[Graph] = None,
    ic: Optional[InitialCondition] = None,
    base_dir: Optional[Path] = None,
) -> EnsembleResult:
    """
    Run the ensemble described by ``config``.

    ``graph`` and ``ic`` may be passed in to share them between cases;
    otherwise they are built from the configuration.
    """
    if graph is None:
        graph = config.graph.load(base_dir)
    if ic is None:
        ic = build_initial_condition(config.initial_condition, graph, config.ic_seed)
    case = config.strategy
    strategy = default_registry.create(case.strategy, **case.strategy_params())
    return simulate_ensemble(
        graph,
        ic,
        strategy,
        resolve_budget(config.budget, ic),
        config.steps,
        config.trials,
        config.seed,
        label=case.case_label,
        workers=config.resolved_workers,
        snapshot_steps=config.resolved_snapshot_steps,
        check_invariants=config.check_invariants,
        log_allocations=config.log_allocations,
    )
