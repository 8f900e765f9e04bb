"""
Property checks on small built-in fixtures.

Each check samples random reachable states or curing vectors and reports
``pass``, ``boundary`` (a strict inequality holds only with equality, as
when the supermartingale bound is used with ``epsilon = 0``) or ``fail``.
"""

import logging
from dataclasses import dataclass
from typing import Callable, List, Tuple, Union

import numpy as np

from .exceptions import PropertyCheckError
from .graph.generator import generate_barabasi_albert
from .graph.models import Graph
from .harness.runner import simulate_ensemble
from .optimizer.frank_wolfe import GradientFn, frank_wolfe
from .optimizer.objective import ExposureObjective, build_objective, evaluate, gradient
from .strategy.base import StrategyInput
from .strategy.expectation import first_moment_s, first_moment_u
from .strategy.strategies import (
    DEFAULT_EPSILON,
    UniformStrategy,
    strategy_i,
    strategy_ii,
    strategy_v,
    submartingale_bound_ii,
)
from .urn.engine import init_state, step
from .urn.models import InitialCondition, NetworkState
from .urn.oracle import exact_infection_rate

logger = logging.getLogger(__name__)

PASS = "pass"
BOUNDARY = "boundary"
FAIL = "fail"

EQUALITY_TOL = 1e-12
MARTINGALE_TOL = 1e-10
GRADIENT_RTOL = 1e-6
CONVEXITY_SLACK = 1e-12
GRID_TOL = 1e-4
MC_SIGMAS = 4.0


@dataclass(frozen=True)
class PropertyResult:
    """Outcome of one property check."""

    name: str
    status: str
    detail: str

    @property
    def passed(self) -> bool:
        return self.status != FAIL

    def to_dict(self) -> dict:
        return {"name": self.name, "status": self.status, "detail": self.detail}


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)], source=f"path:{n}")


def random_ic(rng: np.random.Generator, graph: Graph) -> InitialCondition:
    size = graph.node_count
    return InitialCondition(
        red=rng.integers(1, 11, size),
        black=rng.integers(1, 11, size),
        delta_r=rng.integers(1, 11, size),
    )


def random_state(
    rng: np.random.Generator, graph: Graph, max_steps: int = 20
) -> NetworkState:
    """A state reached from a random start after random draws and curing."""
    ic = random_ic(rng, graph)
    state = init_state(graph, ic)
    for _ in range(int(rng.integers(0, max_steps + 1))):
        step(state, ic.delta_r, rng.uniform(0, 10, graph.node_count), rng)
    return state


def random_graph(rng: np.random.Generator, n: int) -> Graph:
    m = int(rng.integers(1, 3))
    return generate_barabasi_albert(n, m, seed=int(rng.integers(2**32)))


def _classify(diff: np.ndarray, scale: np.ndarray) -> str:
    """Classify ``diff < 0`` per node as strict, equality or violated."""
    tol = EQUALITY_TOL * scale
    if np.any(diff > tol):
        return FAIL
    if np.any(diff >= -tol):
        return BOUNDARY
    return PASS


def _worst(statuses: List[str]) -> str:
    for status in (FAIL, BOUNDARY):
        if status in statuses:
            return status
    return PASS


def check_urn_martingale(rng: np.random.Generator, samples: int) -> PropertyResult:
    """Curing at the individual-urn bound holds U in place; off it U drifts."""
    worst = 0.0
    for _ in range(samples):
        state = random_state(rng, random_graph(rng, 10))
        delta_r = rng.uniform(0.5, 10, state.graph.node_count)
        inp = StrategyInput.from_state(state, delta_r, 0.0)
        bound = strategy_i(inp).delta_b
        u = state.u
        at = first_moment_u(state, delta_r, bound)
        above = first_moment_u(state, delta_r, bound * 1.001)
        below = first_moment_u(state, delta_r, bound * 0.999)
        worst = max(worst, float(np.max(np.abs(at - u))))
        if worst > MARTINGALE_TOL or np.any(above >= u) or np.any(below <= u):
            return PropertyResult("urn-martingale", FAIL, f"max |E[U]-U| = {worst:.3g}")
    return PropertyResult("urn-martingale", PASS, f"max |E[U]-U| = {worst:.3g}")


def check_super_urn_drift(
    rng: np.random.Generator, samples: int, epsilon: float
) -> List[PropertyResult]:
    """Super urns drift down above the max-odds bound and up below the min-odds one."""
    super_statuses, sub_statuses = [], []
    above_average, below_average = [], []
    for _ in range(samples):
        state = random_state(rng, random_graph(rng, 10))
        delta_r = rng.uniform(0.5, 10, state.graph.node_count)
        inp = StrategyInput.from_state(state, delta_r, 0.0)
        s = state.s

        upper = first_moment_s(state, delta_r, strategy_ii(inp, epsilon).delta_b)
        lower = first_moment_s(
            state, delta_r, submartingale_bound_ii(inp, 1.0 - epsilon).delta_b
        )
        super_statuses.append(_classify(upper - s, s))
        sub_statuses.append(_classify(s - lower, s))
        mean_s = np.array([s.mean()])
        above_average.append(_classify(np.array([upper.mean()]) - mean_s, mean_s))
        below_average.append(_classify(mean_s - np.array([lower.mean()]), mean_s))

    detail = f"{samples} random states, epsilon={epsilon:g}"
    return [
        PropertyResult("super-urn-supermartingale", _worst(super_statuses), detail),
        PropertyResult("super-urn-submartingale", _worst(sub_statuses), detail),
        PropertyResult("exposure-supermartingale", _worst(above_average), detail),
        PropertyResult("exposure-submartingale", _worst(below_average), detail),
    ]


def _random_objective(
    rng: np.random.Generator, n: int
) -> Tuple[ExposureObjective, float]:
    state = random_state(rng, random_graph(rng, n))
    delta_r = rng.uniform(0.5, 10, n)
    obj = build_objective(state, delta_r)
    return obj, float(delta_r.sum())


def _simplex_point(rng: np.random.Generator, n: int, budget: float) -> np.ndarray:
    return rng.dirichlet(np.ones(n)) * budget


def check_gradient(
    rng: np.random.Generator, samples: int, gradient_fn: GradientFn = gradient
) -> List[PropertyResult]:
    """Analytic gradient against central differences, and its sign."""
    worst_error = 0.0
    largest_partial = -np.inf
    for _ in range(samples):
        obj, budget = _random_objective(rng, 20)
        x = _simplex_point(rng, 20, budget)
        h = 1e-5 * budget
        analytic = gradient_fn(obj, x)
        numeric = np.empty(20)
        for j in range(20):
            e = np.zeros(20)
            e[j] = h
            numeric[j] = (evaluate(obj, x + e) - evaluate(obj, x - e)) / (2 * h)
        error = float(np.max(np.abs(analytic - numeric)) / np.max(np.abs(numeric)))
        worst_error = max(worst_error, error)
        largest_partial = max(largest_partial, float(analytic.max()))

    fd_status = PASS if worst_error <= GRADIENT_RTOL else FAIL
    sign_status = PASS if largest_partial <= 0 else FAIL
    return [
        PropertyResult(
            "gradient-finite-difference",
            fd_status,
            f"max relative error {worst_error:.3g}",
        ),
        PropertyResult(
            "gradient-nonpositive",
            sign_status,
            f"largest partial {largest_partial:.3g}",
        ),
    ]


def check_convexity(rng: np.random.Generator, samples: int) -> PropertyResult:
    worst = -np.inf
    for _ in range(samples):
        obj, budget = _random_objective(rng, 20)
        x = _simplex_point(rng, 20, budget)
        y = _simplex_point(rng, 20, budget)
        lam = float(rng.uniform())
        gap = evaluate(obj, lam * x + (1 - lam) * y) - (
            lam * evaluate(obj, x) + (1 - lam) * evaluate(obj, y)
        )
        worst = max(worst, gap)
    status = PASS if worst <= CONVEXITY_SLACK else FAIL
    return PropertyResult("convexity", status, f"largest chord gap {worst:.3g}")


def check_objective_oracle(rng: np.random.Generator, samples: int) -> PropertyResult:
    """The objective is the node average of first-moment super-urn ratios."""
    worst = 0.0
    for _ in range(samples):
        state = random_state(rng, path_graph(3))
        delta_r = rng.uniform(0.5, 10, 3)
        x = _simplex_point(rng, 3, 3.0)
        obj = build_objective(state, delta_r)
        expected = float(first_moment_s(state, delta_r, x).mean())
        worst = max(worst, abs(evaluate(obj, x) - expected))
    status = PASS if worst <= EQUALITY_TOL else FAIL
    return PropertyResult("objective-oracle", status, f"max difference {worst:.3g}")


def grid_minimum(obj: ExposureObjective, budget: float, divisions: int) -> float:
    """Smallest objective over a uniform grid on the 3-node simplex."""
    best = np.inf
    for i in range(divisions + 1):
        for j in range(divisions + 1 - i):
            x = np.array([i, j, divisions - i - j], dtype=np.float64)
            best = min(best, evaluate(obj, x * budget / divisions))
    return best


def check_frank_wolfe(
    rng: np.random.Generator, samples: int, gradient_fn: GradientFn = gradient
) -> PropertyResult:
    worst = -np.inf
    monotone = True
    for _ in range(samples):
        state = random_state(rng, path_graph(3))
        obj = build_objective(state, rng.uniform(0.5, 10, 3))
        point = frank_wolfe(
            obj, 3.0, iterations=200, granularity=100, gradient_fn=gradient_fn
        )
        monotone &= bool(np.all(np.diff(point.history) <= 0))
        worst = max(worst, evaluate(obj, point.x) - grid_minimum(obj, 3.0, 200))
    status = PASS if monotone and worst <= GRID_TOL else FAIL
    return PropertyResult(
        "frank-wolfe-optimality",
        status,
        f"worst excess over grid minimum {worst:.3g}, monotone={monotone}",
    )


def check_estimator(seed: int, trials: int) -> PropertyResult:
    """Monte-Carlo infection rate against exhaustive enumeration on K2."""
    graph = Graph.from_edges(2, [(0, 1)], source="K2")
    ic = InitialCondition(red=[1, 3], black=[2, 1], delta_r=[2, 1])
    budget = float(ic.delta_r.sum())
    steps = 3
    delta_b = strategy_v(
        StrategyInput.from_state(init_state(graph, ic), ic.delta_r, budget)
    ).delta_b
    exact = exact_infection_rate(graph, ic, steps, delta_b)
    result = simulate_ensemble(
        graph, ic, UniformStrategy(), budget, steps, trials, seed
    )
    stderr = np.maximum(result.infection_stderr, np.finfo(np.float64).tiny)
    z = np.abs(result.infection_rate - exact) / stderr
    status = PASS if np.all(z <= MC_SIGMAS) else FAIL
    return PropertyResult(
        "estimator-consistency",
        status,
        f"{trials} trials, largest deviation {z.max():.2f} standard errors",
    )


def run_property_checks(
    epsilon: float = DEFAULT_EPSILON,
    seed: int = 0,
    samples: int = 50,
    mc_trials: int = 20000,
    gradient_fn: GradientFn = gradient,
    fail_fast: bool = False,
) -> List[PropertyResult]:
    """
    Run every property check.

    Args:
        epsilon: Strictness margin for the super-urn bounds; 0 yields boundary
        seed: Seed for the sampled fixtures
        samples: Random states or points per check
        mc_trials: Trials for the Monte-Carlo estimator check
        gradient_fn: Gradient under test
        fail_fast: Stop at the first failed property

    Returns:
        One PropertyResult per property

    Raises:
        PropertyCheckError: On the first failure when ``fail_fast`` is set
    """
    rng = np.random.default_rng(seed)
    checks: List[Callable[[], Union[PropertyResult, List[PropertyResult]]]] = [
        lambda: check_urn_martingale(rng, samples),
        lambda: check_super_urn_drift(rng, samples, epsilon),
        lambda: check_gradient(rng, samples, gradient_fn),
        lambda: check_convexity(rng, samples),
        lambda: check_objective_oracle(rng, samples),
        lambda: check_frank_wolfe(rng, max(1, samples // 10), gradient_fn),
        lambda: check_estimator(seed, mc_trials),
    ]
    results: List[PropertyResult] = []
    for check in checks:
        outcome = check()
        batch = outcome if isinstance(outcome, list) else [outcome]
        for result in batch:
            logger.info(f"{result.name}: {result.status} ({result.detail})")
            if fail_fast and result.status == FAIL:
                raise PropertyCheckError(
                    f"property {result.name} failed: {result.detail}", result.name
                )
        results.extend(batch)
    return results
