"""Seeded ensemble sampling and trial aggregation.

Reproducibility contract
------------------------
Trials are grouped into fixed blocks of ``BLOCK_TRIALS``.  Each block draws
from its own counter-based Philox stream, keyed by
(seed, case, strategy, N, block index, branch), so every phase matrix is a
pure function of the plan.  Blocks may be computed by any number of worker
threads in any order; partial sums are reduced in block order, which makes
aggregates (and therefore CSV output) bit-identical regardless of
parallelism.  The block size is a constant of the format: changing it
changes the streams.

Per trial, the fully random branch draws its N phases from [0, 2*pi) and
the narrow branch (case b) from [-pi/M, pi/M]; each branch uses its own
substream.  The same-phase branch needs no draws: its trial error term is
independent of the common phase.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import discrimination as disc
from .phases import PhaseConfig
from .protocols import (
    BACKEND_COMPACT,
    BACKEND_DENSE,
    ScenarioSpec,
    project_local,
    project_nonlocal,
    run_local_protocol,
    run_nonlocal_protocol,
)

RNG_ALGORITHM = "philox"
BLOCK_TRIALS = 4096

BACKEND_CLOSED_FORM = "closed-form"
BACKEND_SIM_COMPACT = "sim-compact"
BACKEND_SIM_DENSE = "sim-dense"
BACKENDS = (BACKEND_CLOSED_FORM, BACKEND_SIM_COMPACT, BACKEND_SIM_DENSE)

_MAX_SEED = 2**64 - 1
_CASE_KEYS = {"a": 0, "b": 1}
_STRATEGY_KEYS = {"local": 0, "nonlocal": 1}
_BRANCH_DIFFERENT = 0
_BRANCH_SIMILAR = 1

THREADS_ENV_VAR = "QSN_THREADS"


@dataclass(frozen=True)
class SamplingPlan:
    """One sweep: which case/strategy, which N values, how many trials."""

    case: str
    strategy: str
    n_values: tuple[int, ...]
    trials: int
    seed: int
    m: int | None = None
    t: float = 1.0

    def __post_init__(self):
        if self.case not in _CASE_KEYS:
            raise ValueError(f"unknown case {self.case!r}")
        if self.strategy not in ("local", "nonlocal", "both"):
            raise ValueError(f"unknown strategy {self.strategy!r}")
        n_values = tuple(int(n) for n in self.n_values)
        if not n_values:
            raise ValueError("n_values must be non-empty")
        if any(n < 1 for n in n_values):
            raise ValueError("all n_values must be >= 1")
        if self.strategy in ("local", "both") and any(n % 2 for n in n_values):
            raise ValueError("the sequential strategy requires even n_values")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not 0 <= self.seed <= _MAX_SEED:
            raise ValueError("seed must fit in an unsigned 64-bit integer")
        if self.case == "b":
            if self.m is None or self.m < 2:
                raise ValueError("case b requires m >= 2")
        if not np.isfinite(self.t):
            raise ValueError("t must be finite")
        object.__setattr__(self, "n_values", n_values)

    @property
    def strategies(self) -> tuple[str, ...]:
        return ("local", "nonlocal") if self.strategy == "both" else (self.strategy,)


@dataclass(frozen=True)
class TrialAggregate:
    """Monte Carlo summary of one (case, strategy, N) cell.

    ``std_error`` is the unbiased sample standard deviation of the per-trial
    error probabilities divided by sqrt(trials) (0.0 for a single trial).
    """

    case: str
    strategy: str
    n: int
    trials: int
    mean_perr: float
    std_error: float
    analytic_perr: float
    analytic_is_approximate: bool


def _stream(seed: int, case: str, strategy: str, n: int, block: int, branch: int):
    ss = np.random.SeedSequence(
        entropy=seed,
        spawn_key=(_CASE_KEYS[case], _STRATEGY_KEYS[strategy], n, block, branch),
    )
    return np.random.Generator(np.random.Philox(ss))


def sample_uniform_full(num_modes: int, rng: np.random.Generator, t: float = 1.0) -> PhaseConfig:
    """N i.i.d. per-unit-time phases from [0, 2*pi), scaled by t."""
    if num_modes < 1:
        raise ValueError("num_modes must be >= 1")
    return PhaseConfig(rng.uniform(0.0, 2.0 * np.pi, num_modes) * t, t)


def sample_uniform_narrow(
    num_modes: int, m: int, rng: np.random.Generator, t: float = 1.0
) -> PhaseConfig:
    """N i.i.d. per-unit-time phases from [-pi/m, pi/m], m >= 2, scaled by t."""
    if num_modes < 1:
        raise ValueError("num_modes must be >= 1")
    if m < 2:
        raise ValueError("m must be >= 2")
    bound = np.pi / m
    return PhaseConfig(rng.uniform(-bound, bound, num_modes) * t, t)


def sample_scenario(
    scenario: ScenarioSpec, num_modes: int, rng: np.random.Generator, t: float = 1.0
) -> PhaseConfig:
    """Draw one plate configuration for the given ensemble."""
    if scenario.kind == "same":
        return PhaseConfig.constant(scenario.theta, num_modes, t)
    if scenario.kind == "different-uniform":
        return sample_uniform_full(num_modes, rng, t)
    return sample_uniform_narrow(num_modes, scenario.m, rng, t)


def trial_error_probability(
    case: str,
    strategy: str,
    phases_different: PhaseConfig,
    phases_similar: PhaseConfig | None = None,
    backend: str = BACKEND_CLOSED_FORM,
    priors: tuple[float, float] = (0.5, 0.5),
) -> float:
    """Error probability of a single trial, via any of the three paths.

    ``closed-form`` evaluates the analytic per-trial expressions;
    ``sim-compact`` and ``sim-dense`` run both hypothesis branches through
    the actual circuits and combine the projector outcomes with the priors.
    All three agree to 1e-12 (see the self-check suite).
    """
    if backend not in BACKENDS:
        raise ValueError(f"unknown backend {backend!r}; expected one of {BACKENDS}")
    if case not in _CASE_KEYS:
        raise ValueError(f"unknown case {case!r}")
    if strategy not in _STRATEGY_KEYS:
        raise ValueError(f"unknown strategy {strategy!r}")
    if case == "b" and phases_similar is None:
        raise ValueError("case b needs the narrow-branch phases")

    if backend == BACKEND_CLOSED_FORM:
        if strategy == "local":
            if case == "a":
                return disc.perr_local_a(phases_different, priors)
            return disc.perr_local_b(phases_similar, phases_different, priors)
        if case == "a":
            return disc.perr_nonlocal_a(phases_different, priors)
        return disc.perr_nonlocal_b(phases_similar, phases_different, priors)

    sim_backend = BACKEND_COMPACT if backend == BACKEND_SIM_COMPACT else BACKEND_DENSE
    n = phases_different.num_modes
    if case == "a":
        # The error term of the same-phase branch is exactly independent of
        # the common phase, so interrogate the zero-phase representative.
        phases_first = PhaseConfig.constant(0.0, n, phases_different.interaction_time)
    else:
        phases_first = phases_similar
    if strategy == "local":
        p_first, _ = project_local(run_local_protocol(n, phases_first, sim_backend))
        _, p_second = project_local(run_local_protocol(n, phases_different, sim_backend))
    else:
        p_first, _ = project_nonlocal(run_nonlocal_protocol(n, phases_first, backend=sim_backend))
        _, p_second = project_nonlocal(
            run_nonlocal_protocol(n, phases_different, backend=sim_backend)
        )
    return 1.0 - priors[0] * p_first - priors[1] * p_second


def _alternating_signs(n: int) -> np.ndarray:
    signs = np.ones(n)
    signs[1::2] = -1.0
    return signs


def _mean_phasor_sq(thetas: np.ndarray) -> np.ndarray:
    """Row-wise |mean_j e^{i theta_j}|^2."""
    return np.cos(thetas).mean(axis=1) ** 2 + np.sin(thetas).mean(axis=1) ** 2


def _perr_rows_closed_form(
    case: str, strategy: str, thetas_d: np.ndarray, thetas_s: np.ndarray | None
) -> np.ndarray:
    if strategy == "local":
        signs = _alternating_signs(thetas_d.shape[1])
        c_d = np.cos(thetas_d @ signs / 2.0) ** 2
        if case == "a":
            return 0.5 * c_d
        c_s = np.cos(thetas_s @ signs / 2.0) ** 2
        return 0.5 * (1.0 - c_s + c_d)
    w_d = _mean_phasor_sq(thetas_d)
    if case == "a":
        return 0.5 * w_d
    w_s = _mean_phasor_sq(thetas_s)
    return 0.5 * (1.0 - w_s + w_d)


def _perr_rows_sim(
    case: str,
    strategy: str,
    thetas_d: np.ndarray,
    thetas_s: np.ndarray | None,
    t: float,
    backend: str,
) -> np.ndarray:
    out = np.empty(thetas_d.shape[0])
    for i in range(thetas_d.shape[0]):
        phases_d = PhaseConfig(thetas_d[i], t)
        phases_s = PhaseConfig(thetas_s[i], t) if thetas_s is not None else None
        out[i] = trial_error_probability(case, strategy, phases_d, phases_s, backend)
    return out


def _block_partials(plan: SamplingPlan, strategy: str, n: int, block: int, backend: str):
    start = block * BLOCK_TRIALS
    count = min(BLOCK_TRIALS, plan.trials - start)
    rng_d = _stream(plan.seed, plan.case, strategy, n, block, _BRANCH_DIFFERENT)
    thetas_d = rng_d.uniform(0.0, 2.0 * np.pi, (count, n)) * plan.t
    thetas_s = None
    if plan.case == "b":
        rng_s = _stream(plan.seed, plan.case, strategy, n, block, _BRANCH_SIMILAR)
        bound = np.pi / plan.m
        thetas_s = rng_s.uniform(-bound, bound, (count, n)) * plan.t
    if backend == BACKEND_CLOSED_FORM:
        perr = _perr_rows_closed_form(plan.case, strategy, thetas_d, thetas_s)
    else:
        perr = _perr_rows_sim(plan.case, strategy, thetas_d, thetas_s, plan.t, backend)
    return float(perr.sum()), float((perr * perr).sum())


def _resolve_workers(workers: int | None) -> int:
    if workers is None:
        env = os.environ.get(THREADS_ENV_VAR)
        if env is not None:
            workers = int(env)
        else:
            workers = min(4, os.cpu_count() or 1)
    if workers < 1:
        raise ValueError("workers must be >= 1")
    return workers


def _run_cell(plan: SamplingPlan, strategy: str, n: int, backend: str, workers: int):
    nblocks = math.ceil(plan.trials / BLOCK_TRIALS)
    blocks = range(nblocks)
    if workers > 1 and nblocks > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            partials = list(
                pool.map(lambda b: _block_partials(plan, strategy, n, b, backend), blocks)
            )
    else:
        partials = [_block_partials(plan, strategy, n, b, backend) for b in blocks]
    total = 0.0
    total_sq = 0.0
    for s, s2 in partials:  # fixed block order keeps the reduction bit-exact
        total += s
        total_sq += s2
    mean = total / plan.trials
    if plan.trials > 1:
        var = max(total_sq - total * total / plan.trials, 0.0) / (plan.trials - 1)
    else:
        var = 0.0
    return mean, math.sqrt(var / plan.trials)


def run_plan(
    plan: SamplingPlan, backend: str = BACKEND_CLOSED_FORM, workers: int | None = None
) -> list[TrialAggregate]:
    """Execute the sweep and return one aggregate per (strategy, N).

    ``workers`` defaults to the QSN_THREADS environment variable (or a
    small machine-dependent value); it changes speed only, never results.
    """
    if backend not in BACKENDS:
        raise ValueError(f"unknown backend {backend!r}; expected one of {BACKENDS}")
    if backend == BACKEND_SIM_DENSE and max(plan.n_values) > 20:
        raise ValueError("sim-dense backend is capped at N <= 20")
    workers = _resolve_workers(workers)
    aggregates = []
    for strategy in plan.strategies:
        for n in plan.n_values:
            mean, se = _run_cell(plan, strategy, n, backend, workers)
            analytic = disc.analytic_mean(plan.case, strategy, n, plan.m)
            aggregates.append(
                TrialAggregate(
                    case=plan.case,
                    strategy=strategy,
                    n=n,
                    trials=plan.trials,
                    mean_perr=mean,
                    std_error=se,
                    analytic_perr=analytic.value,
                    analytic_is_approximate=analytic.approximate,
                )
            )
    return aggregates
