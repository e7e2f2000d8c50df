"""Per-trial error probabilities and their exact ensemble averages.

Closed forms (priors p1 for the same/similar hypothesis, p2 for the fully
random one, default 1/2 each):

* sequential, case a:      p2 * cos^2(alt/2)
* distributed, case a:     p2 * |sum_j e^{i theta_j} / N|^2
* sequential, case b:      1 - p1 * cos^2(alt'/2) - p2 * (1 - cos^2(alt/2))
* distributed, case b:     1 - p1 * |.|^2_narrow - p2 * (1 - |.|^2_random)

where alt = theta_1 - theta_2 + theta_3 - ... is the alternating phase sum.
Every closed form equals the projector value obtained by actually running
the circuits; the oracle-equivalence suite pins that to 1e-12.

The ensemble averages over the random-plate ensembles are 1/4 (sequential)
and 1/(2N) (distributed) for case a.  The case-b averages,
N/24 * pi^2/M^2 + 1/4 and (1/2) * (pi^2/(3 M^2) (1 - 1/N) + 1/N), are
leading-order in 1/M and flagged as approximate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .phases import PhaseConfig

_PRIOR_TOL = 1e-15


def _as_thetas(phases) -> np.ndarray:
    if isinstance(phases, PhaseConfig):
        return phases.thetas
    arr = np.atleast_1d(np.asarray(phases, dtype=np.float64))
    if arr.ndim != 1 or arr.size < 1:
        raise ValueError("phases must be a non-empty 1-D vector")
    return arr


def _check_priors(priors):
    p1, p2 = priors
    if p1 < 0 or p2 < 0 or abs(p1 + p2 - 1.0) > _PRIOR_TOL:
        raise ValueError("priors must be nonnegative and sum to 1")
    return p1, p2


def alternating_sum(thetas) -> float:
    """theta_1 - theta_2 + theta_3 - ... for an even-length vector."""
    thetas = _as_thetas(thetas)
    if thetas.size % 2 != 0:
        raise ValueError("alternating sum pairs plates; need an even count")
    return float(np.sum(thetas[0::2]) - np.sum(thetas[1::2]))


def plus_overlap_probability(thetas) -> float:
    """|<+|psi>|^2 for the sequential probe's final qubit: cos^2(alt/2)."""
    return float(np.cos(alternating_sum(thetas) / 2.0) ** 2)


def w_overlap_probability(thetas) -> float:
    """|<w|w_evolved>|^2 for the distributed probe: |mean_j e^{i theta_j}|^2."""
    thetas = _as_thetas(thetas)
    return float(np.mean(np.cos(thetas)) ** 2 + np.mean(np.sin(thetas)) ** 2)


def perr_local_a(phases_different, priors=(0.5, 0.5)) -> float:
    """Error probability of one sequential-probe trial, same-vs-random case.

    The same-phase branch is identified perfectly, so only the random
    branch's misfire contributes.
    """
    _, p2 = _check_priors(priors)
    return p2 * plus_overlap_probability(phases_different)


def perr_nonlocal_a(phases_different, priors=(0.5, 0.5)) -> float:
    """Error probability of one distributed-probe trial, same-vs-random case."""
    _, p2 = _check_priors(priors)
    return p2 * w_overlap_probability(phases_different)


def _check_matched(phases_similar, phases_different) -> tuple[np.ndarray, np.ndarray]:
    sim = _as_thetas(phases_similar)
    diff = _as_thetas(phases_different)
    if sim.size != diff.size:
        raise ValueError(
            f"branch phase vectors differ in length ({sim.size} vs {diff.size})"
        )
    return sim, diff


def perr_local_b(phases_similar, phases_different, priors=(0.5, 0.5)) -> float:
    """Error probability of one sequential-probe trial, narrow-vs-random case."""
    p1, p2 = _check_priors(priors)
    sim, diff = _check_matched(phases_similar, phases_different)
    return (
        1.0
        - p1 * plus_overlap_probability(sim)
        - p2 * (1.0 - plus_overlap_probability(diff))
    )


def perr_nonlocal_b(phases_similar, phases_different, priors=(0.5, 0.5)) -> float:
    """Error probability of one distributed-probe trial, narrow-vs-random case."""
    p1, p2 = _check_priors(priors)
    sim, diff = _check_matched(phases_similar, phases_different)
    return (
        1.0
        - p1 * w_overlap_probability(sim)
        - p2 * (1.0 - w_overlap_probability(diff))
    )


@dataclass(frozen=True)
class AnalyticMean:
    """Ensemble-averaged error probability; ``approximate`` marks the
    case-b leading-order-in-1/M expressions."""

    value: float
    approximate: bool


def analytic_mean(case: str, strategy: str, num_modes: int, m: int | None = None) -> AnalyticMean:
    """Closed-form ensemble average for a (case, strategy, N[, M]) cell."""
    if strategy not in ("local", "nonlocal"):
        raise ValueError(f"unknown strategy {strategy!r}")
    if case not in ("a", "b"):
        raise ValueError(f"unknown case {case!r}")
    if num_modes < 1:
        raise ValueError("num_modes must be >= 1")
    if strategy == "local" and num_modes % 2 != 0:
        raise ValueError("sequential strategy requires an even N")
    if case == "a":
        if strategy == "local":
            return AnalyticMean(0.25, approximate=False)
        return AnalyticMean(1.0 / (2.0 * num_modes), approximate=False)
    if m is None:
        raise ValueError("case b requires the narrow-interval divisor m")
    if m < 2:
        raise ValueError("m must be >= 2")
    ratio = np.pi**2 / m**2
    if strategy == "local":
        return AnalyticMean(num_modes / 24.0 * ratio + 0.25, approximate=True)
    value = 0.5 * (ratio / 3.0 * (1.0 - 1.0 / num_modes) + 1.0 / num_modes)
    return AnalyticMean(value, approximate=True)
