"""The two single-photon interrogation circuits and their measurements.

Sequential (local) probe: the photon starts as (|0> + |1>)/sqrt(2) on mode 1
and visits the plates one at a time; each step is plate phases, a bit flip
on the current mode, and a SWAP to the next mode.  After N plates the whole
register collapses to a single qubit on mode N, measured in the +/- basis.

Distributed (nonlocal) probe: a beam-splitter cascade (or direct
construction) spreads the photon into an equal superposition over all N
modes; every arm crosses its plate once, and the measurement projects back
onto the prepared superposition.

Both circuits run on either back end ("compact" is the O(N) default,
"dense" the 2^N oracle).  The plate register itself is classical here: the
two hypotheses never interfere, so each branch is simulated on its own and
combined with the prior weights downstream.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dense import QubitRegisterState
from .excitation import ExcitationState, lift_to_dense
from .phases import PhaseConfig

BACKEND_COMPACT = "compact"
BACKEND_DENSE = "dense"
_BACKENDS = (BACKEND_COMPACT, BACKEND_DENSE)

W_CASCADE = "cascade"
W_DIRECT = "direct"

SCENARIO_SAME = "same"
SCENARIO_DIFFERENT_UNIFORM = "different-uniform"
SCENARIO_SIMILAR_NARROW = "similar-narrow"

CASE_SAME_VS_DIFFERENT = "a"
CASE_SIMILAR_VS_DIFFERENT = "b"


@dataclass(frozen=True)
class ScenarioSpec:
    """Which plate ensemble is on the bench.

    * ``same``: every plate imparts the common phase ``theta``.
    * ``different-uniform``: i.i.d. phases uniform on [0, 2*pi).
    * ``similar-narrow``: i.i.d. phases uniform on [-pi/m, pi/m], m >= 2.
    """

    kind: str
    theta: float = 0.0
    m: int | None = None

    def __post_init__(self):
        if self.kind not in (SCENARIO_SAME, SCENARIO_DIFFERENT_UNIFORM, SCENARIO_SIMILAR_NARROW):
            raise ValueError(f"unknown scenario kind {self.kind!r}")
        if self.kind == SCENARIO_SIMILAR_NARROW:
            if self.m is None or self.m < 2:
                raise ValueError("similar-narrow scenario requires m >= 2")

    @classmethod
    def same(cls, theta: float) -> "ScenarioSpec":
        return cls(SCENARIO_SAME, theta=theta)

    @classmethod
    def different_uniform(cls) -> "ScenarioSpec":
        return cls(SCENARIO_DIFFERENT_UNIFORM)

    @classmethod
    def similar_narrow(cls, m: int) -> "ScenarioSpec":
        return cls(SCENARIO_SIMILAR_NARROW, m=m)


@dataclass(frozen=True)
class DiscriminationTask:
    """Binary hypothesis test with prior weights.

    Case "a" discriminates same-phase plates from fully random ones; case
    "b" discriminates narrowly scattered plates from fully random ones.
    ``prior_first`` weights the same/similar hypothesis, ``prior_second``
    the fully random one.
    """

    case: str
    prior_first: float = 0.5
    prior_second: float = 0.5

    def __post_init__(self):
        if self.case not in (CASE_SAME_VS_DIFFERENT, CASE_SIMILAR_VS_DIFFERENT):
            raise ValueError(f"unknown case {self.case!r}")
        if self.prior_first < 0 or self.prior_second < 0:
            raise ValueError("priors must be nonnegative")
        if abs(self.prior_first + self.prior_second - 1.0) > 1e-15:
            raise ValueError("priors must sum to 1")

    @property
    def priors(self) -> tuple[float, float]:
        return (self.prior_first, self.prior_second)


@dataclass(frozen=True)
class ProtocolResult:
    """Final photon state of one protocol run.

    ``photon_mode_of_interest`` is the measured mode for the sequential
    protocol (always mode N); the distributed protocol measures the whole
    register against ``reference_state``, the state its own preparation
    produced.
    """

    strategy: str
    final_state: ExcitationState | QubitRegisterState
    photon_mode_of_interest: int
    reference_state: ExcitationState | QubitRegisterState | None = None


def _check_backend(backend: str):
    if backend not in _BACKENDS:
        raise ValueError(f"unknown backend {backend!r}; expected one of {_BACKENDS}")


def _state_cls(backend: str):
    return ExcitationState if backend == BACKEND_COMPACT else QubitRegisterState


def prepare_local_initial(num_modes: int, backend: str = BACKEND_COMPACT):
    """(|0> + |1>)/sqrt(2) on mode 1, every other mode empty.

    The sequential circuit pairs plates via its alternating sums, so an even
    mode count is required.
    """
    _check_backend(backend)
    if num_modes < 2 or num_modes % 2 != 0:
        raise ValueError(f"sequential protocol requires an even N >= 2, got {num_modes}")
    inv_sqrt2 = 1.0 / np.sqrt(2.0)
    if backend == BACKEND_COMPACT:
        amps = np.zeros(num_modes, dtype=np.complex128)
        amps[0] = inv_sqrt2
        return ExcitationState(num_modes, inv_sqrt2, amps)
    amps = np.zeros(1 << num_modes, dtype=np.complex128)
    amps[0] = inv_sqrt2
    amps[1 << (num_modes - 1)] = inv_sqrt2
    return QubitRegisterState(num_modes, amps)


def prepare_w_state(num_modes: int, method: str = W_CASCADE, backend: str = BACKEND_COMPACT):
    """Equal-weight single-photon superposition over all N modes.

    ``cascade`` feeds one photon through log2(N) rounds of 50/50 beam
    splitters, doubling the occupied modes each round, and therefore needs
    N to be a power of two.  ``direct`` writes the 1/sqrt(N) amplitudes for
    any N >= 1.
    """
    _check_backend(backend)
    if num_modes < 1:
        raise ValueError(f"num_modes must be >= 1, got {num_modes}")
    if method == W_DIRECT:
        amps = np.full(num_modes, 1.0 / np.sqrt(num_modes), dtype=np.complex128)
        state = ExcitationState(num_modes, 0.0, amps)
        return state if backend == BACKEND_COMPACT else lift_to_dense(state)
    if method != W_CASCADE:
        raise ValueError(f"unknown W-state method {method!r}")
    if num_modes & (num_modes - 1) != 0:
        raise ValueError(
            f"cascade preparation requires a power-of-two mode count, got {num_modes}"
        )
    state = _state_cls(backend).single_photon(num_modes, 1)
    occupied = 1
    while occupied < num_modes:
        for mode in range(1, occupied + 1):
            state = state.apply_beamsplitter(mode, mode + occupied)
        occupied *= 2
    return state


def _check_phases(num_modes: int, phases: PhaseConfig):
    if phases.num_modes != num_modes:
        raise ValueError(
            f"phase vector has {phases.num_modes} entries for {num_modes} modes"
        )


def run_local_protocol(
    num_modes: int, phases: PhaseConfig, backend: str = BACKEND_COMPACT
) -> ProtocolResult:
    """Sequential interrogation: (phases, flip j, swap j->j+1) x (N-1), then phases.

    The final register is |0...0> tensor psi on mode N with
    psi = (e^{-i(theta_1+theta_3+...)}|0> + e^{-i(theta_2+theta_4+...)}|1>)/sqrt(2).
    """
    _check_phases(num_modes, phases)
    state = prepare_local_initial(num_modes, backend)
    thetas = phases.thetas
    for mode in range(1, num_modes):
        state = state.apply_mode_phases(thetas)
        state = state.apply_x(mode)
        state = state.apply_swap(mode, mode + 1)
    state = state.apply_mode_phases(thetas)
    return ProtocolResult("local", state, photon_mode_of_interest=num_modes)


def run_nonlocal_protocol(
    num_modes: int,
    phases: PhaseConfig,
    w_method: str | None = None,
    backend: str = BACKEND_COMPACT,
) -> ProtocolResult:
    """Distributed interrogation: split into all N modes, one plate per arm.

    ``w_method=None`` picks the cascade when N is a power of two and the
    direct construction otherwise.
    """
    _check_phases(num_modes, phases)
    if w_method is None:
        w_method = W_CASCADE if num_modes & (num_modes - 1) == 0 else W_DIRECT
    reference = prepare_w_state(num_modes, w_method, backend)
    final = reference.apply_mode_phases(phases.thetas)
    return ProtocolResult(
        "nonlocal", final, photon_mode_of_interest=num_modes, reference_state=reference
    )


def project_local(result: ProtocolResult) -> tuple[float, float]:
    """Probabilities of the |+> / |-> outcomes on the measured mode.

    Returns (p_plus, p_minus); a same-phase branch gives p_minus = 0, which
    is what flags the fully-random branch when p_minus fires.
    """
    if result.strategy != "local":
        raise ValueError("project_local needs a sequential-protocol result")
    state = result.final_state
    mode = result.photon_mode_of_interest
    if isinstance(state, ExcitationState):
        if mode != state.num_modes:
            raise ValueError("sequential protocol measures the last mode")
        m = state.mode_amps
        spectator = float(np.sum(np.abs(m[:-1]) ** 2)) / 2.0
        p_plus = float(abs(state.vacuum_amp + m[-1]) ** 2 / 2.0 + spectator)
        p_minus = float(abs(state.vacuum_amp - m[-1]) ** 2 / 2.0 + spectator)
        return p_plus, p_minus
    # dense: mode N is the least significant bit, so pair adjacent entries
    pairs = state.amplitudes.reshape(-1, 2)
    p_plus = float(np.sum(np.abs(pairs[:, 0] + pairs[:, 1]) ** 2)) / 2.0
    p_minus = float(np.sum(np.abs(pairs[:, 0] - pairs[:, 1]) ** 2)) / 2.0
    return p_plus, p_minus


def project_nonlocal(result: ProtocolResult) -> tuple[float, float]:
    """Probability of remaining in the prepared superposition vs. leaving it.

    Returns (p_w, p_rest) with p_w = |<w_prepared|final>|^2 and
    p_rest = <final|final> - p_w, i.e. the complement projector's weight.
    """
    if result.strategy != "nonlocal" or result.reference_state is None:
        raise ValueError("project_nonlocal needs a distributed-protocol result")
    overlap = result.reference_state.inner_product(result.final_state)
    p_w = float(abs(overlap) ** 2)
    p_rest = float(result.final_state.norm_sq - p_w)
    return p_w, p_rest
