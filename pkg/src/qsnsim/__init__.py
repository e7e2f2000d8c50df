"""Single-photon sensor-network simulator.

Compares two ways of interrogating N phase plates with one photon — a
sequential probe hopping plate to plate, and a probe split across all
plates by a beam-splitter cascade — and estimates how well each identifies
the plate ensemble (identical phases, narrowly scattered phases, or fully
random phases) from a single measurement.
"""

from .dense import DENSE_MODE_CAP, QubitRegisterState, SectorError, one_hot_index
from .discrimination import (
    AnalyticMean,
    alternating_sum,
    analytic_mean,
    perr_local_a,
    perr_local_b,
    perr_nonlocal_a,
    perr_nonlocal_b,
    plus_overlap_probability,
    w_overlap_probability,
)
from .excitation import ExcitationState, lift_to_dense
from .montecarlo import (
    BACKEND_CLOSED_FORM,
    BACKEND_SIM_COMPACT,
    BACKEND_SIM_DENSE,
    BACKENDS,
    BLOCK_TRIALS,
    RNG_ALGORITHM,
    SamplingPlan,
    TrialAggregate,
    run_plan,
    sample_scenario,
    sample_uniform_full,
    sample_uniform_narrow,
    trial_error_probability,
)
from .phases import PhaseConfig
from .protocols import (
    BACKEND_COMPACT,
    BACKEND_DENSE,
    DiscriminationTask,
    ProtocolResult,
    ScenarioSpec,
    prepare_local_initial,
    prepare_w_state,
    project_local,
    project_nonlocal,
    run_local_protocol,
    run_nonlocal_protocol,
)
from .selfcheck import CheckResult, run_checks

__all__ = [
    "AnalyticMean",
    "BACKENDS",
    "BACKEND_CLOSED_FORM",
    "BACKEND_COMPACT",
    "BACKEND_DENSE",
    "BACKEND_SIM_COMPACT",
    "BACKEND_SIM_DENSE",
    "BLOCK_TRIALS",
    "CheckResult",
    "DENSE_MODE_CAP",
    "DiscriminationTask",
    "ExcitationState",
    "PhaseConfig",
    "ProtocolResult",
    "QubitRegisterState",
    "RNG_ALGORITHM",
    "SamplingPlan",
    "ScenarioSpec",
    "SectorError",
    "TrialAggregate",
    "alternating_sum",
    "analytic_mean",
    "lift_to_dense",
    "one_hot_index",
    "perr_local_a",
    "perr_local_b",
    "perr_nonlocal_a",
    "perr_nonlocal_b",
    "plus_overlap_probability",
    "prepare_local_initial",
    "prepare_w_state",
    "project_local",
    "project_nonlocal",
    "run_checks",
    "run_local_protocol",
    "run_nonlocal_protocol",
    "run_plan",
    "sample_scenario",
    "sample_uniform_full",
    "sample_uniform_narrow",
    "trial_error_probability",
    "w_overlap_probability",
]

__version__ = "0.1.0"
