"""Randomized cross-validation of the simulators against each other.

Each check draws random inputs, evaluates a deviation that should be zero,
and fails if any case exceeds its tolerance.  A failing case is captured as
a JSON-serializable payload so the exact inputs can be replayed later with
:func:`replay`.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import discrimination as disc
from .dense import QubitRegisterState
from .excitation import ExcitationState, lift_to_dense
from .montecarlo import (
    BACKEND_CLOSED_FORM,
    BACKEND_SIM_COMPACT,
    BACKEND_SIM_DENSE,
    trial_error_probability,
)
from .phases import PhaseConfig
from .protocols import (
    prepare_w_state,
    project_local,
    project_nonlocal,
    run_local_protocol,
    run_nonlocal_protocol,
)

DEFAULT_N_MAX = 8
DEFAULT_DRAWS = 1000
DEFAULT_SEED = 20240127


@dataclass
class CheckResult:
    name: str
    passed: bool
    tolerance: float
    worst: float
    cases: int
    failure: dict | None = field(default=None, repr=False)
    note: str = ""


# -- (de)serialization helpers ----------------------------------------------


def _vec_to_json(vec: np.ndarray) -> dict:
    arr = np.asarray(vec, dtype=np.complex128)
    return {"re": arr.real.tolist(), "im": arr.imag.tolist()}


def _vec_from_json(obj: dict) -> np.ndarray:
    return np.asarray(obj["re"], dtype=np.float64) + 1j * np.asarray(
        obj["im"], dtype=np.float64
    )


def _dense_from_case(case: dict) -> QubitRegisterState:
    return QubitRegisterState(int(case["n"]), _vec_from_json(case["state"]))


def _compact_from_case(case: dict) -> ExcitationState:
    vac = complex(case["vacuum"][0], case["vacuum"][1])
    return ExcitationState(int(case["n"]), vac, _vec_from_json(case["mode_amps"]))


def _random_dense_state(rng, n: int) -> QubitRegisterState:
    amps = rng.standard_normal(1 << n) + 1j * rng.standard_normal(1 << n)
    amps /= np.linalg.norm(amps)
    return QubitRegisterState(n, amps)


def _random_compact_state(rng, n: int) -> ExcitationState:
    amps = rng.standard_normal(n + 1) + 1j * rng.standard_normal(n + 1)
    amps /= np.linalg.norm(amps)
    return ExcitationState(n, amps[0], amps[1:])


def _zero_pair_block(state: QubitRegisterState, a: int, b: int) -> QubitRegisterState:
    """Remove the |1_a 1_b> components so the beam splitter precondition holds."""
    n = state.num_modes
    view = state.amplitudes.copy().reshape((2,) * n)
    sl: list = [slice(None)] * n
    sl[a - 1] = 1
    sl[b - 1] = 1
    view[tuple(sl)] = 0.0
    flat = view.reshape(-1)
    norm = np.linalg.norm(flat)
    if norm == 0.0:
        flat[0] = 1.0
        norm = 1.0
    return QubitRegisterState(n, flat / norm)


def _apply_named_op(state, case: dict):
    op = case["op"]
    if op == "phase":
        return state.apply_mode_phase(int(case["mode"]), float(case["theta"]))
    if op == "phases":
        return state.apply_mode_phases(np.asarray(case["thetas"], dtype=np.float64))
    if op == "x":
        return state.apply_x(int(case["mode"]))
    if op == "swap":
        return state.apply_swap(int(case["mode_a"]), int(case["mode_b"]))
    if op == "beamsplitter":
        return state.apply_beamsplitter(int(case["mode_a"]), int(case["mode_b"]))
    raise ValueError(f"unknown op {op!r}")


def _two_distinct_modes(rng, n: int) -> tuple[int, int]:
    a, b = rng.choice(np.arange(1, n + 1), size=2, replace=False)
    return int(a), int(b)


def _dense_max_diff(x: QubitRegisterState, y: QubitRegisterState) -> float:
    return float(np.max(np.abs(x.amplitudes - y.amplitudes)))


# -- case evaluators (case dict -> deviation) --------------------------------


def _eval_dense_unitarity(case: dict) -> float:
    state = _dense_from_case(case)
    after = _apply_named_op(state, case)
    return abs(after.norm_sq - state.norm_sq)


def _eval_involutions(case: dict) -> float:
    state = _dense_from_case(case)
    twice = _apply_named_op(_apply_named_op(state, case), case)
    return _dense_max_diff(twice, state)


def _eval_disjoint_commutation(case: dict) -> float:
    state = _dense_from_case(case)
    mode_p, mode_x = int(case["phase_mode"]), int(case["x_mode"])
    theta = float(case["theta"])
    one = state.apply_mode_phase(mode_p, theta).apply_x(mode_x)
    other = state.apply_x(mode_x).apply_mode_phase(mode_p, theta)
    return _dense_max_diff(one, other)


def _one_photon_mass(state: QubitRegisterState) -> float:
    n = state.num_modes
    idx = 1 << (n - np.arange(1, n + 1))
    return float(np.sum(np.abs(state.amplitudes[idx]) ** 2))


def _eval_beamsplitter_mass(case: dict) -> float:
    state = lift_to_dense(_compact_from_case(case))
    after = state.apply_beamsplitter(int(case["mode_a"]), int(case["mode_b"]))
    return max(
        abs(_one_photon_mass(after) - _one_photon_mass(state)),
        abs(after.norm_sq - state.norm_sq),
    )


def _eval_compact_dense_agreement(case: dict) -> float:
    compact = _compact_from_case(case)
    lifted_then_op = _apply_named_op(lift_to_dense(compact), case)
    op_then_lifted = lift_to_dense(_apply_named_op(compact, case))
    return _dense_max_diff(lifted_then_op, op_then_lifted)


def _local_paths(n: int, thetas: np.ndarray):
    phases = PhaseConfig(thetas)
    results = {}
    for label, backend in (("compact", "compact"), ("dense", "dense")):
        p_plus, p_minus = project_local(run_local_protocol(n, phases, backend))
        results[label] = (p_plus, p_minus)
    p_plus_formula = disc.plus_overlap_probability(thetas)
    results["closed-form"] = (p_plus_formula, 1.0 - p_plus_formula)
    return phases, results


def _eval_local_paths(case: dict) -> float:
    n = int(case["n"])
    thetas = np.asarray(case["thetas"], dtype=np.float64)
    phases, results = _local_paths(n, thetas)
    values = list(results.values())
    dev = max(
        abs(values[i][k] - values[j][k])
        for i in range(len(values))
        for j in range(i + 1, len(values))
        for k in (0, 1)
    )
    perrs = [
        trial_error_probability("a", "local", phases, backend=b)
        for b in (BACKEND_CLOSED_FORM, BACKEND_SIM_COMPACT, BACKEND_SIM_DENSE)
    ]
    dev = max(dev, max(perrs) - min(perrs))
    return dev


def _eval_nonlocal_paths(case: dict) -> float:
    n = int(case["n"])
    thetas = np.asarray(case["thetas"], dtype=np.float64)
    w_method = case.get("w_method")
    phases = PhaseConfig(thetas)
    probs = []
    for backend in ("compact", "dense"):
        result = run_nonlocal_protocol(n, phases, w_method, backend)
        probs.append(project_nonlocal(result))
    p_w = disc.w_overlap_probability(thetas)
    probs.append((p_w, 1.0 - p_w))
    dev = max(
        abs(probs[i][k] - probs[j][k])
        for i in range(len(probs))
        for j in range(i + 1, len(probs))
        for k in (0, 1)
    )
    perrs = [
        trial_error_probability("a", "nonlocal", phases, backend=b)
        for b in (BACKEND_CLOSED_FORM, BACKEND_SIM_COMPACT, BACKEND_SIM_DENSE)
    ]
    return max(dev, max(perrs) - min(perrs))


def _eval_same_branch(case: dict) -> float:
    n = int(case["n"])
    phases = PhaseConfig.constant(float(case["theta"]), n)
    dev = 0.0
    for backend in ("compact", "dense"):
        _, p_minus = project_local(run_local_protocol(n, phases, backend))
        dev = max(dev, abs(p_minus))
        _, p_rest = project_nonlocal(run_nonlocal_protocol(n, phases, backend=backend))
        dev = max(dev, abs(p_rest))
    return dev


def _eval_phase_offset_invariance(case: dict) -> float:
    n = int(case["n"])
    thetas = np.asarray(case["thetas"], dtype=np.float64)
    offset = float(case["offset"])
    dev = 0.0
    for shift in (offset, 2.0 * np.pi):
        base = PhaseConfig(thetas)
        shifted = PhaseConfig(thetas + shift)
        a = project_local(run_local_protocol(n, base))
        b = project_local(run_local_protocol(n, shifted))
        dev = max(dev, abs(a[0] - b[0]), abs(a[1] - b[1]))
        c = project_nonlocal(run_nonlocal_protocol(n, base))
        d = project_nonlocal(run_nonlocal_protocol(n, shifted))
        dev = max(dev, abs(c[0] - d[0]), abs(c[1] - d[1]))
    return dev


def _eval_w_amplitudes(case: dict) -> float:
    n = int(case["n"])
    target = 1.0 / np.sqrt(n)
    state = prepare_w_state(n, "cascade", backend="compact")
    dev = max(
        float(np.max(np.abs(np.abs(state.mode_amps) - target))), abs(state.vacuum_amp)
    )
    if n <= 16:
        dense = prepare_w_state(n, "cascade", backend="dense")
        idx = 1 << (n - np.arange(1, n + 1))
        dev = max(dev, float(np.max(np.abs(np.abs(dense.amplitudes[idx]) - target))))
        dev = max(dev, abs(dense.amplitudes[0]))
    return dev


# -- case samplers (rng -> case dict) ----------------------------------------


def _sample_even_n(rng, n_max: int) -> int:
    evens = [n for n in range(2, n_max + 1, 2)]
    return int(rng.choice(evens))


def _sample_dense_op_case(rng, n_max: int, ops) -> dict:
    n = int(rng.integers(2, n_max + 1))
    op = str(rng.choice(ops))
    state = _random_dense_state(rng, n)
    case: dict = {"n": n, "op": op}
    if op == "phase":
        case["mode"] = int(rng.integers(1, n + 1))
        case["theta"] = float(rng.uniform(-2 * np.pi, 2 * np.pi))
    elif op == "phases":
        case["thetas"] = rng.uniform(0, 2 * np.pi, n).tolist()
    elif op == "x":
        case["mode"] = int(rng.integers(1, n + 1))
    else:
        a, b = _two_distinct_modes(rng, n)
        case["mode_a"], case["mode_b"] = a, b
        if op == "beamsplitter":
            state = _zero_pair_block(state, a, b)
    case["state"] = _vec_to_json(state.amplitudes)
    return case


def _sample_unitarity(rng, n_max: int) -> dict:
    return _sample_dense_op_case(rng, n_max, ["phase", "phases", "x", "swap", "beamsplitter"])


def _sample_involution(rng, n_max: int) -> dict:
    return _sample_dense_op_case(rng, n_max, ["x", "swap"])


def _sample_commutation(rng, n_max: int) -> dict:
    n = int(rng.integers(2, n_max + 1))
    a, b = _two_distinct_modes(rng, n)
    return {
        "n": n,
        "phase_mode": a,
        "x_mode": b,
        "theta": float(rng.uniform(-2 * np.pi, 2 * np.pi)),
        "state": _vec_to_json(_random_dense_state(rng, n).amplitudes),
    }


def _compact_case_fields(state: ExcitationState) -> dict:
    return {
        "n": state.num_modes,
        "vacuum": [state.vacuum_amp.real, state.vacuum_amp.imag],
        "mode_amps": _vec_to_json(state.mode_amps),
    }


def _sample_beamsplitter_mass(rng, n_max: int) -> dict:
    n = int(rng.integers(2, n_max + 1))
    a, b = _two_distinct_modes(rng, n)
    case = _compact_case_fields(_random_compact_state(rng, n))
    case.update({"mode_a": a, "mode_b": b})
    return case


def _sample_compact_dense(rng, n_max: int) -> dict:
    n = int(rng.integers(2, n_max + 1))
    op = str(rng.choice(["phase", "phases", "x", "swap", "beamsplitter"]))
    if op == "x":
        # flip precondition: support confined to {vacuum, target mode}
        mode = int(rng.integers(1, n + 1))
        pair = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        pair /= np.linalg.norm(pair)
        amps = np.zeros(n, dtype=np.complex128)
        amps[mode - 1] = pair[1]
        state = ExcitationState(n, pair[0], amps)
        case = _compact_case_fields(state)
        case.update({"op": op, "mode": mode})
        return case
    state = _random_compact_state(rng, n)
    case = _compact_case_fields(state)
    case["op"] = op
    if op == "phase":
        case["mode"] = int(rng.integers(1, n + 1))
        case["theta"] = float(rng.uniform(-2 * np.pi, 2 * np.pi))
    elif op == "phases":
        case["thetas"] = rng.uniform(0, 2 * np.pi, n).tolist()
    else:
        a, b = _two_distinct_modes(rng, n)
        case["mode_a"], case["mode_b"] = a, b
    return case


def _sample_local_paths(rng, n_max: int) -> dict:
    n = _sample_even_n(rng, n_max)
    return {"n": n, "thetas": rng.uniform(0, 2 * np.pi, n).tolist()}


def _sample_nonlocal_paths(rng, n_max: int) -> dict:
    n = int(rng.integers(2, n_max + 1))
    w_method = "cascade" if n & (n - 1) == 0 and rng.random() < 0.5 else "direct"
    return {"n": n, "thetas": rng.uniform(0, 2 * np.pi, n).tolist(), "w_method": w_method}


def _sample_same_branch(rng, n_max: int) -> dict:
    return {"n": _sample_even_n(rng, n_max), "theta": float(rng.uniform(0, 2 * np.pi))}


def _sample_phase_offset(rng, n_max: int) -> dict:
    n = _sample_even_n(rng, n_max)
    return {
        "n": n,
        "thetas": rng.uniform(0, 2 * np.pi, n).tolist(),
        "offset": float(rng.uniform(-np.pi, np.pi)),
    }


@dataclass(frozen=True)
class _CheckSpec:
    name: str
    tolerance: float
    evaluate: callable
    sample: callable | None = None
    fixed_cases: tuple | None = None


_CHECKS: tuple[_CheckSpec, ...] = (
    _CheckSpec("dense-unitarity", 1e-12, _eval_dense_unitarity, _sample_unitarity),
    _CheckSpec("involutions", 1e-15, _eval_involutions, _sample_involution),
    _CheckSpec("disjoint-commutation", 1e-12, _eval_disjoint_commutation, _sample_commutation),
    _CheckSpec("beamsplitter-photon-mass", 1e-12, _eval_beamsplitter_mass, _sample_beamsplitter_mass),
    _CheckSpec("compact-dense-agreement", 1e-12, _eval_compact_dense_agreement, _sample_compact_dense),
    _CheckSpec("local-protocol-paths", 1e-12, _eval_local_paths, _sample_local_paths),
    _CheckSpec("nonlocal-protocol-paths", 1e-12, _eval_nonlocal_paths, _sample_nonlocal_paths),
    _CheckSpec("same-branch-zero-error", 1e-12, _eval_same_branch, _sample_same_branch),
    _CheckSpec("phase-offset-invariance", 1e-12, _eval_phase_offset_invariance, _sample_phase_offset),
    _CheckSpec(
        "w-state-amplitudes",
        1e-12,
        _eval_w_amplitudes,
        fixed_cases=({"n": 2}, {"n": 4}, {"n": 8}, {"n": 16}),
    ),
)

CHECK_NAMES = tuple(spec.name for spec in _CHECKS)
_CHECKS_BY_NAME = {spec.name: spec for spec in _CHECKS}


def _run_one(spec: _CheckSpec, n_max: int, draws: int, seed: int) -> CheckResult:
    check_index = CHECK_NAMES.index(spec.name)
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(check_index,)))
    if spec.fixed_cases is not None:
        cases = list(spec.fixed_cases)
    else:
        cases = [spec.sample(rng, n_max) for _ in range(draws)]
    worst = 0.0
    for case in cases:
        try:
            dev = spec.evaluate(case)
        except ValueError as exc:
            return CheckResult(
                spec.name,
                False,
                spec.tolerance,
                float("inf"),
                len(cases),
                failure={"check": spec.name, "case": case},
                note=f"rejected input: {exc}",
            )
        worst = max(worst, dev)
        if dev > spec.tolerance:
            return CheckResult(
                spec.name,
                False,
                spec.tolerance,
                worst,
                len(cases),
                failure={"check": spec.name, "case": case, "deviation": dev},
            )
    return CheckResult(spec.name, True, spec.tolerance, worst, len(cases))


def run_checks(
    n_max: int = DEFAULT_N_MAX,
    draws: int = DEFAULT_DRAWS,
    seed: int = DEFAULT_SEED,
    names=None,
) -> list[CheckResult]:
    """Run the self-check suite; one result per check."""
    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    if draws < 1:
        raise ValueError("draws must be >= 1")
    specs = _CHECKS if names is None else tuple(_CHECKS_BY_NAME[name] for name in names)
    return [_run_one(spec, n_max, draws, seed) for spec in specs]


def replay(payload: dict) -> CheckResult:
    """Re-evaluate a dumped failure case; deterministic by construction."""
    name = payload.get("check")
    if name not in _CHECKS_BY_NAME:
        raise ValueError(f"unknown check {name!r}")
    spec = _CHECKS_BY_NAME[name]
    case = payload.get("case")
    if not isinstance(case, dict):
        raise ValueError("replay payload is missing its case record")
    try:
        dev = spec.evaluate(case)
    except ValueError as exc:
        return CheckResult(
            name,
            False,
            spec.tolerance,
            float("inf"),
            1,
            failure=payload,
            note=f"rejected input: {exc}",
        )
    passed = dev <= spec.tolerance
    return CheckResult(
        name, passed, spec.tolerance, dev, 1, failure=None if passed else payload
    )
