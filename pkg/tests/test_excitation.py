"""Unit and oracle-equivalence tests for the compact (N+1)-amplitude simulator."""

import time

import numpy as np
import pytest

from qsnsim import (
    ExcitationState,
    PhaseConfig,
    SectorError,
    lift_to_dense,
    one_hot_index,
    run_local_protocol,
)

S2 = 1.0 / np.sqrt(2.0)


def random_compact(rng, n):
    amps = rng.standard_normal(n + 1) + 1j * rng.standard_normal(n + 1)
    amps /= np.linalg.norm(amps)
    return ExcitationState(n, amps[0], amps[1:])


def test_x_from_vacuum():
    out = ExcitationState.vacuum(4).apply_x(3)
    assert out.vacuum_amp == 0.0
    np.testing.assert_array_equal(out.mode_amps, [0, 0, 1, 0])


def test_x_requires_support_on_vacuum_and_target_only():
    state = ExcitationState(3, 0.5, np.array([0.5, 0.5, 0.5]))
    with pytest.raises(SectorError, match="two photons"):
        state.apply_x(2)


def test_phases_on_w_state():
    n = 4
    w = ExcitationState(n, 0.0, np.full(n, 0.5, dtype=complex))
    thetas = np.array([0.3, 1.1, 2.9, 4.2])
    out = w.apply_mode_phases(thetas)
    np.testing.assert_allclose(out.mode_amps, 0.5 * np.exp(-1j * thetas), atol=1e-15)
    assert out.vacuum_amp == 0.0


def test_swap_on_symmetric_w_state():
    w = ExcitationState(4, 0.0, np.full(4, 0.5, dtype=complex))
    out = w.apply_swap(2, 4)
    np.testing.assert_array_equal(out.mode_amps, w.mode_amps)


def test_beamsplitter_pair_rotation():
    state = ExcitationState.single_photon(2, 1)
    out = state.apply_beamsplitter(1, 2)
    np.testing.assert_allclose(out.mode_amps, [S2, S2], atol=1e-15)
    back = out.apply_beamsplitter(1, 2)
    np.testing.assert_allclose(back.mode_amps, [1, 0], atol=1e-15)


def test_inner_product_includes_vacuum_term():
    a = ExcitationState(2, 1j, np.zeros(2, dtype=complex))
    b = ExcitationState(2, 1.0, np.zeros(2, dtype=complex))
    assert a.inner_product(b) == -1j


def test_validation():
    with pytest.raises(ValueError):
        ExcitationState(0, 1.0, np.zeros(0, dtype=complex))
    with pytest.raises(ValueError):
        ExcitationState(2, 1.0, np.zeros(3, dtype=complex))
    state = ExcitationState.vacuum(2)
    with pytest.raises(ValueError):
        state.apply_mode_phase(3, 0.1)
    with pytest.raises(ValueError):
        state.apply_swap(1, 1)
    with pytest.raises(ValueError):
        state.inner_product(ExcitationState.vacuum(3))


# -- lift ---------------------------------------------------------------------


def test_lift_vacuum_and_one_hot():
    dense = lift_to_dense(ExcitationState.vacuum(2))
    np.testing.assert_array_equal(dense.amplitudes, [1, 0, 0, 0])
    dense = lift_to_dense(ExcitationState.single_photon(2, 1))
    np.testing.assert_array_equal(dense.amplitudes, [0, 0, 1, 0])


def test_lift_w_state():
    w = ExcitationState(4, 0.0, np.full(4, 0.5, dtype=complex))
    dense = lift_to_dense(w)
    idx = [one_hot_index(4, j) for j in range(1, 5)]
    np.testing.assert_allclose(dense.amplitudes[idx], 0.5, atol=1e-15)
    assert np.count_nonzero(dense.amplitudes) == 4


def test_lift_respects_dense_cap():
    with pytest.raises(ValueError):
        lift_to_dense(ExcitationState.vacuum(21))


# -- oracle equivalence ---------------------------------------------------------


def test_compact_ops_match_dense_oracle():
    rng = np.random.default_rng(21)
    for _ in range(1000):
        n = int(rng.integers(2, 9))
        op = rng.choice(["phase", "phases", "x", "swap", "beamsplitter"])
        if op == "x":
            # flip precondition: only vacuum and the target mode populated
            mode = int(rng.integers(1, n + 1))
            pair = rng.standard_normal(2) + 1j * rng.standard_normal(2)
            pair /= np.linalg.norm(pair)
            amps = np.zeros(n, dtype=complex)
            amps[mode - 1] = pair[1]
            compact = ExcitationState(n, pair[0], amps)
            apply = lambda s: s.apply_x(mode)
        else:
            compact = random_compact(rng, n)
            if op == "phase":
                mode = int(rng.integers(1, n + 1))
                theta = float(rng.uniform(-7, 7))
                apply = lambda s: s.apply_mode_phase(mode, theta)
            elif op == "phases":
                thetas = rng.uniform(0, 2 * np.pi, n)
                apply = lambda s: s.apply_mode_phases(thetas)
            else:
                a, b = (int(v) for v in rng.choice(np.arange(1, n + 1), size=2, replace=False))
                method = "apply_swap" if op == "swap" else "apply_beamsplitter"
                apply = lambda s: getattr(s, method)(a, b)
        via_compact = lift_to_dense(apply(compact))
        via_dense = apply(lift_to_dense(compact))
        np.testing.assert_allclose(
            via_compact.amplitudes, via_dense.amplitudes, atol=1e-12
        )


def test_norm_preserved():
    rng = np.random.default_rng(22)
    for _ in range(200):
        n = int(rng.integers(2, 9))
        state = random_compact(rng, n)
        a, b = (int(v) for v in rng.choice(np.arange(1, n + 1), size=2, replace=False))
        for out in (
            state.apply_mode_phase(a, float(rng.uniform(-7, 7))),
            state.apply_mode_phases(rng.uniform(0, 2 * np.pi, n)),
            state.apply_swap(a, b),
            state.apply_beamsplitter(a, b),
        ):
            assert abs(out.norm_sq - 1.0) < 1e-12


def test_full_protocol_at_n_1000_is_fast():
    n = 1000
    thetas = np.linspace(0, 2 * np.pi, n, endpoint=False)
    start = time.perf_counter()
    result = run_local_protocol(n, PhaseConfig(thetas))
    elapsed = time.perf_counter() - start
    assert abs(result.final_state.norm_sq - 1.0) < 1e-12
    assert elapsed < 1.0
