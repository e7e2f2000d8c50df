"""Unit and property tests for the dense 2^N register."""

import numpy as np
import pytest

from qsnsim import DENSE_MODE_CAP, QubitRegisterState, SectorError, one_hot_index

S2 = 1.0 / np.sqrt(2.0)


def plus_state():
    return QubitRegisterState(1, np.array([S2, S2], dtype=complex))


def random_state(rng, n):
    amps = rng.standard_normal(1 << n) + 1j * rng.standard_normal(1 << n)
    return QubitRegisterState(n, amps / np.linalg.norm(amps))


# -- constructors and validation ---------------------------------------------


def test_vacuum_and_single_photon():
    vac = QubitRegisterState.vacuum(3)
    assert vac.amplitudes[0] == 1.0
    assert np.count_nonzero(vac.amplitudes) == 1
    ph = QubitRegisterState.single_photon(3, 2)
    assert ph.amplitudes[one_hot_index(3, 2)] == 1.0
    assert np.count_nonzero(ph.amplitudes) == 1


def test_mode_one_is_most_significant_bit():
    # |b_1 b_2 b_3> with mode 1 leftmost: photon in mode 1 is index 0b100
    assert one_hot_index(3, 1) == 4
    assert one_hot_index(3, 3) == 1


def test_rejects_wrong_length_and_cap():
    with pytest.raises(ValueError):
        QubitRegisterState(2, np.zeros(3, dtype=complex))
    with pytest.raises(ValueError):
        QubitRegisterState(0, np.zeros(1, dtype=complex))
    with pytest.raises(ValueError):
        QubitRegisterState.vacuum(DENSE_MODE_CAP + 1)


def test_from_amplitudes_rejects_nonfinite():
    with pytest.raises(ValueError):
        QubitRegisterState.from_amplitudes(1, [np.nan, 0.0])


# -- mode phase ---------------------------------------------------------------


def test_phase_zero_is_identity():
    state = plus_state()
    out = state.apply_mode_phase(1, 0.0)
    np.testing.assert_array_equal(out.amplitudes, state.amplitudes)


def test_phase_pi_flips_sign():
    out = plus_state().apply_mode_phase(1, np.pi)
    np.testing.assert_allclose(out.amplitudes, [S2, -S2], atol=1e-15)


def test_phase_half_pi_gives_minus_i():
    state = QubitRegisterState.single_photon(1, 1)
    out = state.apply_mode_phase(1, np.pi / 2)
    np.testing.assert_allclose(out.amplitudes[1], -1j, atol=1e-15)


def test_phase_leaves_empty_modes_alone():
    rng = np.random.default_rng(5)
    state = random_state(rng, 3)
    out = state.apply_mode_phase(2, 1.234)
    mask = (np.arange(8) >> 1) & 1 == 0  # mode 2 is the middle bit
    np.testing.assert_array_equal(out.amplitudes[mask], state.amplitudes[mask])


def test_phase_mode_out_of_range():
    with pytest.raises(ValueError):
        plus_state().apply_mode_phase(2, 1.0)
    with pytest.raises(ValueError):
        plus_state().apply_mode_phase(0, 1.0)


def test_mode_phases_matches_composition():
    rng = np.random.default_rng(6)
    state = random_state(rng, 4)
    thetas = rng.uniform(0, 2 * np.pi, 4)
    combined = state.apply_mode_phases(thetas)
    stepwise = state
    for mode in range(1, 5):
        stepwise = stepwise.apply_mode_phase(mode, thetas[mode - 1])
    np.testing.assert_allclose(combined.amplitudes, stepwise.amplitudes, atol=1e-14)


# -- bit flip -----------------------------------------------------------------


def test_x_moves_photon_in():
    out = QubitRegisterState.vacuum(3).apply_x(1)
    assert out.amplitudes[one_hot_index(3, 1)] == 1.0


def test_x_exchanges_amplitudes():
    state = QubitRegisterState(1, np.array([0.6, 0.8j]))
    out = state.apply_x(1)
    np.testing.assert_allclose(out.amplitudes, [0.8j, 0.6], atol=1e-15)


def test_x_is_involution():
    rng = np.random.default_rng(7)
    for _ in range(20):
        state = random_state(rng, 4)
        mode = int(rng.integers(1, 5))
        twice = state.apply_x(mode).apply_x(mode)
        np.testing.assert_allclose(twice.amplitudes, state.amplitudes, atol=1e-15)


# -- swap ---------------------------------------------------------------------


def test_swap_moves_excitation():
    out = QubitRegisterState.single_photon(2, 1).apply_swap(1, 2)
    np.testing.assert_allclose(out.amplitudes, [0, 1, 0, 0], atol=1e-15)


def test_swap_fixes_symmetric_patterns():
    state = QubitRegisterState(2, np.array([0.6, 0, 0, 0.8]))
    out = state.apply_swap(1, 2)
    np.testing.assert_array_equal(out.amplitudes, state.amplitudes)


def test_swap_is_involution():
    rng = np.random.default_rng(8)
    for _ in range(20):
        state = random_state(rng, 5)
        a, b = rng.choice(np.arange(1, 6), size=2, replace=False)
        twice = state.apply_swap(int(a), int(b)).apply_swap(int(a), int(b))
        np.testing.assert_allclose(twice.amplitudes, state.amplitudes, atol=1e-15)


def test_swap_rejects_bad_modes():
    state = QubitRegisterState.vacuum(2)
    with pytest.raises(ValueError):
        state.apply_swap(1, 1)
    with pytest.raises(ValueError):
        state.apply_swap(1, 3)


# -- beam splitter --------------------------------------------------------------


def test_beamsplitter_splits_single_photon():
    out = QubitRegisterState.single_photon(2, 1).apply_beamsplitter(1, 2)
    np.testing.assert_allclose(out.amplitudes, [0, S2, S2, 0], atol=1e-15)


def test_beamsplitter_keeps_vacuum():
    out = QubitRegisterState.vacuum(2).apply_beamsplitter(1, 2)
    np.testing.assert_array_equal(out.amplitudes, QubitRegisterState.vacuum(2).amplitudes)


def test_beamsplitter_merges_symmetric_pair():
    state = QubitRegisterState(2, np.array([0, S2, S2, 0]))
    out = state.apply_beamsplitter(1, 2)
    np.testing.assert_allclose(out.amplitudes, [0, 0, 1, 0], atol=1e-15)


def test_beamsplitter_rejects_two_photons():
    state = QubitRegisterState(2, np.array([0, 0, 0, 1.0]))
    with pytest.raises(SectorError, match="single-photon sector"):
        state.apply_beamsplitter(1, 2)


def test_beamsplitter_conserves_photon_mass():
    rng = np.random.default_rng(9)
    n = 4
    idx = np.array([one_hot_index(n, j) for j in range(1, n + 1)])
    for _ in range(50):
        amps = np.zeros(1 << n, dtype=complex)
        raw = rng.standard_normal(n + 1) + 1j * rng.standard_normal(n + 1)
        raw /= np.linalg.norm(raw)
        amps[0] = raw[0]
        amps[idx] = raw[1:]
        state = QubitRegisterState(n, amps)
        a, b = rng.choice(np.arange(1, n + 1), size=2, replace=False)
        out = state.apply_beamsplitter(int(a), int(b))
        mass_in = np.sum(np.abs(state.amplitudes[idx]) ** 2)
        mass_out = np.sum(np.abs(out.amplitudes[idx]) ** 2)
        assert abs(mass_out - mass_in) < 1e-12


# -- inner product --------------------------------------------------------------


def test_inner_product_normalization():
    rng = np.random.default_rng(10)
    state = random_state(rng, 3)
    assert abs(state.inner_product(state) - 1.0) < 1e-12


def test_inner_product_orthogonal_basis():
    vac = QubitRegisterState.vacuum(3)
    ph = QubitRegisterState.single_photon(3, 1)
    assert vac.inner_product(ph) == 0.0


def test_inner_product_plus_minus():
    plus = plus_state()
    minus = QubitRegisterState(1, np.array([S2, -S2]))
    assert abs(plus.inner_product(minus)) < 1e-15


def test_inner_product_conjugates_left():
    a = QubitRegisterState(1, np.array([1.0, 0.0]))
    b = QubitRegisterState(1, np.array([1j, 0.0]))
    assert a.inner_product(b) == 1j
    assert b.inner_product(a) == -1j


def test_inner_product_dimension_mismatch():
    with pytest.raises(ValueError):
        QubitRegisterState.vacuum(2).inner_product(QubitRegisterState.vacuum(3))


# -- global properties -----------------------------------------------------------


def test_unitarity_on_random_states():
    rng = np.random.default_rng(11)
    for _ in range(100):
        n = int(rng.integers(2, 9))
        state = random_state(rng, n)
        mode = int(rng.integers(1, n + 1))
        a, b = rng.choice(np.arange(1, n + 1), size=2, replace=False)
        for out in (
            state.apply_mode_phase(mode, float(rng.uniform(-7, 7))),
            state.apply_x(mode),
            state.apply_swap(int(a), int(b)),
        ):
            assert abs(out.norm_sq - 1.0) < 1e-12
            assert np.all(np.isfinite(out.amplitudes.view(np.float64)))


def test_phase_commutes_with_x_on_other_mode():
    rng = np.random.default_rng(12)
    for _ in range(100):
        n = int(rng.integers(2, 9))
        state = random_state(rng, n)
        a, b = rng.choice(np.arange(1, n + 1), size=2, replace=False)
        theta = float(rng.uniform(-7, 7))
        one = state.apply_mode_phase(int(a), theta).apply_x(int(b))
        two = state.apply_x(int(b)).apply_mode_phase(int(a), theta)
        np.testing.assert_allclose(one.amplitudes, two.amplitudes, atol=1e-12)


def test_operations_return_new_states():
    state = plus_state()
    before = state.amplitudes.copy()
    state.apply_mode_phase(1, 2.0)
    state.apply_x(1)
    np.testing.assert_array_equal(state.amplitudes, before)
