"""Compact simulator on the span of {vacuum, photon-in-mode-j}.

Stores one vacuum amplitude plus N one-photon amplitudes, so memory and
per-operation cost are O(N) and sweeps up to N = 1000 stay cheap.  The
operation set mirrors :class:`qsnsim.dense.QubitRegisterState`;
:func:`lift_to_dense` embeds a compact state for oracle cross-checks.

The bit-flip is the one operation that could leave this subspace: flipping
mode j while another mode is occupied would create a two-photon component.
The sequential protocol provably never does that, so the method enforces it
as a precondition instead of modelling it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dense import DENSE_MODE_CAP, QubitRegisterState, SectorError

_SECTOR_TOL = 1e-12
_INV_SQRT2 = 1.0 / np.sqrt(2.0)


@dataclass(frozen=True, eq=False)
class ExcitationState:
    """vacuum_amp * |0...0>  +  sum_j mode_amps[j-1] * |photon in mode j>."""

    num_modes: int
    vacuum_amp: complex
    mode_amps: np.ndarray

    def __post_init__(self):
        if self.num_modes < 1:
            raise ValueError(f"num_modes must be >= 1, got {self.num_modes}")
        arr = np.asarray(self.mode_amps, dtype=np.complex128)
        if arr.shape != (self.num_modes,):
            raise ValueError(
                f"expected {self.num_modes} mode amplitudes, got shape {arr.shape}"
            )
        object.__setattr__(self, "vacuum_amp", complex(self.vacuum_amp))
        object.__setattr__(self, "mode_amps", arr)

    @classmethod
    def vacuum(cls, num_modes: int) -> "ExcitationState":
        return cls(num_modes, 1.0, np.zeros(num_modes, dtype=np.complex128))

    @classmethod
    def single_photon(cls, num_modes: int, mode: int) -> "ExcitationState":
        if not 1 <= mode <= num_modes:
            raise ValueError(f"mode {mode} out of range 1..{num_modes}")
        amps = np.zeros(num_modes, dtype=np.complex128)
        amps[mode - 1] = 1.0
        return cls(num_modes, 0.0, amps)

    def _check_mode(self, mode: int):
        if not 1 <= mode <= self.num_modes:
            raise ValueError(f"mode {mode} out of range 1..{self.num_modes}")

    @property
    def norm_sq(self) -> float:
        return abs(self.vacuum_amp) ** 2 + float(
            np.vdot(self.mode_amps, self.mode_amps).real
        )

    def apply_mode_phase(self, mode: int, theta: float) -> "ExcitationState":
        self._check_mode(mode)
        amps = self.mode_amps.copy()
        amps[mode - 1] *= np.exp(-1j * theta)
        return ExcitationState(self.num_modes, self.vacuum_amp, amps)

    def apply_mode_phases(self, thetas) -> "ExcitationState":
        thetas = np.asarray(thetas, dtype=np.float64)
        if thetas.shape != (self.num_modes,):
            raise ValueError(
                f"expected {self.num_modes} phases, got shape {thetas.shape}"
            )
        return ExcitationState(
            self.num_modes, self.vacuum_amp, self.mode_amps * np.exp(-1j * thetas)
        )

    def apply_x(self, mode: int) -> "ExcitationState":
        """Exchange the vacuum amplitude with mode ``mode``'s amplitude.

        Requires every other mode to be (numerically) empty; otherwise the
        flip would populate a two-photon state this representation cannot
        hold.
        """
        self._check_mode(mode)
        others = np.abs(np.delete(self.mode_amps, mode - 1))
        if others.size and others.max() > _SECTOR_TOL:
            raise SectorError("bit-flip would create two photons")
        amps = self.mode_amps.copy()
        new_vacuum = amps[mode - 1]
        amps[mode - 1] = self.vacuum_amp
        return ExcitationState(self.num_modes, new_vacuum, amps)

    def apply_swap(self, mode_a: int, mode_b: int) -> "ExcitationState":
        self._check_mode(mode_a)
        self._check_mode(mode_b)
        if mode_a == mode_b:
            raise ValueError("swap requires two distinct modes")
        amps = self.mode_amps.copy()
        amps[mode_a - 1], amps[mode_b - 1] = amps[mode_b - 1], amps[mode_a - 1]
        return ExcitationState(self.num_modes, self.vacuum_amp, amps)

    def apply_beamsplitter(self, mode_a: int, mode_b: int) -> "ExcitationState":
        self._check_mode(mode_a)
        self._check_mode(mode_b)
        if mode_a == mode_b:
            raise ValueError("beam splitter requires two distinct modes")
        amps = self.mode_amps.copy()
        a, b = amps[mode_a - 1], amps[mode_b - 1]
        amps[mode_a - 1] = (a + b) * _INV_SQRT2
        amps[mode_b - 1] = (a - b) * _INV_SQRT2
        return ExcitationState(self.num_modes, self.vacuum_amp, amps)

    def inner_product(self, other: "ExcitationState") -> complex:
        if self.num_modes != other.num_modes:
            raise ValueError("inner product requires equal mode counts")
        return complex(
            np.conj(self.vacuum_amp) * other.vacuum_amp
            + np.vdot(self.mode_amps, other.mode_amps)
        )


def lift_to_dense(state: ExcitationState) -> QubitRegisterState:
    """Embed a compact state into the full 2^N register (N <= dense cap)."""
    n = state.num_modes
    if n > DENSE_MODE_CAP:
        raise ValueError(f"cannot lift {n} modes; dense back end caps at {DENSE_MODE_CAP}")
    amps = np.zeros(1 << n, dtype=np.complex128)
    amps[0] = state.vacuum_amp
    amps[1 << (n - np.arange(1, n + 1))] = state.mode_amps
    return QubitRegisterState(n, amps)
