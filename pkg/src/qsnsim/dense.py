"""Dense 2^N statevector simulator over single-rail optical modes.

This is the brute-force oracle: every operation acts on the full register,
so anything the compact simulator does can be cross-checked here.

Conventions
-----------
* Single-rail encoding: |0>_j means mode j is empty, |1>_j means the photon
  occupies mode j.
* Modes are 1-based.  Mode 1 is the leftmost (most significant) position in
  the ket string |b_1 b_2 ... b_N>, so basis index k has mode j occupied iff
  bit (N - j) of k is set.
* Phase plates multiply occupied-mode amplitudes by exp(-i*theta).
* The 50/50 beam splitter uses the real orthogonal convention
  (|10> + |01>)/sqrt(2), (|10> - |01>)/sqrt(2); it is its own inverse on the
  single-photon pair and only the amplitude moduli matter downstream.

The register is capped at 20 modes (16 MiB of amplitudes); larger sweeps
must use :mod:`qsnsim.excitation`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

DENSE_MODE_CAP = 20

_SECTOR_TOL = 1e-12
_INV_SQRT2 = 1.0 / np.sqrt(2.0)


class SectorError(ValueError):
    """An operation would leave (or requires leaving) the <=1-photon sector."""


def one_hot_index(num_modes: int, mode: int) -> int:
    """Basis index of the state with a single photon in ``mode``."""
    return 1 << (num_modes - mode)


@dataclass(frozen=True, eq=False)
class QubitRegisterState:
    """Amplitudes over all 2^N single-rail basis states."""

    num_modes: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if not 1 <= self.num_modes <= DENSE_MODE_CAP:
            raise ValueError(
                f"num_modes must be in [1, {DENSE_MODE_CAP}], got {self.num_modes}"
            )
        arr = np.asarray(self.amplitudes, dtype=np.complex128)
        if arr.shape != (1 << self.num_modes,):
            raise ValueError(
                f"expected {1 << self.num_modes} amplitudes, got shape {arr.shape}"
            )
        object.__setattr__(self, "amplitudes", arr)

    # -- constructors ------------------------------------------------------

    @classmethod
    def vacuum(cls, num_modes: int) -> "QubitRegisterState":
        amps = np.zeros(1 << num_modes, dtype=np.complex128)
        amps[0] = 1.0
        return cls(num_modes, amps)

    @classmethod
    def single_photon(cls, num_modes: int, mode: int) -> "QubitRegisterState":
        if not 1 <= mode <= num_modes:
            raise ValueError(f"mode {mode} out of range 1..{num_modes}")
        amps = np.zeros(1 << num_modes, dtype=np.complex128)
        amps[one_hot_index(num_modes, mode)] = 1.0
        return cls(num_modes, amps)

    @classmethod
    def from_amplitudes(cls, num_modes: int, amplitudes) -> "QubitRegisterState":
        arr = np.asarray(amplitudes, dtype=np.complex128).copy()
        if not np.all(np.isfinite(arr.view(np.float64))):
            raise ValueError("amplitudes must be finite")
        return cls(num_modes, arr)

    # -- helpers -----------------------------------------------------------

    def _check_mode(self, mode: int):
        if not 1 <= mode <= self.num_modes:
            raise ValueError(f"mode {mode} out of range 1..{self.num_modes}")

    def _mode_slice(self, assignments: dict[int, int]) -> tuple:
        """Slicer fixing the bit value of the given modes, e.g. {a: 1, b: 0}."""
        idx: list = [slice(None)] * self.num_modes
        for mode, value in assignments.items():
            idx[mode - 1] = value
        return tuple(idx)

    def _tensor(self, amps: np.ndarray) -> np.ndarray:
        return amps.reshape((2,) * self.num_modes)

    @property
    def norm_sq(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    # -- operations (each returns a new state) -----------------------------

    def apply_mode_phase(self, mode: int, theta: float) -> "QubitRegisterState":
        """Multiply every amplitude with ``mode`` occupied by exp(-i*theta)."""
        self._check_mode(mode)
        out = self.amplitudes.copy()
        self._tensor(out)[self._mode_slice({mode: 1})] *= np.exp(-1j * theta)
        return QubitRegisterState(self.num_modes, out)

    def apply_mode_phases(self, thetas) -> "QubitRegisterState":
        """One plate per mode: exp(-i*thetas[j-1]) on each occupied mode j."""
        thetas = np.asarray(thetas, dtype=np.float64)
        if thetas.shape != (self.num_modes,):
            raise ValueError(
                f"expected {self.num_modes} phases, got shape {thetas.shape}"
            )
        out = self.amplitudes.copy()
        view = self._tensor(out)
        for mode in range(1, self.num_modes + 1):
            view[self._mode_slice({mode: 1})] *= np.exp(-1j * thetas[mode - 1])
        return QubitRegisterState(self.num_modes, out)

    def apply_x(self, mode: int) -> "QubitRegisterState":
        """Exchange the |0>_mode and |1>_mode amplitude blocks."""
        self._check_mode(mode)
        out = np.flip(self._tensor(self.amplitudes), axis=mode - 1).copy()
        return QubitRegisterState(self.num_modes, out.reshape(-1))

    def apply_swap(self, mode_a: int, mode_b: int) -> "QubitRegisterState":
        self._check_mode(mode_a)
        self._check_mode(mode_b)
        if mode_a == mode_b:
            raise ValueError("swap requires two distinct modes")
        out = np.swapaxes(self._tensor(self.amplitudes), mode_a - 1, mode_b - 1).copy()
        return QubitRegisterState(self.num_modes, out.reshape(-1))

    def apply_beamsplitter(self, mode_a: int, mode_b: int) -> "QubitRegisterState":
        """50/50 splitter on the {|1_a 0_b>, |0_a 1_b>} amplitude pairs.

        Input must carry no |1_a 1_b> weight; the model never leaves the
        single-photon sector, so a two-photon component is a usage error.
        """
        self._check_mode(mode_a)
        self._check_mode(mode_b)
        if mode_a == mode_b:
            raise ValueError("beam splitter requires two distinct modes")
        view = self._tensor(self.amplitudes)
        both = view[self._mode_slice({mode_a: 1, mode_b: 1})]
        if np.max(np.abs(both)) > _SECTOR_TOL:
            raise SectorError("beam splitter outside single-photon sector")
        out = self.amplitudes.copy()
        oview = self._tensor(out)
        upper = self._mode_slice({mode_a: 1, mode_b: 0})
        lower = self._mode_slice({mode_a: 0, mode_b: 1})
        a10 = oview[upper].copy()
        a01 = oview[lower].copy()
        oview[upper] = (a10 + a01) * _INV_SQRT2
        oview[lower] = (a10 - a01) * _INV_SQRT2
        return QubitRegisterState(self.num_modes, out)

    def inner_product(self, other: "QubitRegisterState") -> complex:
        """<self|other>, conjugating this state's amplitudes."""
        if self.num_modes != other.num_modes:
            raise ValueError("inner product requires equal mode counts")
        return complex(np.vdot(self.amplitudes, other.amplitudes))
