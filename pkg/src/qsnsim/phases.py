"""Phase-plate configurations shared by both simulator back ends."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class PhaseConfig:
    """Phases imparted by the N plates.

    ``thetas[j-1]`` is the phase a photon picks up while crossing plate j,
    already including the interaction time: theta_j = omega_j * t.  The
    ``interaction_time`` field records t (default 1) for bookkeeping only;
    nothing downstream rescales the phases.
    """

    thetas: np.ndarray
    interaction_time: float = 1.0

    def __post_init__(self):
        arr = np.atleast_1d(np.asarray(self.thetas, dtype=np.float64))
        if arr.ndim != 1 or arr.size < 1:
            raise ValueError("thetas must be a non-empty 1-D array")
        if not np.all(np.isfinite(arr)):
            raise ValueError("thetas must be finite")
        if not np.isfinite(self.interaction_time):
            raise ValueError("interaction_time must be finite")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "thetas", arr)

    @property
    def num_modes(self) -> int:
        return self.thetas.size

    @classmethod
    def constant(cls, theta: float, num_modes: int, interaction_time: float = 1.0) -> "PhaseConfig":
        """All plates impart the same phase ``theta``."""
        if num_modes < 1:
            raise ValueError("num_modes must be >= 1")
        return cls(np.full(num_modes, theta), interaction_time)
