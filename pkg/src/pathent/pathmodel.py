"""Quantum-path picture of the coincidence signal in a four-mode sector.

Once post-selection demands exactly one photon at each of two far-field
detectors, only four photonic modes k1..k4 survive out of the full emission
mode space: k1/k2 propagate toward the first detector and k3/k4 toward the
second. The two photons then have exactly two indistinguishable routes,

    |path state> = |1 0 0 1> + |0 1 1 0>,

one photon in k1 and one in k4, or one in k2 and one in k3. This state is
path entangled even though the pre-selection emission state is separable:
the entanglement is created by detection-induced mode selection.

A detection event removes one photon and imprints the position-dependent
phase of the longer path:

    first detector:  |0001><1001| + e^{i phi1} |0010><0110|
    second detector: |0000><0010| + e^{i phi2} |0000><0001|

Chaining both detectors through the path state leaves a vacuum amplitude
e^{i phi2} + e^{i phi1} whose squared modulus, 2*(1 + cos(phi2 - phi1)),
reproduces the operator-algebra coincidence fringe up to a constant factor.

States live in the full 16-dimensional 0/1-occupation space so that the
Schmidt-rank entanglement witness works for arbitrary states, not just the
physically reachable ones.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping

import numpy as np

from .correlations import Visibility

MODES = (1, 2, 3, 4)

Pattern = tuple[int, int, int, int]


class DetectorStage(Enum):
    """Which of the two detection events an operator describes."""

    FIRST = "first"
    SECOND = "second"


class FourModeState:
    """Complex amplitudes over the 16 occupation patterns of modes k1..k4.

    Wraps an immutable (2, 2, 2, 2) complex array indexed by the occupation
    numbers (n1, n2, n3, n4), each 0 or 1.
    """

    __slots__ = ("_amp",)

    def __init__(self, amplitudes: np.ndarray) -> None:
        amp = np.array(amplitudes, dtype=complex)
        if amp.shape != (2, 2, 2, 2):
            raise ValueError(f"amplitudes must have shape (2,2,2,2), got {amp.shape}")
        if not np.all(np.isfinite(amp.view(float))):
            raise ValueError("amplitudes must be finite")
        amp.setflags(write=False)
        self._amp = amp

    @classmethod
    def zero(cls) -> "FourModeState":
        return cls(np.zeros((2, 2, 2, 2), dtype=complex))

    @classmethod
    def from_terms(cls, terms: Mapping[Pattern, complex]) -> "FourModeState":
        amp = np.zeros((2, 2, 2, 2), dtype=complex)
        for pattern, value in terms.items():
            amp[pattern] = value
        return cls(amp)

    @classmethod
    def basis_ket(cls, pattern: Pattern) -> "FourModeState":
        return cls.from_terms({pattern: 1.0 + 0j})

    @property
    def amplitudes(self) -> np.ndarray:
        """Read-only view of the amplitude array."""
        return self._amp

    def amplitude(self, pattern: Pattern) -> complex:
        return complex(self._amp[pattern])

    @property
    def norm_squared(self) -> float:
        return float(np.sum(np.abs(self._amp) ** 2))

    def is_zero(self) -> bool:
        return not np.any(self._amp)

    def normalized(self) -> "FourModeState":
        norm = math.sqrt(self.norm_squared)
        if norm == 0.0:
            raise ValueError("cannot normalize the zero state")
        return FourModeState(self._amp / norm)

    def __add__(self, other: "FourModeState") -> "FourModeState":
        return FourModeState(self._amp + other._amp)

    def __mul__(self, factor: complex) -> "FourModeState":
        return FourModeState(self._amp * factor)

    __rmul__ = __mul__

    def terms(self) -> dict[Pattern, complex]:
        """Nonzero amplitudes keyed by occupation pattern."""
        out: dict[Pattern, complex] = {}
        for pattern in itertools.product((0, 1), repeat=4):
            value = complex(self._amp[pattern])
            if value != 0:
                out[pattern] = value
        return out


@dataclass(frozen=True)
class Bipartition:
    """A split of the four modes into two disjoint, nonempty groups."""

    left: frozenset[int]
    right: frozenset[int]

    def __init__(self, left: Iterable[int], right: Iterable[int]) -> None:
        object.__setattr__(self, "left", frozenset(left))
        object.__setattr__(self, "right", frozenset(right))
        self.__post_init__()

    def __post_init__(self) -> None:
        if not self.left or not self.right:
            raise ValueError("both sides of a bipartition must be nonempty")
        if self.left & self.right:
            raise ValueError("bipartition sides must be disjoint")
        if self.left | self.right != set(MODES):
            raise ValueError(f"bipartition must cover exactly the modes {MODES}")


#: Split separating the first-detector modes from the second-detector modes.
DETECTOR_BIPARTITION = Bipartition(left=(1, 2), right=(3, 4))


def postselected_state(normalized: bool = False) -> FourModeState:
    """Two-photon state surviving one-photon-per-detector post-selection.

    Equal-weight superposition of the two quantum paths |1001> and |0110>;
    pass ``normalized=True`` for amplitudes 1/sqrt(2) instead of 1.
    """
    weight = 1.0 / math.sqrt(2.0) if normalized else 1.0
    return FourModeState.from_terms(
        {(1, 0, 0, 1): weight, (0, 1, 1, 0): weight}
    )


def apply_detector(
    stage: DetectorStage, phase: float, state: FourModeState
) -> FourModeState:
    """Remove one photon at a detector, imprinting its path phase.

    The first detection takes |1001> -> |0001| and |0110> -> e^{i phase}|0010>;
    the second collapses what remains onto the vacuum, |0010> -> |0000> and
    |0001> -> e^{i phase}|0000>. Both maps are linear and intentionally
    non-unitary; amplitudes are squared only at the very end.
    """
    if not math.isfinite(phase):
        raise ValueError(f"phase must be finite, got {phase!r}")
    amp = np.zeros((2, 2, 2, 2), dtype=complex)
    if stage is DetectorStage.FIRST:
        amp[0, 0, 0, 1] = state.amplitude((1, 0, 0, 1))
        amp[0, 0, 1, 0] = cmath.exp(1j * phase) * state.amplitude((0, 1, 1, 0))
    elif stage is DetectorStage.SECOND:
        amp[0, 0, 0, 0] = state.amplitude((0, 0, 1, 0)) + cmath.exp(
            1j * phase
        ) * state.amplitude((0, 0, 0, 1))
    else:
        raise ValueError(f"unknown detector stage {stage!r}")
    return FourModeState(amp)


def final_amplitude(phi1: float, phi2: float) -> complex:
    """Vacuum amplitude e^{i phi2} + e^{i phi1} after both detections."""
    return cmath.exp(1j * phi2) + cmath.exp(1j * phi1)


def g2_path(phi1: float, phi2: float, vis: Visibility) -> float:
    """Coincidence signal of the path model, 2*(1 + v*cos(phi2 - phi1)).

    At full contrast this is exactly |final_amplitude|^2; visibility damps
    only the interference cross term.
    """
    return 2.0 * (1.0 + vis.v * math.cos(phi2 - phi1))


def _bipartite_matrix(state: FourModeState, cut: Bipartition) -> np.ndarray:
    """Amplitudes reshaped into a (left occupations) x (right occupations) matrix."""
    left = sorted(cut.left)
    right = sorted(cut.right)
    matrix = np.zeros((2 ** len(left), 2 ** len(right)), dtype=complex)
    for pattern in itertools.product((0, 1), repeat=4):
        row = 0
        for mode in left:
            row = 2 * row + pattern[mode - 1]
        col = 0
        for mode in right:
            col = 2 * col + pattern[mode - 1]
        matrix[row, col] = state.amplitudes[pattern]
    return matrix


def schmidt_coefficients(state: FourModeState, cut: Bipartition) -> np.ndarray:
    """Singular values of the bipartitioned amplitude matrix, descending."""
    if state.is_zero():
        raise ValueError("Schmidt decomposition of the zero state is undefined")
    return np.linalg.svd(_bipartite_matrix(state, cut), compute_uv=False)


def schmidt_rank(
    state: FourModeState, cut: Bipartition, tol: float = 1e-10
) -> int:
    """Number of Schmidt coefficients above tol relative to the largest.

    Rank 1 means the state factorizes across the cut; rank >= 2 witnesses
    entanglement between the two mode groups.
    """
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol!r}")
    coeffs = schmidt_coefficients(state, cut)
    return int(np.count_nonzero(coeffs > tol * coeffs[0]))
