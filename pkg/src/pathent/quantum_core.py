"""Two-atom Hilbert-space algebra for a pair of two-level emitters.

The state space is spanned by {|ee>, |eg>, |ge>, |gg>} where the first letter
is the state of atom A and the second that of atom B. Spontaneous emission is
driven by the negative-frequency part of the far-field operator

    E^(-)(r) = (E0/sqrt(2)) * (S_A^- + exp(-i*phi(r)) * S_B^-),

with S_n^- = |g><e| the lowering operator of atom n and phi(r) the geometric
path phase at the detector. The gauge puts phase 0 on atom A and the full
relative phase on atom B; any common phase drops out of every modulus.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

from .geometry import DetectorSetting, EmitterPair, phase_at

_SQRT2 = math.sqrt(2.0)
NORMALIZATION_TOL = 1e-12


class Atom(Enum):
    A = "A"
    B = "B"


@dataclass(frozen=True)
class FieldParams:
    """Field amplitude E0 (arbitrary units) of a single emitted photon."""

    e0: float = 1.0

    def __post_init__(self) -> None:
        if not math.isfinite(self.e0) or self.e0 <= 0:
            raise ValueError(f"e0 must be positive and finite, got {self.e0!r}")


@dataclass(frozen=True)
class AtomicState:
    """Complex amplitudes over the two-atom basis {ee, eg, ge, gg}.

    States are value objects; operators return new instances. Intermediate
    states produced by operator application are generally unnormalized.
    """

    amp_ee: complex = 0j
    amp_eg: complex = 0j
    amp_ge: complex = 0j
    amp_gg: complex = 0j

    def __post_init__(self) -> None:
        for name in ("amp_ee", "amp_eg", "amp_ge", "amp_gg"):
            if not cmath.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")

    @classmethod
    def excited(cls) -> "AtomicState":
        """Both atoms excited, |ee>."""
        return cls(amp_ee=1.0 + 0j)

    @classmethod
    def ground(cls) -> "AtomicState":
        """Both atoms in the ground state, |gg>."""
        return cls(amp_gg=1.0 + 0j)

    @property
    def norm_squared(self) -> float:
        return (
            abs(self.amp_ee) ** 2
            + abs(self.amp_eg) ** 2
            + abs(self.amp_ge) ** 2
            + abs(self.amp_gg) ** 2
        )

    @property
    def is_normalized(self) -> bool:
        return abs(self.norm_squared - 1.0) <= NORMALIZATION_TOL

    def is_zero(self) -> bool:
        return self.norm_squared == 0.0

    def __add__(self, other: "AtomicState") -> "AtomicState":
        return AtomicState(
            amp_ee=self.amp_ee + other.amp_ee,
            amp_eg=self.amp_eg + other.amp_eg,
            amp_ge=self.amp_ge + other.amp_ge,
            amp_gg=self.amp_gg + other.amp_gg,
        )

    def scaled(self, factor: complex) -> "AtomicState":
        return AtomicState(
            amp_ee=factor * self.amp_ee,
            amp_eg=factor * self.amp_eg,
            amp_ge=factor * self.amp_ge,
            amp_gg=factor * self.amp_gg,
        )

    def __mul__(self, factor: complex) -> "AtomicState":
        return self.scaled(factor)

    __rmul__ = __mul__


def lowering(atom: Atom, state: AtomicState) -> AtomicState:
    """Apply the lowering operator |g><e| of the chosen atom.

    De-excites that atom where it is excited and annihilates the rest; the
    result is generally unnormalized.
    """
    if atom is Atom.A:
        return AtomicState(amp_ge=state.amp_ee, amp_gg=state.amp_eg)
    return AtomicState(amp_eg=state.amp_ee, amp_gg=state.amp_ge)


def apply_field_negative(
    geometry: EmitterPair,
    detector: DetectorSetting,
    params: FieldParams,
    state: AtomicState,
    global_phase: float = 0.0,
) -> AtomicState:
    """Apply E^(-)(r) = (E0/sqrt(2)) (S_A^- + e^{-i phi(r)} S_B^-) to the state.

    ``global_phase`` multiplies both emission paths by a common e^{i theta};
    it exists so gauge independence of every squared modulus can be checked.
    """
    phi = phase_at(geometry, detector)
    branch_a = lowering(Atom.A, state)
    branch_b = lowering(Atom.B, state).scaled(cmath.exp(-1j * phi))
    prefactor = (params.e0 / _SQRT2) * cmath.exp(1j * global_phase)
    return (branch_a + branch_b).scaled(prefactor)


def two_photon_amplitude(
    geometry: EmitterPair,
    det1: DetectorSetting,
    det2: DetectorSetting,
    params: FieldParams,
) -> complex:
    """Amplitude on |gg> after both detectors have absorbed a photon.

    Equals (E0^2/2) * (e^{-i phi(r2)} + e^{-i phi(r1)}); its squared modulus
    is the ideal-contrast coincidence signal.
    """
    once = apply_field_negative(geometry, det1, params, AtomicState.excited())
    twice = apply_field_negative(geometry, det2, params, once)
    return twice.amp_gg
