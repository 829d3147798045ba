"""Far-field geometry of two emitters and the detectors observing them.

Two point emitters separated by a distance d are observed in the far field.
A detector at observation angle xi (measured from the perpendicular bisector
of the emitter axis, double-slit convention) sees the two emission paths with
a relative phase kd*sin(xi), where k is the transition wavenumber. Only the
dimensionless product kd matters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

HALF_PI = math.pi / 2


@dataclass(frozen=True)
class EmitterPair:
    """Two emitters a distance d apart, reduced to the product kd = 2*pi*d/lambda."""

    kd: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.kd):
            raise ValueError(f"kd must be finite, got {self.kd!r}")
        if self.kd <= 0:
            raise ValueError(f"kd must be positive, got {self.kd!r}")


@dataclass(frozen=True)
class DetectorSetting:
    """A far-field detector at observation angle xi in [-pi/2, pi/2] radians."""

    xi: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.xi):
            raise ValueError(f"xi must be finite, got {self.xi!r}")
        if not -HALF_PI <= self.xi <= HALF_PI:
            raise ValueError(f"xi must lie in [-pi/2, pi/2], got {self.xi!r}")


def phase_at(geometry: EmitterPair, detector: DetectorSetting) -> float:
    """Relative phase kd*sin(xi) between the two emission paths at the detector."""
    return geometry.kd * math.sin(detector.xi)


def phase_difference(
    geometry: EmitterPair, det_a: DetectorSetting, det_b: DetectorSetting
) -> float:
    """Phase at det_b minus phase at det_a; the argument of the interference fringe."""
    return phase_at(geometry, det_b) - phase_at(geometry, det_a)


def detector_for_phase(geometry: EmitterPair, phase: float) -> DetectorSetting:
    """Place a detector so that its path phase equals ``phase``.

    Inverts phase_at via arcsin. Raises ValueError when |phase| > kd, i.e.
    when no observation angle can realize the requested phase.
    """
    if not math.isfinite(phase):
        raise ValueError(f"phase must be finite, got {phase!r}")
    ratio = phase / geometry.kd
    if abs(ratio) > 1.0:
        raise ValueError(
            f"phase {phase!r} is not realizable: |phase| exceeds kd = {geometry.kd!r}"
        )
    return DetectorSetting(xi=math.asin(ratio))
