"""Analytic first- and second-order correlation functions of the emitted light.

For two initially excited emitters and coincident far-field detection the
first-order function is flat, G1 = E0^2, while the second-order function
carries the two-path interference fringe

    G2(r1, r2) = (E0^4 / 2) * (1 + V * cos(phi(r2) - phi(r1))),

with V in [0, 1] the fringe visibility. Detection probabilities follow by
scaling with a single efficiency eta: P(r1) = eta, P12 = (eta^2/E0^4) * G2,
and the conditional probability P(r2|r1) = P12 / P(r1).

Each detector-level function has an ``*_at_phase`` companion taking the
phase difference directly; the detector-level form just converts geometry
to a phase difference first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .geometry import DetectorSetting, EmitterPair, phase_difference
from .quantum_core import FieldParams


@dataclass(frozen=True)
class Visibility:
    """Fringe contrast of the coincidence signal, v in [0, 1]."""

    v: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.v) or not 0.0 <= self.v <= 1.0:
            raise ValueError(f"visibility must lie in [0, 1], got {self.v!r}")


@dataclass(frozen=True)
class Efficiency:
    """Overall per-photon detection efficiency, eta in (0, 1]."""

    eta: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.eta) or not 0.0 < self.eta <= 1.0:
            raise ValueError(f"efficiency must lie in (0, 1], got {self.eta!r}")


#: Ideal detection, used to express setting probabilities in units of eta^2.
UNIT_EFFICIENCY = Efficiency(eta=1.0)

#: Ideal fringe contrast.
UNIT_VISIBILITY = Visibility(v=1.0)


def fringe(delta_phi: float, vis: Visibility) -> float:
    """Dimensionless interference factor 1 + v*cos(delta_phi), in [0, 2]."""
    return 1.0 + vis.v * math.cos(delta_phi)


def g1(params: FieldParams, detector: DetectorSetting | None = None) -> float:
    """First-order correlation function, E0^2 at every detector position.

    The detector argument is accepted (and ignored) to make the position
    independence directly exercisable.
    """
    return params.e0**2


def g2_at_phase(delta_phi: float, params: FieldParams, vis: Visibility) -> float:
    """Second-order correlation function at a given phase difference."""
    return 0.5 * params.e0**4 * fringe(delta_phi, vis)


def g2(
    geometry: EmitterPair,
    det1: DetectorSetting,
    det2: DetectorSetting,
    params: FieldParams,
    vis: Visibility,
) -> float:
    """Second-order correlation function for a detector pair."""
    return g2_at_phase(phase_difference(geometry, det1, det2), params, vis)


def marginal_probability(
    eff: Efficiency,
    params: FieldParams,
    detector: DetectorSetting | None = None,
) -> float:
    """Probability of a single detection: (eta/E0^2)*G1 = eta, position-free."""
    return eff.eta


def conditional_probability_at_phase(
    delta_phi: float, vis: Visibility, eff: Efficiency
) -> float:
    """Probability of the second detection given the first, (eta/2)*(1 + v*cos)."""
    return eff.eta * (0.5 * fringe(delta_phi, vis))


def conditional_probability(
    geometry: EmitterPair,
    det2_given: DetectorSetting,
    det1: DetectorSetting,
    params: FieldParams,
    vis: Visibility,
    eff: Efficiency,
) -> float:
    """Probability of a photon at det2_given once another was seen at det1."""
    marginal = marginal_probability(eff, params)
    if marginal <= 0.0:
        raise ZeroDivisionError("marginal detection probability must be positive")
    delta = phase_difference(geometry, det1, det2_given)
    return conditional_probability_at_phase(delta, vis, eff)


def joint_probability_at_phase(
    delta_phi: float, vis: Visibility, eff: Efficiency
) -> float:
    """Coincidence probability (eta^2/2)*(1 + v*cos(delta_phi)), in [0, eta^2].

    Built as marginal * conditional so the chain rule holds bit-exactly.
    """
    return eff.eta * conditional_probability_at_phase(delta_phi, vis, eff)


def joint_probability(
    geometry: EmitterPair,
    det1: DetectorSetting,
    det2: DetectorSetting,
    params: FieldParams,
    vis: Visibility,
    eff: Efficiency,
) -> float:
    """Coincidence probability (eta^2/E0^4)*G2 for a detector pair."""
    return joint_probability_at_phase(
        phase_difference(geometry, det1, det2), vis, eff
    )
