"""Clauser-Horne 1974 (CH74) Bell test with detector positions as settings.

The CH74 inequality bounds a signed sum of joint detection probabilities for
any local hidden-variable model:

    -P(*,*) <= P12(r1,r2) - P12(r1,r2') + P12(r1',r2) + P12(r1',r2')
               - P12(r1',*) - P12(*,r2) <= 0,

where starred terms are setting-independent reference probabilities, equal
to eta^2 when each emitter is tied to its own detector by a single-mode
fiber. With the interference law P12 = (eta^2/2)(1 + V cos(phi2 - phi1)) the
normalized upper-bound margin becomes V*sqrt(2) - 1 at the Bell phase
differences (pi/4, 3pi/4, pi/4, pi/4): the inequality is violated exactly
when the visibility exceeds 1/sqrt(2).

All statistics here are reported divided by eta^2, which makes them
independent of the detection efficiency; ``ChResult.raw_terms`` restores the
raw probabilities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Iterable

from .correlations import (
    Efficiency,
    UNIT_EFFICIENCY,
    Visibility,
    joint_probability_at_phase,
)

SIX_TERMS = 6

#: Margins below this are numerical noise, not violations; at the critical
#: visibility the true margin is exactly zero and rounding must not flip it.
VIOLATION_TOL = 1e-12


@dataclass(frozen=True)
class ChSettings:
    """Four detector phases plus visibility and efficiency for one CH74 run.

    phi1/phi1_prime are the two settings of the first detector, phi2/phi2_prime
    those of the second.
    """

    phi1: float
    phi1_prime: float
    phi2: float
    phi2_prime: float
    v: Visibility
    eta: Efficiency

    def __post_init__(self) -> None:
        for name in ("phi1", "phi1_prime", "phi2", "phi2_prime"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")

    def phase_differences(self) -> tuple[float, float, float, float]:
        """Signed differences entering the four non-star terms."""
        return (
            self.phi2 - self.phi1,
            self.phi2_prime - self.phi1,
            self.phi2 - self.phi1_prime,
            self.phi2_prime - self.phi1_prime,
        )


@dataclass(frozen=True)
class ChResult:
    """Evaluated CH74 expression for one settings tuple.

    ``terms`` holds the six probabilities in units of eta^2 (order: r1r2,
    r1r2', r1'r2, r1'r2', r1'*, *r2); storing them normalized keeps the
    statistic bit-identical across efficiencies and exactly recomputable.
    ``statistic`` is the normalized upper-bound margin (violation iff > 0)
    and ``lower_margin`` the normalized headroom above the -P(*,*) bound.
    """

    statistic: float
    lower_margin: float
    terms: tuple[float, float, float, float, float, float]
    eta: float

    def __post_init__(self) -> None:
        if len(self.terms) != SIX_TERMS:
            raise ValueError("exactly six probability terms expected")

    @property
    def raw_terms(self) -> tuple[float, ...]:
        """The six probabilities with the eta^2 scale restored."""
        eta2 = self.eta * self.eta
        return tuple(eta2 * term for term in self.terms)

    def recompute_statistic(self) -> float:
        """Signed sum of the stored terms; equals ``statistic`` exactly."""
        t1, t2, t3, t4, t5, t6 = self.terms
        return t1 - t2 + t3 + t4 - t5 - t6

    @property
    def violated(self) -> bool:
        """True when the margin exceeds the numerical-noise tolerance."""
        return self.statistic > VIOLATION_TOL


def star_probability(eff: Efficiency) -> float:
    """Setting-independent coincidence probability eta^2 of the fiber reference."""
    return eff.eta * eff.eta


def ch_statistic(settings: ChSettings) -> ChResult:
    """Evaluate the CH74 expression at the given settings.

    The four setting-dependent terms follow the coincidence law at the
    settings' visibility; the two star terms are the exact constants of the
    single-mode-fiber reference, not simulated quantities. Terms are
    evaluated at unit efficiency so eta cancels identically.
    """
    u = [
        joint_probability_at_phase(delta, settings.v, UNIT_EFFICIENCY)
        for delta in settings.phase_differences()
    ]
    star = star_probability(UNIT_EFFICIENCY)
    terms = (u[0], u[1], u[2], u[3], star, star)
    statistic = terms[0] - terms[1] + terms[2] + terms[3] - terms[4] - terms[5]
    return ChResult(
        statistic=statistic,
        lower_margin=statistic + 1.0,
        terms=terms,
        eta=settings.eta.eta,
    )


def bell_angle_settings(
    vis: Visibility, eff: Efficiency = UNIT_EFFICIENCY
) -> ChSettings:
    """Detector phases realizing the Bell angles (pi/4, 3pi/4, pi/4, pi/4).

    The phases (0, pi/2, pi/4, 3pi/4) give signed differences
    (pi/4, 3pi/4, -pi/4, pi/4); the cosine parity makes the third sign
    immaterial, and the resulting margin is V*sqrt(2) - 1.
    """
    return ChSettings(
        phi1=0.0,
        phi1_prime=math.pi / 2,
        phi2=math.pi / 4,
        phi2_prime=3 * math.pi / 4,
        v=vis,
        eta=eff,
    )


def critical_visibility() -> float:
    """Visibility 1/sqrt(2) at which the upper-bound margin crosses zero."""
    return 1.0 / math.sqrt(2.0)


def scan(
    v_grid: Iterable[Visibility],
    settings_grid: Iterable[ChSettings],
) -> list[ChResult]:
    """Evaluate ch_statistic on every (visibility, settings) pair.

    Rows are ordered with the visibility as the outer loop and the settings
    as the inner loop; each settings tuple is re-evaluated at the grid
    visibility.
    """
    v_list = list(v_grid)
    s_list = list(settings_grid)
    if not v_list or not s_list:
        raise ValueError("scan grids must be nonempty")
    return [
        ch_statistic(replace(settings, v=vis))
        for vis in v_list
        for settings in s_list
    ]
