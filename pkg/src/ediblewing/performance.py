"""Thrust-to-weight sizing and margin checks."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DesignError
from .sizing import EnvironmentSpec


@dataclass(frozen=True)
class PropulsionSpec:
    """Drag coefficient, motor thrust ceiling, and the computed T/W ratios."""

    drag_coefficient: float = 0.045
    max_thrust: float = 1.079  # N
    required_tw_cruise: float | None = None
    max_tw: float | None = None
    thrust_match_tw: float | None = None

    def __post_init__(self):
        if self.drag_coefficient <= 0:
            raise DesignError("drag coefficient must be > 0")
        if self.max_thrust < 0:
            raise DesignError("maximum thrust must be >= 0")
        for label, value in (
            ("required cruise T/W", self.required_tw_cruise),
            ("maximum T/W", self.max_tw),
            ("thrust-match T/W", self.thrust_match_tw),
        ):
            if value is not None and value < 0:
                raise DesignError(f"{label} must be >= 0")


@dataclass(frozen=True)
class ThrustMarginReport:
    """Available-over-required T/W margins; pass needs every margin > 1."""

    margins: tuple[float, ...]
    verdict: bool


def cruise_thrust_to_weight(
    gross_weight: float,
    reference_area: float,
    aspect_ratio: float,
    oswald: float,
    cruise_speed: float,
    drag_coefficient: float,
    env: EnvironmentSpec = EnvironmentSpec(),
) -> float:
    """Required T/W for level cruise: parasite plus induced term.

    T/W = q C_D S / W + W / (pi AR e q S), q = 1/2 rho V_c^2.
    """
    if min(gross_weight, reference_area, aspect_ratio, oswald, cruise_speed) <= 0:
        raise DesignError("cruise T/W needs strictly positive inputs")
    if drag_coefficient < 0:
        raise DesignError("drag coefficient must be >= 0")
    q = 0.5 * env.air_density * cruise_speed**2
    parasite = q * drag_coefficient * reference_area / gross_weight
    induced = gross_weight / (math.pi * aspect_ratio * oswald * q * reference_area)
    return parasite + induced


def thrust_match_tw(lift_drag_ratio: float) -> float:
    """Thrust-matching T/W for cruise: the inverse lift-to-drag ratio."""
    if lift_drag_ratio <= 0:
        raise DesignError("lift-to-drag ratio must be > 0")
    return 1.0 / lift_drag_ratio


def max_thrust_to_weight(max_thrust: float, gross_weight: float) -> float:
    """Available T/W from the motor thrust ceiling, both in newtons."""
    if gross_weight <= 0:
        raise DesignError("gross weight must be > 0")
    if max_thrust < 0:
        raise DesignError("maximum thrust must be >= 0")
    return max_thrust / gross_weight


def check_thrust_margin(max_tw: float, required: list[float]) -> ThrustMarginReport:
    """Margin of available over each required T/W; strict pass above 1.

    A margin of exactly 1 fails: there is no headroom left for a flight check.
    """
    if max_tw < 0:
        raise DesignError("maximum T/W must be >= 0")
    for r in required:
        if r <= 0:
            raise DesignError("required T/W values must be > 0")
    margins = tuple(max_tw / r for r in required)
    return ThrustMarginReport(margins=margins, verdict=all(m > 1.0 for m in margins))
