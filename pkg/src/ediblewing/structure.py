"""Spanwise load distribution and structural checks for the half-span wing.

The spanwise lift is modeled as the mean of a rectangular and an elliptic
distribution carrying the same total lift (Schrenk's approximation),

    F(x) = 1/2 (L/b + f0 sqrt(1 - (x / (b/2))^2)),   f0 = 4 L / (pi b)

on the half span x in [0, b/2]; the intercept f0 is fixed so the half-span
integral equals L/2 exactly. Level flight requires each half wing to carry a
simulated lift L_s = 0.5 W g.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DesignError

# Uniform-sample composite Simpson converges like n^-1.5 on the Schrenk shape
# (square-root behavior at the tip), so the half-lift identity needs roughly
# n >= 2048 to land inside 1e-6 relative; the default keeps margin.
DEFAULT_SAMPLE_COUNT = 4096


@dataclass(frozen=True)
class LoadCase:
    """Full-span lift (N), span (m), and the half-span sample interval count.

    sample_count is the number of uniform intervals on [0, b/2]; it must be
    even (composite Simpson) and at least 64.
    """

    total_lift: float
    span: float
    sample_count: int = DEFAULT_SAMPLE_COUNT

    def __post_init__(self):
        if self.total_lift < 0:
            raise DesignError("total lift must be >= 0")
        if self.span <= 0:
            raise DesignError("span must be > 0")
        if self.sample_count < 64 or self.sample_count % 2:
            raise DesignError("sample count must be even and >= 64")


@dataclass(frozen=True, eq=False)
class LoadDistribution:
    """Sampled spanwise line load F(x) in N/m on x in [0, b/2]."""

    intercept: float
    xs: np.ndarray
    loads: np.ndarray
    case: LoadCase

    @property
    def samples(self) -> list[tuple[float, float]]:
        return list(zip(self.xs.tolist(), self.loads.tolist()))


@dataclass(frozen=True)
class StrengthReport:
    """Half-span capacity versus the level-flight requirement 0.5 W g."""

    required_half_lift: float
    capacity_half_lift: float
    margin: float
    full_span_capacity_in_wg: float
    verdict: bool


@dataclass(frozen=True)
class DeflectionResult:
    tip_deflection: float
    flexural_rigidity_used: float


@dataclass(frozen=True)
class BagStation:
    """One equal-width loading station with the granule-bag mass placed on it."""

    x_start: float
    x_end: float
    mass: float  # kg


def schrenk_distribution(case: LoadCase) -> LoadDistribution:
    """Sample the Schrenk line load at uniform stations including both ends.

    The tip sample is exactly L / (2 b) (the elliptic term vanishes there).
    """
    half = case.span / 2.0
    f0 = 4.0 * case.total_lift / (math.pi * case.span)
    xs = np.linspace(0.0, half, case.sample_count + 1)
    u = xs / half
    u[-1] = 1.0  # pin the endpoint so the elliptic term is exactly zero
    loads = 0.5 * (case.total_lift / case.span + f0 * np.sqrt(np.clip(1.0 - u * u, 0.0, None)))
    return LoadDistribution(intercept=f0, xs=xs, loads=loads, case=case)


def uniform_load_distribution(
    intensity: float, length: float, sample_count: int = DEFAULT_SAMPLE_COUNT
) -> LoadDistribution:
    """Constant line load over [0, length]; a beam-check helper, not a Schrenk shape."""
    if intensity < 0 or length <= 0:
        raise DesignError("uniform load needs intensity >= 0 and length > 0")
    case = LoadCase(total_lift=2.0 * intensity * length, span=2.0 * length, sample_count=sample_count)
    xs = np.linspace(0.0, length, sample_count + 1)
    return LoadDistribution(
        intercept=0.0, xs=xs, loads=np.full_like(xs, float(intensity)), case=case
    )


def _simpson_uniform(y: np.ndarray, x: np.ndarray) -> float:
    n = len(x) - 1
    if n % 2:
        raise DesignError("composite Simpson needs an even interval count")
    h = (x[-1] - x[0]) / n
    return float(h / 3.0 * (y[0] + y[-1] + 4.0 * y[1:-1:2].sum() + 2.0 * y[2:-2:2].sum()))


def integrate_halfspan(dist: LoadDistribution) -> float:
    """Composite Simpson quadrature of the sampled line load, in newtons."""
    if len(dist.xs) < 3:
        raise DesignError("distribution needs at least 3 samples")
    return _simpson_uniform(dist.loads, dist.xs)


def strength_margin(capacity_ls: float, gross_weight: float) -> StrengthReport:
    """Compare a tested half-span lift capacity against the 0.5 W g requirement.

    The full-span capacity multiple is 2 capacity / (W g); the margin boundary
    (capacity exactly equal to required) passes.
    """
    if capacity_ls <= 0:
        raise DesignError("capacity must be > 0")
    if gross_weight <= 0:
        raise DesignError("gross weight must be > 0")
    required = 0.5 * gross_weight
    margin = capacity_ls / required
    return StrengthReport(
        required_half_lift=required,
        capacity_half_lift=capacity_ls,
        margin=margin,
        full_span_capacity_in_wg=2.0 * capacity_ls / gross_weight,
        verdict=margin >= 1.0,
    )


def empty_weight_ratio_check(capacity_ls: float, empty_weight: float) -> float:
    """Half-span capacity as a fraction of the no-payload weight (N/N)."""
    if capacity_ls <= 0 or empty_weight <= 0:
        raise DesignError("capacity and empty weight must be > 0")
    return capacity_ls / empty_weight


def _cumulative_trapezoid(y: np.ndarray, x: np.ndarray) -> np.ndarray:
    seg = 0.5 * (y[1:] + y[:-1]) * np.diff(x)
    return np.concatenate([[0.0], np.cumsum(seg)])


def cantilever_deflection(dist: LoadDistribution, flexural_rigidity: float) -> DeflectionResult:
    """Tip deflection of a root-clamped half wing under the sampled line load.

    Shear and bending moment are accumulated from the free tip, then the
    curvature M / (E I) is integrated twice from the clamped root. All four
    integrations use the trapezoid rule on the distribution's own sample
    grid, so the result converges to the closed forms as the sample count
    grows.
    """
    if flexural_rigidity <= 0:
        raise DesignError("flexural rigidity must be > 0")
    xs, loads = dist.xs, dist.loads
    total = _cumulative_trapezoid(loads, xs)
    shear = total[-1] - total
    moment_cum = _cumulative_trapezoid(shear, xs)
    moment = moment_cum[-1] - moment_cum
    slope = _cumulative_trapezoid(moment / flexural_rigidity, xs)
    deflection = _cumulative_trapezoid(slope, xs)
    return DeflectionResult(
        tip_deflection=float(deflection[-1]), flexural_rigidity_used=flexural_rigidity
    )


def _elliptic_antiderivative(u: float) -> float:
    # integral of sqrt(1 - t^2) dt from 0 to u
    u = min(max(u, -1.0), 1.0)
    return 0.5 * (u * math.sqrt(1.0 - u * u) + math.asin(u))


def bag_load_plan(
    dist: LoadDistribution, station_count: int, gravity: float = 9.81
) -> list[BagStation]:
    """Equal-width station masses reproducing the Schrenk half-span lift.

    Station integrals are evaluated in closed form from the Schrenk shape
    (the elliptic term has an elementary antiderivative), so the masses sum
    to exactly (L/2)/g up to rounding. Intended for distributions produced by
    :func:`schrenk_distribution`.
    """
    if station_count < 1:
        raise DesignError("station count must be >= 1")
    if gravity <= 0:
        raise DesignError("gravity must be > 0")
    case = dist.case
    half = case.span / 2.0
    rect = case.total_lift / case.span
    edges = np.linspace(0.0, half, station_count + 1)
    stations = []
    for x0, x1 in zip(edges[:-1], edges[1:]):
        elliptic = half * (
            _elliptic_antiderivative(x1 / half) - _elliptic_antiderivative(x0 / half)
        )
        lift = 0.5 * (rect * (x1 - x0) + dist.intercept * elliptic)
        stations.append(BagStation(x_start=float(x0), x_end=float(x1), mass=lift / gravity))
    return stations
