"""Mass budget, calorie-driven wing area, and the planform solve.

The sizing chain works in base SI units (m, kg, s, N, Pa, rad); kcal is the
one domain unit kept as-is. The cruise constraint ties wing loading to cruise
speed and aspect ratio,

    W/S = 1/2 rho V_c^2 sqrt(pi e(AR) AR C_D0)

with the Oswald span efficiency e(AR) = 1.78 (1 - 0.045 AR^0.68) - 0.64, and
the chord Reynolds number Re = rho V_c c / mu pins the operating point of the
thin-plate wing.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DesignError, InfeasiblePlanformError

# Aspect-ratio search interval for the planform solve. The cruise-constraint
# wing loading is strictly increasing in AR here (e(AR) stays positive and
# e*AR grows), so bisection is guaranteed to find the only root.
AR_MIN = 1.0
AR_MAX = 20.0

# Linear thin-plate lift model validity cap; larger solved angles are
# extrapolation and trigger a warning rather than an error.
ALPHA_LINEAR_LIMIT_RAD = math.radians(15.0)


@dataclass(frozen=True)
class EnvironmentSpec:
    """Ambient constants: air density kg/m3, viscosity kg/(m s), gravity m/s2."""

    air_density: float = 1.225
    air_viscosity: float = 1.81e-5
    gravity: float = 9.81

    def __post_init__(self):
        if self.air_density <= 0 or self.air_viscosity <= 0 or self.gravity <= 0:
            raise DesignError("environment constants must all be strictly positive")


@dataclass(frozen=True)
class DesignRequirements:
    """User inputs for the sizing chain.

    nutrition_target is the calorie content the wing must carry (kcal);
    payload_ratio is the statistical payload-to-gross-mass ratio used for the
    initial mass estimate; areal_caloric_density is the kcal carried per m2 of
    finished wing (see :func:`areal_caloric_density` to derive it from material
    data instead of using the calibrated default).
    """

    nutrition_target: float
    payload_mass: float
    payload_ratio: float = 0.272
    target_re: float = 1e5
    zero_lift_drag: float = 0.02
    areal_caloric_density: float = 2840.0
    lift_drag_ratio: float = 6.2

    def __post_init__(self):
        if self.nutrition_target <= 0:
            raise DesignError("nutrition target must be > 0 kcal")
        if self.payload_mass < 0:
            raise DesignError("payload mass must be >= 0")
        if not 0 < self.payload_ratio <= 1:
            raise DesignError("payload ratio must lie in (0, 1]")
        if self.target_re <= 0:
            raise DesignError("target Reynolds number must be > 0")
        if self.zero_lift_drag <= 0:
            raise DesignError("zero-lift drag coefficient must be > 0")
        if self.areal_caloric_density <= 0:
            raise DesignError("areal caloric density must be > 0")
        if self.lift_drag_ratio <= 0:
            raise DesignError("lift-to-drag ratio must be > 0")


@dataclass(frozen=True)
class MassBudget:
    """Solved mass split; gross_weight = gross_mass * g in newtons."""

    payload_mass: float
    empty_mass: float
    gross_mass: float
    gross_weight: float


@dataclass(frozen=True)
class WingGeometry:
    """Rectangular flat-plate planform; S = b c and AR = b / c by construction."""

    reference_area: float
    aspect_ratio: float
    span: float
    chord: float
    plate_thickness: float
    dihedral_angle_deg: float = 10.0

    def __post_init__(self):
        for label, value in (
            ("reference area", self.reference_area),
            ("aspect ratio", self.aspect_ratio),
            ("span", self.span),
            ("chord", self.chord),
            ("plate thickness", self.plate_thickness),
        ):
            if value <= 0:
                raise DesignError(f"wing {label} must be > 0")
        if abs(self.span * self.chord - self.reference_area) > 1e-9 * self.reference_area:
            raise DesignError("wing geometry inconsistent: S != b * c")
        if abs(self.span / self.chord - self.aspect_ratio) > 1e-9 * self.aspect_ratio:
            raise DesignError("wing geometry inconsistent: AR != b / c")


@dataclass(frozen=True)
class AeroResult:
    """Aerodynamic operating point.

    stall_speed, critical_alpha (rad) and lift_coefficient are filled in by
    the lift analysis; the planform solve returns them as None.
    """

    cruise_speed: float
    oswald_factor: float
    dynamic_pressure: float
    achieved_re: float
    wing_loading: float
    lift_drag_ratio: float = 6.2
    stall_speed: float | None = None
    critical_alpha: float | None = None
    lift_coefficient: float | None = None


def mass_budget_from_ratio(
    payload_mass: float, payload_ratio: float, env: EnvironmentSpec
) -> MassBudget:
    """Gross and empty mass from the payload and the statistical payload ratio."""
    if payload_mass <= 0:
        raise DesignError("ratio-based mass estimate needs payload mass > 0")
    if not 0 < payload_ratio <= 1:
        raise DesignError("payload ratio must lie in (0, 1]")
    gross = payload_mass / payload_ratio
    return MassBudget(
        payload_mass=payload_mass,
        empty_mass=gross - payload_mass,
        gross_mass=gross,
        gross_weight=gross * env.gravity,
    )


def estimate_mass_budget(req: DesignRequirements, env: EnvironmentSpec) -> MassBudget:
    """Mass budget for a full requirements record; see :func:`mass_budget_from_ratio`."""
    return mass_budget_from_ratio(req.payload_mass, req.payload_ratio, env)


def areal_caloric_density(
    cookie_density: float,
    thickness: float,
    cookie_kcal: float,
    adhesive_kcal: float,
    adhesive_ratio: float = 0.25,
) -> float:
    """kcal per m2 of finished wing plate.

    adhesive_ratio is the adhesive-to-cookie mass ratio of the finished plate
    (cookies and glue are laid up in a 4:1 ratio by default, hence 0.25).
    """
    for label, value in (
        ("cookie density", cookie_density),
        ("thickness", thickness),
        ("cookie kcal", cookie_kcal),
        ("adhesive kcal", adhesive_kcal),
        ("adhesive ratio", adhesive_ratio),
    ):
        if value < 0:
            raise DesignError(f"{label} must be >= 0")
    return cookie_density * thickness * (cookie_kcal + adhesive_ratio * adhesive_kcal)


def wing_area_from_calories(nutrition: float, areal_density: float) -> float:
    """Reference area in m2 needed to carry the requested calories."""
    if areal_density <= 0:
        raise DesignError("areal caloric density must be > 0")
    if nutrition < 0:
        raise DesignError("nutrition must be >= 0 kcal")
    return nutrition / areal_density


def oswald_factor(aspect_ratio: float) -> float:
    """Oswald span efficiency e(AR) = 1.78 (1 - 0.045 AR^0.68) - 0.64."""
    if aspect_ratio <= 0:
        raise DesignError("aspect ratio must be > 0")
    return 1.78 * (1.0 - 0.045 * aspect_ratio**0.68) - 0.64


def wing_loading_cruise(
    cruise_speed: float,
    aspect_ratio: float,
    zero_lift_drag: float,
    env: EnvironmentSpec = EnvironmentSpec(),
) -> float:
    """Cruise-constraint wing loading in N/m2 at the given speed and AR."""
    if cruise_speed < 0:
        raise DesignError("cruise speed must be >= 0")
    if zero_lift_drag <= 0:
        raise DesignError("zero-lift drag coefficient must be > 0")
    e = oswald_factor(aspect_ratio)
    return (
        0.5
        * env.air_density
        * cruise_speed**2
        * math.sqrt(math.pi * e * aspect_ratio * zero_lift_drag)
    )


def planform_residual(
    aspect_ratio: float,
    target_wing_loading: float,
    reference_area: float,
    target_re: float,
    zero_lift_drag: float,
    env: EnvironmentSpec = EnvironmentSpec(),
) -> float:
    """Cruise-constraint residual at a trial AR, with the chord and speed tied
    to the Reynolds constraint: c = sqrt(S/AR), V_c = Re mu / (rho c)."""
    chord = math.sqrt(reference_area / aspect_ratio)
    v_c = target_re * env.air_viscosity / (env.air_density * chord)
    return wing_loading_cruise(v_c, aspect_ratio, zero_lift_drag, env) - target_wing_loading


def solve_planform(
    target_wing_loading: float,
    reference_area: float,
    target_re: float,
    zero_lift_drag: float,
    env: EnvironmentSpec = EnvironmentSpec(),
    plate_thickness: float = 0.0058,
    dihedral_angle_deg: float = 10.0,
) -> tuple[WingGeometry, AeroResult]:
    """Solve the planform at the requested wing loading and Reynolds number.

    Bisects the cruise-constraint residual over AR in [1, 20] down to a
    relative residual of 1e-9; the residual is strictly increasing in AR, so
    the root is unique when it exists. Raises
    :class:`InfeasiblePlanformError` (carrying the end residuals) when the
    residual does not change sign over the interval.
    """
    if target_wing_loading <= 0:
        raise DesignError("target wing loading must be > 0")
    if reference_area <= 0:
        raise DesignError("reference area must be > 0")

    def residual(ar: float) -> float:
        return planform_residual(
            ar, target_wing_loading, reference_area, target_re, zero_lift_drag, env
        )

    tol = 1e-9 * target_wing_loading
    lo, hi = AR_MIN, AR_MAX
    r_lo, r_hi = residual(lo), residual(hi)
    if abs(r_lo) <= tol:
        ar = lo
    elif abs(r_hi) <= tol:
        ar = hi
    elif r_lo * r_hi > 0:
        raise InfeasiblePlanformError(
            "no feasible aspect ratio in [1, 20]: cruise-constraint residual is "
            f"{r_lo:+.4g} N/m2 at AR=1 and {r_hi:+.4g} N/m2 at AR=20",
            residual_low=r_lo,
            residual_high=r_hi,
        )
    else:
        ar = 0.5 * (lo + hi)
        for _ in range(200):
            r_mid = residual(ar)
            if abs(r_mid) <= tol:
                break
            if (r_lo < 0) == (r_mid < 0):
                lo, r_lo = ar, r_mid
            else:
                hi = ar
            ar = 0.5 * (lo + hi)
        else:
            raise DesignError("planform bisection failed to converge")

    chord = math.sqrt(reference_area / ar)
    span = math.sqrt(reference_area * ar)
    v_c = target_re * env.air_viscosity / (env.air_density * chord)
    wing = WingGeometry(
        reference_area=reference_area,
        aspect_ratio=span / chord,
        span=span,
        chord=chord,
        plate_thickness=plate_thickness,
        dihedral_angle_deg=dihedral_angle_deg,
    )
    aero = AeroResult(
        cruise_speed=v_c,
        oswald_factor=oswald_factor(ar),
        dynamic_pressure=0.5 * env.air_density * v_c**2,
        achieved_re=env.air_density * v_c * chord / env.air_viscosity,
        wing_loading=target_wing_loading,
    )
    return wing, aero


def lift_coefficient(alpha: float, aspect_ratio: float) -> float:
    """Finite-wing lift coefficient, Lowry-Polhamus linear slope.

    C_L = 2 alpha pi AR / (2 + sqrt(4 + AR^2)), alpha in radians.
    """
    if aspect_ratio <= 0:
        raise DesignError("aspect ratio must be > 0")
    return 2.0 * alpha * math.pi * aspect_ratio / (2.0 + math.sqrt(4.0 + aspect_ratio**2))


def lift_slope(aspect_ratio: float) -> float:
    """dC_L/dalpha of the finite-wing linear model, 1/rad."""
    if aspect_ratio <= 0:
        raise DesignError("aspect ratio must be > 0")
    return 2.0 * math.pi * aspect_ratio / (2.0 + math.sqrt(4.0 + aspect_ratio**2))


def stall_speed(
    wing_loading: float, cl_max: float, env: EnvironmentSpec = EnvironmentSpec()
) -> float:
    """Minimum level-flight speed V_s = sqrt(2 (W/S) / (rho C_Lmax))."""
    if cl_max <= 0:
        raise DesignError("maximum lift coefficient must be > 0")
    if wing_loading < 0:
        raise DesignError("wing loading must be >= 0")
    return math.sqrt(2.0 * wing_loading / (env.air_density * cl_max))


def critical_alpha(
    wing_loading: float,
    aspect_ratio: float,
    cruise_speed: float,
    env: EnvironmentSpec = EnvironmentSpec(),
) -> tuple[float, float]:
    """Smallest angle of attack whose stall speed does not exceed cruise.

    With the linear lift model the answer is closed-form,
    alpha = 2 (W/S) / (rho V_c^2 m) with m the lift slope, and the stall
    speed at that alpha equals the cruise speed. Returns (alpha_rad, V_s).
    Warns when alpha leaves the linear thin-plate range (> 15 deg).
    """
    if wing_loading <= 0 or aspect_ratio <= 0 or cruise_speed <= 0:
        raise DesignError("wing loading, aspect ratio, and cruise speed must be > 0")
    alpha = 2.0 * wing_loading / (env.air_density * cruise_speed**2 * lift_slope(aspect_ratio))
    if alpha > ALPHA_LINEAR_LIMIT_RAD:
        warnings.warn(
            f"required angle of attack {math.degrees(alpha):.2f} deg exceeds the "
            "linear thin-plate range (15 deg); treat the lift estimate as extrapolation",
            stacklevel=2,
        )
    v_s = stall_speed(wing_loading, lift_coefficient(alpha, aspect_ratio), env)
    return alpha, v_s


@dataclass(frozen=True, eq=False)
class DesignSpaceGrid:
    """Wing-loading surface over (V_c, AR) with an optional iso-loading contour.

    wing_loading[i][j] is the cruise-constraint loading at cruise_speeds[i]
    and aspect_ratios[j]; the contour is a (V_c, AR) polyline sorted by V_c.
    """

    cruise_speeds: tuple[float, ...]
    aspect_ratios: tuple[float, ...]
    wing_loading: tuple[tuple[float, ...], ...]
    target_wing_loading: float | None
    contour: tuple[tuple[float, float], ...]


def design_space_grid(
    v_c_range: tuple[float, float],
    ar_range: tuple[float, float],
    steps: tuple[int, int],
    zero_lift_drag: float,
    env: EnvironmentSpec = EnvironmentSpec(),
    target_wing_loading: float | None = None,
) -> DesignSpaceGrid:
    """Evaluate the cruise-constraint loading on a rectangular (V_c, AR) grid.

    The iso-contour for target_wing_loading is extracted by linear
    interpolation along grid edges where the target value is crossed.
    """
    v_lo, v_hi = v_c_range
    a_lo, a_hi = ar_range
    n_v, n_a = steps
    if not (0 <= v_lo < v_hi) or not (0 < a_lo < a_hi):
        raise DesignError("grid ranges must be positive and ordered")
    if n_v < 2 or n_a < 2:
        raise DesignError("grid needs at least 2 steps per axis")

    v_c = np.linspace(v_lo, v_hi, n_v)
    ar = np.linspace(a_lo, a_hi, n_a)
    e = 1.78 * (1.0 - 0.045 * ar**0.68) - 0.64
    factor = np.sqrt(np.pi * e * ar * zero_lift_drag)
    grid = 0.5 * env.air_density * np.outer(v_c**2, factor)

    contour: list[tuple[float, float]] = []
    if target_wing_loading is not None:
        f = grid - target_wing_loading
        pts: set[tuple[float, float]] = set()
        for i in range(n_v):
            for j in range(n_a):
                if f[i, j] == 0.0:
                    pts.add((float(v_c[i]), float(ar[j])))
        # edges along AR (fixed cruise speed)
        for i in range(n_v):
            for j in range(n_a - 1):
                a, b = f[i, j], f[i, j + 1]
                if a * b < 0:
                    t = a / (a - b)
                    pts.add((float(v_c[i]), float(ar[j] + t * (ar[j + 1] - ar[j]))))
        # edges along V_c (fixed aspect ratio)
        for j in range(n_a):
            for i in range(n_v - 1):
                a, b = f[i, j], f[i + 1, j]
                if a * b < 0:
                    t = a / (a - b)
                    pts.add((float(v_c[i] + t * (v_c[i + 1] - v_c[i])), float(ar[j])))
        # the loading is strictly increasing in both axes, so the level set is
        # a single monotone curve; sorting by V_c orders the polyline
        contour = sorted(pts, key=lambda p: (p[0], -p[1]))

    return DesignSpaceGrid(
        cruise_speeds=tuple(float(v) for v in v_c),
        aspect_ratios=tuple(float(a) for a in ar),
        wing_loading=tuple(tuple(float(x) for x in row) for row in grid),
        target_wing_loading=target_wing_loading,
        contour=tuple(contour),
    )
