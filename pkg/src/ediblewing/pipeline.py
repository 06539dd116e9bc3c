"""End-to-end design pipeline: mass budget through tiling, with verdicts.

The pipeline walks the sizing chain in order (mass budget, calorie-driven
area, planform solve, lift analysis, thrust checks, tail solve, half-span
strength, tiling and calorie accounting) and collects every intermediate in a
single report. Stage failures re-raise as :class:`PipelineStageError`
carrying the stage name.
"""

from __future__ import annotations

import dataclasses
from contextlib import contextmanager
from dataclasses import dataclass

from . import materials as mat
from . import performance as perf
from . import sizing, structure, tail, tiling
from .errors import DesignError, PipelineStageError


@dataclass(frozen=True)
class DesignConfig:
    """All pipeline inputs in base SI units (kcal kept as-is).

    None means "not requested" for the optional checks (strength capacity)
    and "derive from the rest" for drone_total_mass and the tail arms.
    """

    nutrition_kcal: float = 300.0
    payload_mass: float = 0.080
    payload_ratio: float = 0.272
    target_re: float = 1e5
    zero_lift_drag: float = 0.02
    areal_kcal_per_m2: float = 2840.0
    lift_drag_ratio: float = 6.2
    air_density: float = 1.225
    air_viscosity: float = 1.81e-5
    gravity: float = 9.81
    drag_coefficient: float = 0.045
    max_thrust: float = 1.079
    c_vt: float = 0.05
    c_ht: float = 0.25
    tail_area_vt: float = 0.005
    tail_area_ht: float = 0.010
    tail_arm_vt: float | None = None
    tail_arm_ht: float | None = None
    capacity_ls: float | None = None
    schrenk_samples: int = structure.DEFAULT_SAMPLE_COUNT
    hex_circumdiameter: float = 0.070
    plate_thickness: float = 0.0058
    adhesive_ratio: float = 0.25
    dihedral_deg: float = 10.0
    drone_total_mass: float | None = None
    material_name: str | None = None
    adhesive_name: str | None = None
    material_db: str | None = None
    adhesive_db: str | None = None


@dataclass(frozen=True)
class TilingSummary:
    full_hex_count: int
    partial_count: int
    tile_count: int
    seam_length: float
    covered_area: float
    circumdiameter: float


@dataclass(frozen=True)
class Verdicts:
    thrust_margin: bool
    tail: bool
    strength: bool | None

    @property
    def overall(self) -> bool:
        checks = [self.thrust_margin, self.tail]
        if self.strength is not None:
            checks.append(self.strength)
        return all(checks)


@dataclass(frozen=True, eq=False)
class DesignReport:
    """Every intermediate of one pipeline run plus the input echo."""

    echo: dict
    material: mat.FoodMaterial
    adhesive: mat.AdhesiveRecord
    adhesive_conservative_strength: float
    mass_budget: sizing.MassBudget
    wing: sizing.WingGeometry
    aero: sizing.AeroResult
    propulsion: perf.PropulsionSpec
    thrust_margins: perf.ThrustMarginReport
    tail: tail.TailSpec
    tail_validation: tail.TailValidation
    load_case: structure.LoadCase
    load_intercept: float
    root_load: float
    tip_load: float
    half_span_lift: float
    strength: structure.StrengthReport | None
    empty_weight_capacity_ratio: float | None
    tiling: TilingSummary
    wing_mass: tiling.WingMassBreakdown
    verdicts: Verdicts


@contextmanager
def _stage(name: str):
    try:
        yield
    except PipelineStageError:
        raise
    except DesignError as exc:
        raise PipelineStageError(name, exc) from exc


def _config_echo(config: DesignConfig, derived: dict) -> dict:
    echo = {}
    for field in dataclasses.fields(DesignConfig):
        value = getattr(config, field.name)
        source = "default" if value == field.default else "user"
        if field.name in derived:
            value, source = derived[field.name], "derived"
        echo[field.name] = {"value": value, "source": source}
    return echo


def pick_material(config: DesignConfig) -> mat.FoodMaterial:
    db = mat.load_material_db(config.material_db) if config.material_db else mat.seed_material_db()
    if config.material_name is not None:
        for record in db:
            if record.name == config.material_name:
                return record
        raise DesignError(f"material {config.material_name!r} not found in the database")
    if len(db) == 1:
        return db[0]
    raise DesignError(
        "the material database has several records; set material_name to choose one"
    )


def pick_adhesive(config: DesignConfig) -> tuple[mat.AdhesiveRecord, float]:
    db = mat.load_adhesive_db(config.adhesive_db) if config.adhesive_db else mat.seed_adhesive_db()
    if config.adhesive_name is not None:
        for record in db:
            if record.name == config.adhesive_name:
                return record, mat.conservative_strength(record)
        raise DesignError(f"adhesive {config.adhesive_name!r} not found in the database")
    return mat.select_adhesive(db)


def run_design_pipeline(config: DesignConfig) -> DesignReport:
    """Run the full design chain and return the collected report.

    Deterministic: identical configs produce identical reports.
    """
    derived: dict = {}

    with _stage("environment"):
        env = sizing.EnvironmentSpec(
            air_density=config.air_density,
            air_viscosity=config.air_viscosity,
            gravity=config.gravity,
        )

    with _stage("materials"):
        material = pick_material(config)
        adhesive, adhesive_strength = pick_adhesive(config)
        if config.adhesive_name is None:
            derived["adhesive_name"] = adhesive.name
        if config.material_name is None:
            derived["material_name"] = material.name

    with _stage("mass_budget"):
        budget = sizing.mass_budget_from_ratio(config.payload_mass, config.payload_ratio, env)

    with _stage("wing_area"):
        if config.nutrition_kcal <= 0:
            raise DesignError("nutrition target must be > 0 kcal to size a wing")
        area = sizing.wing_area_from_calories(config.nutrition_kcal, config.areal_kcal_per_m2)

    with _stage("planform"):
        wing_loading = budget.gross_weight / area
        wing, aero_partial = sizing.solve_planform(
            wing_loading,
            area,
            config.target_re,
            config.zero_lift_drag,
            env,
            plate_thickness=config.plate_thickness,
            dihedral_angle_deg=config.dihedral_deg,
        )

    with _stage("lift"):
        alpha, v_s = sizing.critical_alpha(
            wing_loading, wing.aspect_ratio, aero_partial.cruise_speed, env
        )
        c_l = sizing.lift_coefficient(alpha, wing.aspect_ratio)
        aero = dataclasses.replace(
            aero_partial,
            stall_speed=v_s,
            critical_alpha=alpha,
            lift_coefficient=c_l,
            lift_drag_ratio=config.lift_drag_ratio,
        )

    with _stage("propulsion"):
        required_tw = perf.cruise_thrust_to_weight(
            budget.gross_weight,
            area,
            wing.aspect_ratio,
            aero.oswald_factor,
            aero.cruise_speed,
            config.drag_coefficient,
            env,
        )
        match_tw = perf.thrust_match_tw(config.lift_drag_ratio)
        max_tw = perf.max_thrust_to_weight(config.max_thrust, budget.gross_weight)
        propulsion = perf.PropulsionSpec(
            drag_coefficient=config.drag_coefficient,
            max_thrust=config.max_thrust,
            required_tw_cruise=required_tw,
            max_tw=max_tw,
            thrust_match_tw=match_tw,
        )
        margins = perf.check_thrust_margin(max_tw, [required_tw, match_tw])

    with _stage("tail"):
        tail_spec = tail.solve_tail(
            wing.span,
            wing.chord,
            area,
            c_vt=config.c_vt,
            c_ht=config.c_ht,
            s_vt=config.tail_area_vt,
            s_ht=config.tail_area_ht,
            l_vt=config.tail_arm_vt,
            l_ht=config.tail_arm_ht,
        )
        tail_check = tail.validate_tail(tail_spec, wing.span, wing.chord, area)

    with _stage("structure"):
        case = structure.LoadCase(
            total_lift=budget.gross_weight,
            span=wing.span,
            sample_count=config.schrenk_samples,
        )
        dist = structure.schrenk_distribution(case)
        half_lift = structure.integrate_halfspan(dist)
        strength = None
        empty_ratio = None
        if config.capacity_ls is not None:
            strength = structure.strength_margin(config.capacity_ls, budget.gross_weight)
            empty_ratio = structure.empty_weight_ratio_check(
                config.capacity_ls, budget.empty_mass * env.gravity
            )

    with _stage("tiling"):
        hex_spec = tiling.HexTilingSpec(
            planform_span=wing.span,
            planform_chord=wing.chord,
            circumdiameter=config.hex_circumdiameter,
        )
        layout = tiling.generate_hex_tiling(hex_spec)
        drone_mass = config.drone_total_mass
        if drone_mass is None:
            drone_mass = budget.gross_mass
            derived["drone_total_mass"] = drone_mass
        breakdown = tiling.mass_and_calories(
            layout,
            material,
            adhesive,
            thickness=config.plate_thickness,
            adhesive_ratio=config.adhesive_ratio,
            drone_total_mass=drone_mass,
        )
        summary = TilingSummary(
            full_hex_count=layout.full_hex_count,
            partial_count=layout.partial_count,
            tile_count=layout.tile_count,
            seam_length=layout.seam_length,
            covered_area=layout.covered_area,
            circumdiameter=config.hex_circumdiameter,
        )

    verdicts = Verdicts(
        thrust_margin=margins.verdict,
        tail=tail_check.passed,
        strength=strength.verdict if strength is not None else None,
    )
    return DesignReport(
        echo=_config_echo(config, derived),
        material=material,
        adhesive=adhesive,
        adhesive_conservative_strength=adhesive_strength,
        mass_budget=budget,
        wing=wing,
        aero=aero,
        propulsion=propulsion,
        thrust_margins=margins,
        tail=tail_spec,
        tail_validation=tail_check,
        load_case=case,
        load_intercept=dist.intercept,
        root_load=float(dist.loads[0]),
        tip_load=float(dist.loads[-1]),
        half_span_lift=half_lift,
        strength=strength,
        empty_weight_capacity_ratio=empty_ratio,
        tiling=summary,
        wing_mass=breakdown,
        verdicts=verdicts,
    )


