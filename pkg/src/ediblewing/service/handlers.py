"""Service handlers: the one place requests meet the core pipeline.

Both the HTTP routes and the CLI (in local mode) call these functions, so
client behavior is identical either way.
"""

from __future__ import annotations

import math

from .. import materials as mat
from .. import report as rpt
from .. import sizing, structure, tiling
from ..errors import DesignError
from ..pipeline import DesignReport, run_design_pipeline
from . import schemas as sc


def _design_sections(report: DesignReport) -> dict:
    r = report
    return {
        "echo": r.echo,
        "mass_budget": sc.MassBudgetModel(
            payload_mass_kg=r.mass_budget.payload_mass,
            empty_mass_kg=r.mass_budget.empty_mass,
            gross_mass_kg=r.mass_budget.gross_mass,
            gross_weight_n=r.mass_budget.gross_weight,
        ),
        "wing": sc.WingModel(
            reference_area_m2=r.wing.reference_area,
            aspect_ratio=r.wing.aspect_ratio,
            span_m=r.wing.span,
            chord_m=r.wing.chord,
            plate_thickness_m=r.wing.plate_thickness,
            dihedral_angle_deg=r.wing.dihedral_angle_deg,
        ),
        "aero": sc.AeroModel(
            cruise_speed_m_s=r.aero.cruise_speed,
            stall_speed_m_s=r.aero.stall_speed,
            critical_alpha_rad=r.aero.critical_alpha,
            critical_alpha_deg=math.degrees(r.aero.critical_alpha),
            lift_coefficient=r.aero.lift_coefficient,
            oswald_factor=r.aero.oswald_factor,
            dynamic_pressure_pa=r.aero.dynamic_pressure,
            achieved_re=r.aero.achieved_re,
            wing_loading_n_m2=r.aero.wing_loading,
            lift_drag_ratio=r.aero.lift_drag_ratio,
        ),
        "propulsion": sc.PropulsionModel(
            drag_coefficient=r.propulsion.drag_coefficient,
            max_thrust_n=r.propulsion.max_thrust,
            required_tw_cruise=r.propulsion.required_tw_cruise,
            thrust_match_tw=r.propulsion.thrust_match_tw,
            max_tw=r.propulsion.max_tw,
            margins=list(r.thrust_margins.margins),
        ),
        "tail": sc.TailModel(
            c_vt=r.tail.c_vt,
            c_ht=r.tail.c_ht,
            s_vt_m2=r.tail.s_vt,
            s_ht_m2=r.tail.s_ht,
            l_vt_m=r.tail.l_vt,
            l_ht_m=r.tail.l_ht,
            coefficient_ratio=r.tail_validation.coefficient_ratio,
            violations=list(r.tail_validation.violations),
        ),
        "structure": sc.StructureSummaryModel(
            total_lift_n=r.load_case.total_lift,
            sample_count=r.load_case.sample_count,
            load_intercept_n_m=r.load_intercept,
            root_load_n_m=r.root_load,
            tip_load_n_m=r.tip_load,
            half_span_lift_n=r.half_span_lift,
            empty_weight_capacity_ratio=r.empty_weight_capacity_ratio,
        ),
        "strength": None
        if r.strength is None
        else sc.StrengthModel(
            required_half_lift_n=r.strength.required_half_lift,
            capacity_half_lift_n=r.strength.capacity_half_lift,
            margin=r.strength.margin,
            full_span_capacity_in_wg=r.strength.full_span_capacity_in_wg,
            verdict=r.strength.verdict,
        ),
        "tiling": sc.TilingSummaryModel(
            circumdiameter_m=r.tiling.circumdiameter,
            full_hex_count=r.tiling.full_hex_count,
            partial_count=r.tiling.partial_count,
            tile_count=r.tiling.tile_count,
            seam_length_m=r.tiling.seam_length,
            covered_area_m2=r.tiling.covered_area,
        ),
        "wing_mass": sc.WingMassModel(
            cookie_mass_kg=r.wing_mass.cookie_mass,
            adhesive_mass_kg=r.wing_mass.adhesive_mass,
            total_mass_kg=r.wing_mass.total_mass,
            total_kcal=r.wing_mass.total_kcal,
            edible_fraction_of_drone=r.wing_mass.edible_fraction_of_drone,
        ),
        "verdicts": sc.VerdictsModel(
            thrust_margin=r.verdicts.thrust_margin,
            tail=r.verdicts.tail,
            strength=r.verdicts.strength,
            overall=r.verdicts.overall,
        ),
    }


def handle_design(req: sc.DesignRequest) -> sc.DesignResponse:
    report = run_design_pipeline(req.to_config())
    sections = _design_sections(report)
    return sc.DesignResponse(
        **sections,
        reports=sc.ReportDocuments(
            human_text=rpt.render_human(report),
            machine_json=rpt.render_machine(report),
        ),
    )


def handle_map(req: sc.MapRequest) -> sc.MapResponse:
    config = req.to_config()
    env = sizing.EnvironmentSpec(
        air_density=config.air_density,
        air_viscosity=config.air_viscosity,
        gravity=config.gravity,
    )
    target = req.target_wing_loading_n_m2
    if target is None:
        budget = sizing.mass_budget_from_ratio(config.payload_mass, config.payload_ratio, env)
        if config.nutrition_kcal <= 0:
            raise DesignError("nutrition target must be > 0 kcal to derive a wing loading")
        area = sizing.wing_area_from_calories(config.nutrition_kcal, config.areal_kcal_per_m2)
        target = budget.gross_weight / area
    grid = sizing.design_space_grid(
        (req.vc_min_m_s, req.vc_max_m_s),
        (req.ar_min, req.ar_max),
        (req.vc_steps, req.ar_steps),
        config.zero_lift_drag,
        env,
        target_wing_loading=target,
    )
    return sc.MapResponse(
        cruise_speeds=list(grid.cruise_speeds),
        aspect_ratios=list(grid.aspect_ratios),
        wing_loading=[list(row) for row in grid.wing_loading],
        target_wing_loading_n_m2=target,
        contour=list(grid.contour),
        csv=rpt.design_map_csv(grid),
        svg=rpt.design_map_svg(grid),
    )


def handle_tile(req: sc.TileRequest) -> sc.TileResponse:
    config = req.to_config()
    if (req.span_mm is None) != (req.chord_mm is None):
        raise DesignError("give both span_mm and chord_mm or neither")
    if req.span_mm is not None:
        span, chord = req.span_mm * 1e-3, req.chord_mm * 1e-3
        report = None
    else:
        report = run_design_pipeline(config)
        span, chord = report.wing.span, report.wing.chord
    spec = tiling.HexTilingSpec(
        planform_span=span,
        planform_chord=chord,
        circumdiameter=config.hex_circumdiameter,
    )
    layout = tiling.generate_hex_tiling(spec)

    if report is not None:
        material, adhesive = report.material, report.adhesive
        drone_mass = config.drone_total_mass
        if drone_mass is None:
            drone_mass = report.mass_budget.gross_mass
    else:
        from ..pipeline import pick_adhesive, pick_material

        material = pick_material(config)
        adhesive, _ = pick_adhesive(config)
        drone_mass = config.drone_total_mass
        if drone_mass is None:
            env = sizing.EnvironmentSpec(
                air_density=config.air_density,
                air_viscosity=config.air_viscosity,
                gravity=config.gravity,
            )
            drone_mass = sizing.mass_budget_from_ratio(
                config.payload_mass, config.payload_ratio, env
            ).gross_mass
    breakdown = tiling.mass_and_calories(
        layout,
        material,
        adhesive,
        thickness=config.plate_thickness,
        adhesive_ratio=config.adhesive_ratio,
        drone_total_mass=drone_mass,
    )
    return sc.TileResponse(
        span_m=span,
        chord_m=chord,
        circumdiameter_m=config.hex_circumdiameter,
        full_hex_count=layout.full_hex_count,
        partial_count=layout.partial_count,
        tile_count=layout.tile_count,
        seam_length_m=layout.seam_length,
        covered_area_m2=layout.covered_area,
        wing_mass=sc.WingMassModel(
            cookie_mass_kg=breakdown.cookie_mass,
            adhesive_mass_kg=breakdown.adhesive_mass,
            total_mass_kg=breakdown.total_mass,
            total_kcal=breakdown.total_kcal,
            edible_fraction_of_drone=breakdown.edible_fraction_of_drone,
        ),
        svg=tiling.render_svg(layout),
    )


def handle_structure(req: sc.StructureRequest) -> sc.StructureResponse:
    config = req.to_config()
    report = run_design_pipeline(config)
    dist = structure.schrenk_distribution(report.load_case)
    bag = structure.bag_load_plan(dist, req.station_count, gravity=config.gravity)
    deflection = None
    if req.flexural_rigidity_n_m2 is not None:
        result = structure.cantilever_deflection(dist, req.flexural_rigidity_n_m2)
        deflection = sc.DeflectionModel(
            tip_deflection_m=result.tip_deflection,
            flexural_rigidity_n_m2=result.flexural_rigidity_used,
        )
    sections = _design_sections(report)
    return sc.StructureResponse(
        span_m=report.wing.span,
        structure=sections["structure"],
        strength=sections["strength"],
        bag_plan=[
            sc.BagStationModel(x_start_m=s.x_start, x_end_m=s.x_end, mass_kg=s.mass)
            for s in bag
        ],
        deflection=deflection,
    )


def _materials_or_seed(models: list[sc.MaterialModel] | None) -> list[mat.FoodMaterial]:
    if models is None:
        return mat.seed_material_db()
    return [m.to_record() for m in models]


def handle_materials_rank(req: sc.MaterialsRankRequest) -> sc.MaterialsRankResponse:
    db = _materials_or_seed(req.materials)
    target = mat.MaterialTarget(
        target_modulus=req.target_modulus_mpa * 1e6,
        target_density=req.target_density_kg_m3,
    )
    ranking = mat.rank_by_ashby_distance(db, target)
    return sc.MaterialsRankResponse(
        target_modulus_mpa=req.target_modulus_mpa,
        target_density_kg_m3=req.target_density_kg_m3,
        ranking=[
            sc.RankedMaterialModel(material=sc.MaterialModel.from_record(m), distance=d)
            for m, d in ranking
        ],
    )


def handle_materials_pareto(req: sc.ParetoRequest) -> sc.ParetoResponse:
    db = _materials_or_seed(req.materials)
    return sc.ParetoResponse(
        front=[sc.MaterialModel.from_record(m) for m in mat.pareto_front(db)]
    )


def handle_adhesive_select(req: sc.AdhesiveSelectRequest) -> sc.AdhesiveSelectResponse:
    records = (
        mat.seed_adhesive_db()
        if req.adhesives is None
        else [a.to_record() for a in req.adhesives]
    )
    selected, strength = mat.select_adhesive(records)
    return sc.AdhesiveSelectResponse(
        selected=sc.AdhesiveModel.from_record(selected),
        conservative_strength_kpa=strength / 1e3,
    )


def handle_seed_db() -> sc.SeedResponse:
    return sc.SeedResponse(
        materials=[sc.MaterialModel.from_record(m) for m in mat.seed_material_db()],
        adhesives=[sc.AdhesiveModel.from_record(a) for a in mat.seed_adhesive_db()],
    )
