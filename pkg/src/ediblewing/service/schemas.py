"""Request and response models for the design service.

Requests use workshop units (g, mm, cm2) with unit-suffixed field names and
reject unknown keys; ``to_config`` converts to the SI pipeline config.
Responses are SI with explicit unit suffixes.
"""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict

from ..materials import AdhesiveRecord, FoodMaterial, StrengthKind
from ..pipeline import DesignConfig


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


class DesignRequest(_Strict):
    nutrition_kcal: float = 300.0
    payload_mass_g: float = 80.0
    payload_ratio: float = 0.272
    target_re: float = 1e5
    c_d0: float = 0.02
    areal_kcal_per_m2: float = 2840.0
    lift_drag_ratio: float = 6.2
    air_density_kg_m3: float = 1.225
    air_viscosity_kg_ms: float = 1.81e-5
    gravity_m_s2: float = 9.81
    drag_coefficient: float = 0.045
    max_thrust_n: float = 1.079
    c_vt: float = 0.05
    c_ht: float = 0.25
    tail_area_vt_cm2: float = 50.0
    tail_area_ht_cm2: float = 100.0
    tail_arm_vt_mm: Optional[float] = None
    tail_arm_ht_mm: Optional[float] = None
    capacity_ls_n: Optional[float] = None
    schrenk_samples: int = 4096
    hex_circumdiameter_mm: float = 70.0
    plate_thickness_mm: float = 5.8
    adhesive_ratio: float = 0.25
    dihedral_deg: float = 10.0
    drone_total_mass_g: Optional[float] = None
    material_name: Optional[str] = None
    adhesive_name: Optional[str] = None
    material_db: Optional[str] = None
    adhesive_db: Optional[str] = None

    def to_config(self) -> DesignConfig:
        mm = 1e-3
        return DesignConfig(
            nutrition_kcal=self.nutrition_kcal,
            payload_mass=self.payload_mass_g * 1e-3,
            payload_ratio=self.payload_ratio,
            target_re=self.target_re,
            zero_lift_drag=self.c_d0,
            areal_kcal_per_m2=self.areal_kcal_per_m2,
            lift_drag_ratio=self.lift_drag_ratio,
            air_density=self.air_density_kg_m3,
            air_viscosity=self.air_viscosity_kg_ms,
            gravity=self.gravity_m_s2,
            drag_coefficient=self.drag_coefficient,
            max_thrust=self.max_thrust_n,
            c_vt=self.c_vt,
            c_ht=self.c_ht,
            tail_area_vt=self.tail_area_vt_cm2 * 1e-4,
            tail_area_ht=self.tail_area_ht_cm2 * 1e-4,
            tail_arm_vt=None if self.tail_arm_vt_mm is None else self.tail_arm_vt_mm * mm,
            tail_arm_ht=None if self.tail_arm_ht_mm is None else self.tail_arm_ht_mm * mm,
            capacity_ls=self.capacity_ls_n,
            schrenk_samples=self.schrenk_samples,
            hex_circumdiameter=self.hex_circumdiameter_mm * mm,
            plate_thickness=self.plate_thickness_mm * mm,
            adhesive_ratio=self.adhesive_ratio,
            dihedral_deg=self.dihedral_deg,
            drone_total_mass=(
                None if self.drone_total_mass_g is None else self.drone_total_mass_g * 1e-3
            ),
            material_name=self.material_name,
            adhesive_name=self.adhesive_name,
            material_db=self.material_db,
            adhesive_db=self.adhesive_db,
        )


class MapRequest(DesignRequest):
    vc_min_m_s: float = 4.0
    vc_max_m_s: float = 16.0
    ar_min: float = 1.0
    ar_max: float = 10.0
    vc_steps: int = 61
    ar_steps: int = 46
    target_wing_loading_n_m2: Optional[float] = None


class TileRequest(DesignRequest):
    span_mm: Optional[float] = None
    chord_mm: Optional[float] = None


class StructureRequest(DesignRequest):
    station_count: int = 8
    flexural_rigidity_n_m2: Optional[float] = None


class MaterialModel(_Strict):
    name: str
    youngs_modulus_mpa: float
    youngs_modulus_sd_mpa: float = 0.0
    density_kg_m3: float
    density_sd_kg_m3: float = 0.0
    kcal_per_kg: float = 0.0
    provenance: str = ""

    def to_record(self) -> FoodMaterial:
        return FoodMaterial(
            name=self.name,
            youngs_modulus=self.youngs_modulus_mpa * 1e6,
            youngs_modulus_sd=self.youngs_modulus_sd_mpa * 1e6,
            density=self.density_kg_m3,
            density_sd=self.density_sd_kg_m3,
            caloric_density=self.kcal_per_kg,
            provenance=self.provenance,
        )

    @classmethod
    def from_record(cls, record: FoodMaterial) -> "MaterialModel":
        return cls(
            name=record.name,
            youngs_modulus_mpa=record.youngs_modulus / 1e6,
            youngs_modulus_sd_mpa=record.youngs_modulus_sd / 1e6,
            density_kg_m3=record.density,
            density_sd_kg_m3=record.density_sd,
            kcal_per_kg=record.caloric_density,
            provenance=record.provenance,
        )


class AdhesiveModel(_Strict):
    name: str
    kind: Literal["mean", "lower_bound"]
    stress_kpa: float
    stress_sd_kpa: float = 0.0
    kcal_per_kg: float = 0.0
    provenance: str = ""

    def to_record(self) -> AdhesiveRecord:
        kind = StrengthKind.MEASURED_MEAN if self.kind == "mean" else StrengthKind.LOWER_BOUND
        return AdhesiveRecord(
            name=self.name,
            strength_kind=kind,
            adhesive_stress=self.stress_kpa * 1e3,
            adhesive_stress_sd=self.stress_sd_kpa * 1e3,
            caloric_density=self.kcal_per_kg,
            provenance=self.provenance,
        )

    @classmethod
    def from_record(cls, record: AdhesiveRecord) -> "AdhesiveModel":
        return cls(
            name=record.name,
            kind="mean" if record.strength_kind is StrengthKind.MEASURED_MEAN else "lower_bound",
            stress_kpa=record.adhesive_stress / 1e3,
            stress_sd_kpa=record.adhesive_stress_sd / 1e3,
            kcal_per_kg=record.caloric_density,
            provenance=record.provenance,
        )


class MaterialsRankRequest(_Strict):
    materials: Optional[list[MaterialModel]] = None  # None selects the seed DB
    target_modulus_mpa: float
    target_density_kg_m3: float


class ParetoRequest(_Strict):
    materials: Optional[list[MaterialModel]] = None


class AdhesiveSelectRequest(_Strict):
    adhesives: Optional[list[AdhesiveModel]] = None


class HealthResponse(BaseModel):
    status: str
    version: str


class MassBudgetModel(BaseModel):
    payload_mass_kg: float
    empty_mass_kg: float
    gross_mass_kg: float
    gross_weight_n: float


class WingModel(BaseModel):
    reference_area_m2: float
    aspect_ratio: float
    span_m: float
    chord_m: float
    plate_thickness_m: float
    dihedral_angle_deg: float


class AeroModel(BaseModel):
    cruise_speed_m_s: float
    stall_speed_m_s: float
    critical_alpha_rad: float
    critical_alpha_deg: float
    lift_coefficient: float
    oswald_factor: float
    dynamic_pressure_pa: float
    achieved_re: float
    wing_loading_n_m2: float
    lift_drag_ratio: float


class PropulsionModel(BaseModel):
    drag_coefficient: float
    max_thrust_n: float
    required_tw_cruise: float
    thrust_match_tw: float
    max_tw: float
    margins: list[float]


class TailModel(BaseModel):
    c_vt: float
    c_ht: float
    s_vt_m2: float
    s_ht_m2: float
    l_vt_m: float
    l_ht_m: float
    coefficient_ratio: float
    violations: list[str]


class StrengthModel(BaseModel):
    required_half_lift_n: float
    capacity_half_lift_n: float
    margin: float
    full_span_capacity_in_wg: float
    verdict: bool


class StructureSummaryModel(BaseModel):
    total_lift_n: float
    sample_count: int
    load_intercept_n_m: float
    root_load_n_m: float
    tip_load_n_m: float
    half_span_lift_n: float
    empty_weight_capacity_ratio: Optional[float] = None


class TilingSummaryModel(BaseModel):
    circumdiameter_m: float
    full_hex_count: int
    partial_count: int
    tile_count: int
    seam_length_m: float
    covered_area_m2: float


class WingMassModel(BaseModel):
    cookie_mass_kg: float
    adhesive_mass_kg: float
    total_mass_kg: float
    total_kcal: float
    edible_fraction_of_drone: float


class VerdictsModel(BaseModel):
    thrust_margin: bool
    tail: bool
    strength: Optional[bool] = None
    overall: bool


class ReportDocuments(BaseModel):
    human_text: str
    machine_json: str


class DesignResponse(BaseModel):
    echo: dict
    mass_budget: MassBudgetModel
    wing: WingModel
    aero: AeroModel
    propulsion: PropulsionModel
    tail: TailModel
    structure: StructureSummaryModel
    strength: Optional[StrengthModel] = None
    tiling: TilingSummaryModel
    wing_mass: WingMassModel
    verdicts: VerdictsModel
    reports: ReportDocuments


class MapResponse(BaseModel):
    cruise_speeds: list[float]
    aspect_ratios: list[float]
    wing_loading: list[list[float]]
    target_wing_loading_n_m2: float
    contour: list[tuple[float, float]]
    csv: str
    svg: str


class TileResponse(BaseModel):
    span_m: float
    chord_m: float
    circumdiameter_m: float
    full_hex_count: int
    partial_count: int
    tile_count: int
    seam_length_m: float
    covered_area_m2: float
    wing_mass: WingMassModel
    svg: str


class BagStationModel(BaseModel):
    x_start_m: float
    x_end_m: float
    mass_kg: float


class DeflectionModel(BaseModel):
    tip_deflection_m: float
    flexural_rigidity_n_m2: float


class StructureResponse(BaseModel):
    span_m: float
    structure: StructureSummaryModel
    strength: Optional[StrengthModel] = None
    bag_plan: list[BagStationModel]
    deflection: Optional[DeflectionModel] = None


class RankedMaterialModel(BaseModel):
    material: MaterialModel
    distance: float


class MaterialsRankResponse(BaseModel):
    target_modulus_mpa: float
    target_density_kg_m3: float
    ranking: list[RankedMaterialModel]


class ParetoResponse(BaseModel):
    front: list[MaterialModel]


class AdhesiveSelectResponse(BaseModel):
    selected: AdhesiveModel
    conservative_strength_kpa: float


class SeedResponse(BaseModel):
    materials: list[MaterialModel]
    adhesives: list[AdhesiveModel]
