"""Report rendering: human text, machine JSON, and the design-space map files.

Human output shows 4 significant figures; machine output keeps full float
precision (shortest round-trip repr) and adds a display block in workshop
units (g, mm, cm2, degrees). Both renderings are deterministic.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

from .errors import DesignError
from .pipeline import DesignReport
from .sizing import DesignSpaceGrid


def _g4(value: float) -> str:
    return f"{value:.4g}"


def report_to_dict(report: DesignReport) -> dict:
    """Full-precision SI object tree for one pipeline run."""
    r = report
    out: dict = {
        "inputs": report.echo,
        "material": {
            "name": r.material.name,
            "youngs_modulus_pa": r.material.youngs_modulus,
            "density_kg_m3": r.material.density,
            "kcal_per_kg": r.material.caloric_density,
        },
        "adhesive": {
            "name": r.adhesive.name,
            "kind": r.adhesive.strength_kind.value,
            "stress_pa": r.adhesive.adhesive_stress,
            "conservative_strength_pa": r.adhesive_conservative_strength,
            "kcal_per_kg": r.adhesive.caloric_density,
        },
        "mass_budget": {
            "payload_mass_kg": r.mass_budget.payload_mass,
            "empty_mass_kg": r.mass_budget.empty_mass,
            "gross_mass_kg": r.mass_budget.gross_mass,
            "gross_weight_n": r.mass_budget.gross_weight,
        },
        "wing": {
            "reference_area_m2": r.wing.reference_area,
            "aspect_ratio": r.wing.aspect_ratio,
            "span_m": r.wing.span,
            "chord_m": r.wing.chord,
            "plate_thickness_m": r.wing.plate_thickness,
            "dihedral_angle_deg": r.wing.dihedral_angle_deg,
        },
        "aero": {
            "cruise_speed_m_s": r.aero.cruise_speed,
            "stall_speed_m_s": r.aero.stall_speed,
            "critical_alpha_rad": r.aero.critical_alpha,
            "lift_coefficient": r.aero.lift_coefficient,
            "oswald_factor": r.aero.oswald_factor,
            "dynamic_pressure_pa": r.aero.dynamic_pressure,
            "achieved_re": r.aero.achieved_re,
            "wing_loading_n_m2": r.aero.wing_loading,
            "lift_drag_ratio": r.aero.lift_drag_ratio,
        },
        "propulsion": {
            "drag_coefficient": r.propulsion.drag_coefficient,
            "max_thrust_n": r.propulsion.max_thrust,
            "required_tw_cruise": r.propulsion.required_tw_cruise,
            "thrust_match_tw": r.propulsion.thrust_match_tw,
            "max_tw": r.propulsion.max_tw,
            "margins": list(r.thrust_margins.margins),
        },
        "tail": {
            "c_vt": r.tail.c_vt,
            "c_ht": r.tail.c_ht,
            "s_vt_m2": r.tail.s_vt,
            "s_ht_m2": r.tail.s_ht,
            "l_vt_m": r.tail.l_vt,
            "l_ht_m": r.tail.l_ht,
            "coefficient_ratio": r.tail_validation.coefficient_ratio,
            "violations": list(r.tail_validation.violations),
        },
        "structure": {
            "total_lift_n": r.load_case.total_lift,
            "sample_count": r.load_case.sample_count,
            "load_intercept_n_m": r.load_intercept,
            "root_load_n_m": r.root_load,
            "tip_load_n_m": r.tip_load,
            "half_span_lift_n": r.half_span_lift,
            "strength": None,
            "empty_weight_capacity_ratio": r.empty_weight_capacity_ratio,
        },
        "tiling": {
            "circumdiameter_m": r.tiling.circumdiameter,
            "full_hex_count": r.tiling.full_hex_count,
            "partial_count": r.tiling.partial_count,
            "tile_count": r.tiling.tile_count,
            "seam_length_m": r.tiling.seam_length,
            "covered_area_m2": r.tiling.covered_area,
        },
        "wing_mass": {
            "cookie_mass_kg": r.wing_mass.cookie_mass,
            "adhesive_mass_kg": r.wing_mass.adhesive_mass,
            "total_mass_kg": r.wing_mass.total_mass,
            "total_kcal": r.wing_mass.total_kcal,
            "edible_fraction_of_drone": r.wing_mass.edible_fraction_of_drone,
        },
        "verdicts": {
            "thrust_margin": r.verdicts.thrust_margin,
            "tail": r.verdicts.tail,
            "strength": r.verdicts.strength,
            "overall": r.verdicts.overall,
        },
    }
    if r.strength is not None:
        out["structure"]["strength"] = {
            "required_half_lift_n": r.strength.required_half_lift,
            "capacity_half_lift_n": r.strength.capacity_half_lift,
            "margin": r.strength.margin,
            "full_span_capacity_in_wg": r.strength.full_span_capacity_in_wg,
            "verdict": r.strength.verdict,
        }
    out["display"] = {
        "payload_g": r.mass_budget.payload_mass * 1e3,
        "empty_mass_g": r.mass_budget.empty_mass * 1e3,
        "gross_mass_g": r.mass_budget.gross_mass * 1e3,
        "reference_area_cm2": r.wing.reference_area * 1e4,
        "chord_mm": r.wing.chord * 1e3,
        "span_mm": r.wing.span * 1e3,
        "plate_thickness_mm": r.wing.plate_thickness * 1e3,
        "critical_alpha_deg": math.degrees(r.aero.critical_alpha),
        "hex_circumdiameter_mm": r.tiling.circumdiameter * 1e3,
        "s_vt_cm2": r.tail.s_vt * 1e4,
        "s_ht_cm2": r.tail.s_ht * 1e4,
        "l_vt_mm": r.tail.l_vt * 1e3,
        "l_ht_mm": r.tail.l_ht * 1e3,
        "cookie_mass_g": r.wing_mass.cookie_mass * 1e3,
        "adhesive_mass_g": r.wing_mass.adhesive_mass * 1e3,
        "edible_mass_g": r.wing_mass.total_mass * 1e3,
    }
    return out


def render_machine(report: DesignReport) -> str:
    """Machine-readable JSON; parsing and re-emitting reproduces it exactly."""
    return json.dumps(report_to_dict(report), indent=2, sort_keys=True) + "\n"


def _pass_fail(ok: bool) -> str:
    return "pass" if ok else "FAIL"


def _rows_human(report: DesignReport) -> list[tuple[str, str]]:
    r = report
    rows: list[tuple[str, str]] = [
        ("Nutrition to carry", f"{_g4(r.echo['nutrition_kcal']['value'])} kcal"),
        ("Payload (W_payload)", f"{_g4(r.mass_budget.payload_mass * 1e3)} g"),
        ("Estimated empty mass (W_wo_payload)", f"{_g4(r.mass_budget.empty_mass * 1e3)} g"),
        ("Gross mass (W)", f"{_g4(r.mass_budget.gross_mass * 1e3)} g"),
        ("Gross weight (W g)", f"{_g4(r.mass_budget.gross_weight)} N"),
        ("Wing material", r.material.name),
        ("Edible adhesive", r.adhesive.name),
        ("Wing reference area (S)", f"{_g4(r.wing.reference_area * 1e4)} cm^2"),
        ("Wing loading (W/S)", f"{_g4(r.aero.wing_loading)} N/m^2"),
        ("Wing aspect ratio (AR)", _g4(r.wing.aspect_ratio)),
        ("Wing chord (c)", f"{_g4(r.wing.chord * 1e3)} mm"),
        ("Wingspan (b)", f"{_g4(r.wing.span * 1e3)} mm"),
        ("Plate thickness (t)", f"{_g4(r.wing.plate_thickness * 1e3)} mm"),
        ("Dihedral angle", f"{_g4(r.wing.dihedral_angle_deg)} deg"),
        ("Cruise speed (V_c)", f"{_g4(r.aero.cruise_speed)} m/s"),
        ("Chord Reynolds number (Re)", _g4(r.aero.achieved_re)),
        ("Angle of attack (alpha)", f"{_g4(math.degrees(r.aero.critical_alpha))} deg"),
        ("Lift coefficient (C_L)", _g4(r.aero.lift_coefficient)),
        ("Stall speed (V_s)", f"{_g4(r.aero.stall_speed)} m/s"),
        ("Oswald factor (e)", _g4(r.aero.oswald_factor)),
        ("Dynamic pressure (q)", f"{_g4(r.aero.dynamic_pressure)} Pa"),
        ("Lift-to-drag ratio (L/D)", _g4(r.aero.lift_drag_ratio)),
        ("Required T/W (cruise)", _g4(r.propulsion.required_tw_cruise)),
        ("Thrust-match T/W (1/(L/D))", _g4(r.propulsion.thrust_match_tw)),
        ("Maximum T/W", _g4(r.propulsion.max_tw)),
        ("Thrust margins", ", ".join(_g4(m) for m in r.thrust_margins.margins)),
        ("Thrust verdict", _pass_fail(r.verdicts.thrust_margin)),
        ("Tail volume coefficients (C_VT / C_HT)", f"{_g4(r.tail.c_vt)} / {_g4(r.tail.c_ht)}"),
        ("Tail areas (S_VT / S_HT)", f"{_g4(r.tail.s_vt * 1e4)} / {_g4(r.tail.s_ht * 1e4)} cm^2"),
        ("Tail arms (L_VT / L_HT)", f"{_g4(r.tail.l_vt * 1e3)} / {_g4(r.tail.l_ht * 1e3)} mm"),
        ("Tail verdict", _pass_fail(r.verdicts.tail)),
        ("Schrenk intercept (f0)", f"{_g4(r.load_intercept)} N/m"),
        ("Root line load F(0)", f"{_g4(r.root_load)} N/m"),
        ("Tip line load F(b/2)", f"{_g4(r.tip_load)} N/m"),
        ("Required half-span lift (L_s)", f"{_g4(r.half_span_lift)} N"),
    ]
    if r.strength is not None:
        rows += [
            ("Tested half-span capacity", f"{_g4(r.strength.capacity_half_lift)} N"),
            ("Strength margin", _g4(r.strength.margin)),
            ("Full-span capacity", f"{_g4(r.strength.full_span_capacity_in_wg)} W_g"),
            ("Capacity / empty weight", _g4(r.empty_weight_capacity_ratio)),
            ("Strength verdict", _pass_fail(r.verdicts.strength)),
        ]
    rows += [
        ("Hexagon across corners", f"{_g4(r.tiling.circumdiameter * 1e3)} mm"),
        ("Full hexagons", str(r.tiling.full_hex_count)),
        ("Partial tiles", str(r.tiling.partial_count)),
        ("Seam length", f"{_g4(r.tiling.seam_length)} m"),
        ("Cookie mass", f"{_g4(r.wing_mass.cookie_mass * 1e3)} g"),
        ("Adhesive mass", f"{_g4(r.wing_mass.adhesive_mass * 1e3)} g"),
        ("Edible wing mass", f"{_g4(r.wing_mass.total_mass * 1e3)} g"),
        ("Calories carried", f"{_g4(r.wing_mass.total_kcal)} kcal"),
        ("Edible fraction of drone", _g4(r.wing_mass.edible_fraction_of_drone)),
        ("Overall verdict", _pass_fail(r.verdicts.overall)),
    ]
    return rows


def render_human(report: DesignReport) -> str:
    """Aligned key/value table of the design point in workshop units."""
    rows = _rows_human(report)
    width = max(len(k) for k, _ in rows)
    lines = ["Edible wing design report", "=" * len("Edible wing design report"), ""]
    lines += [f"{k:<{width}}  {v}" for k, v in rows]
    defaults = sorted(k for k, e in report.echo.items() if e["source"] == "default")
    derived = sorted(k for k, e in report.echo.items() if e["source"] == "derived")
    lines.append("")
    if defaults:
        lines.append("Defaults used: " + ", ".join(defaults))
    if derived:
        lines.append("Derived inputs: " + ", ".join(derived))
    return "\n".join(lines) + "\n"


def render_report(report: DesignReport, format: str) -> str:
    if format == "human_text":
        return render_human(report)
    if format == "machine_structured":
        return render_machine(report)
    raise DesignError(f"unknown report format {format!r}")


def emit_report(report: DesignReport, format: str, path: str | Path) -> Path:
    """Write one report rendering to disk; returns the output path."""
    path = Path(path)
    text = render_report(report, format)
    try:
        path.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise DesignError(f"cannot write report to {path}: {exc}") from exc
    return path


def design_map_csv(grid: DesignSpaceGrid) -> str:
    """Grid cells as CSV rows (Vc outer loop); floats use round-trip repr."""
    lines = ["Vc,AR,wing_loading"]
    for i, v in enumerate(grid.cruise_speeds):
        for j, a in enumerate(grid.aspect_ratios):
            lines.append(f"{v!r},{a!r},{grid.wing_loading[i][j]!r}")
    return "\n".join(lines) + "\n"


def _lerp_color(t: float) -> str:
    # dark blue to yellow, two-stop linear ramp
    lo, hi = (20, 42, 90), (250, 220, 60)
    return "#{:02x}{:02x}{:02x}".format(
        *(round(a + t * (b - a)) for a, b in zip(lo, hi))
    )


def design_map_svg(grid: DesignSpaceGrid, width: float = 640.0, height: float = 480.0) -> str:
    """Heatmap of the wing-loading surface with the target iso-line dashed.

    x maps to cruise speed, y to aspect ratio (increasing upward).
    """
    v = grid.cruise_speeds
    a = grid.aspect_ratios
    flat = [x for row in grid.wing_loading for x in row]
    lo, hi = min(flat), max(flat)
    span = hi - lo or 1.0

    def sx(vc: float) -> float:
        return (vc - v[0]) / (v[-1] - v[0]) * width

    def sy(ar: float) -> float:
        return height - (ar - a[0]) / (a[-1] - a[0]) * height

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width:.0f}" height="{height:.0f}" viewBox="0 0 {width:.0f} {height:.0f}">',
    ]
    for i in range(len(v) - 1):
        for j in range(len(a) - 1):
            mean = (
                grid.wing_loading[i][j]
                + grid.wing_loading[i + 1][j]
                + grid.wing_loading[i][j + 1]
                + grid.wing_loading[i + 1][j + 1]
            ) / 4.0
            color = _lerp_color((mean - lo) / span)
            x, y = sx(v[i]), sy(a[j + 1])
            w, h = sx(v[i + 1]) - x, sy(a[j]) - y
            lines.append(
                f'  <rect x="{x:.2f}" y="{y:.2f}" width="{w:.2f}" height="{h:.2f}" '
                f'fill="{color}"/>'
            )
    if grid.contour:
        pts = " ".join(f"{sx(vc):.2f},{sy(ar):.2f}" for vc, ar in grid.contour)
        lines.append(
            f'  <polyline points="{pts}" fill="none" stroke="white" '
            'stroke-width="2" stroke-dasharray="6,4"/>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def emit_design_map(
    grid: DesignSpaceGrid, csv_path: str | Path, svg_path: str | Path
) -> tuple[Path, Path]:
    """Write the CSV grid and SVG heatmap; returns both paths."""
    csv_path, svg_path = Path(csv_path), Path(svg_path)
    try:
        csv_path.write_text(design_map_csv(grid), encoding="utf-8")
        svg_path.write_text(design_map_svg(grid), encoding="utf-8")
    except OSError as exc:
        raise DesignError(f"cannot write design map: {exc}") from exc
    return csv_path, svg_path
