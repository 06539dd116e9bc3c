import dataclasses
import json
import math

import pytest

from ediblewing.configio import read_config_file
from ediblewing.errors import DesignError, InfeasiblePlanformError, PipelineStageError
from ediblewing.pipeline import DesignConfig, run_design_pipeline
from ediblewing.report import (
    design_map_csv,
    design_map_svg,
    emit_design_map,
    emit_report,
    render_human,
    render_machine,
)
from ediblewing.sizing import EnvironmentSpec, design_space_grid


@pytest.fixture(scope="module")
def reference_report():
    return run_design_pipeline(DesignConfig(capacity_ls=1.56))


class TestPipeline:
    def test_mass_budget_reference(self, reference_report):
        budget = reference_report.mass_budget
        assert abs(budget.gross_mass * 1e3 - 294.0) <= 1.0
        assert abs(budget.empty_mass * 1e3 - 214.0) <= 1.0

    def test_planform_reference(self, reference_report):
        wing = reference_report.wing
        aero = reference_report.aero
        assert 4.28 <= wing.aspect_ratio <= 4.40
        assert 0.154 <= wing.chord <= 0.158
        assert 0.671 <= wing.span <= 0.683
        assert 9.38 <= aero.cruise_speed <= 9.52

    def test_wing_loading_consistency(self, reference_report):
        r = reference_report
        assert r.aero.wing_loading == pytest.approx(
            r.mass_budget.gross_weight / r.wing.reference_area, rel=1e-12
        )

    def test_reynolds_consistency(self, reference_report):
        assert reference_report.aero.achieved_re == pytest.approx(1e5, rel=1e-9)

    def test_stall_does_not_exceed_cruise(self, reference_report):
        aero = reference_report.aero
        assert aero.stall_speed <= aero.cruise_speed * (1 + 1e-9)

    def test_strength_section(self, reference_report):
        strength = reference_report.strength
        assert strength is not None
        assert strength.verdict is True
        assert abs(strength.full_span_capacity_in_wg - 1.08) <= 0.01
        assert abs(strength.required_half_lift - 1.442) <= 0.005
        assert reference_report.empty_weight_capacity_ratio == pytest.approx(0.743, abs=2e-3)

    def test_low_capacity_fails_verdict(self):
        report = run_design_pipeline(DesignConfig(capacity_ls=1.04))
        assert report.strength.verdict is False
        assert report.verdicts.overall is False

    def test_no_capacity_leaves_strength_unset(self):
        report = run_design_pipeline(DesignConfig())
        assert report.strength is None
        assert report.verdicts.strength is None
        assert report.verdicts.overall is True

    def test_calorie_closure(self, reference_report):
        assert abs(reference_report.wing_mass.total_kcal - 300.0) <= 3.0

    def test_tiling_covers_planform(self, reference_report):
        r = reference_report
        planform = r.wing.span * r.wing.chord
        assert r.tiling.covered_area == pytest.approx(planform, rel=1e-9)

    def test_doubling_nutrition_scales_area_only(self):
        base = run_design_pipeline(DesignConfig())
        double = run_design_pipeline(DesignConfig(nutrition_kcal=600.0))
        assert double.wing.reference_area == pytest.approx(
            2 * base.wing.reference_area, rel=1e-12
        )
        assert double.mass_budget.gross_mass == pytest.approx(
            base.mass_budget.gross_mass, rel=1e-12
        )
        assert double.aero.wing_loading == pytest.approx(
            base.aero.wing_loading / 2, rel=1e-12
        )

    def test_zero_nutrition_fails_at_area_stage(self):
        with pytest.raises(PipelineStageError) as err:
            run_design_pipeline(DesignConfig(nutrition_kcal=0.0))
        assert err.value.stage == "wing_area"

    def test_zero_payload_fails_at_mass_stage(self):
        with pytest.raises(PipelineStageError) as err:
            run_design_pipeline(DesignConfig(payload_mass=0.0))
        assert err.value.stage == "mass_budget"

    def test_unknown_material_fails_at_materials_stage(self):
        with pytest.raises(PipelineStageError) as err:
            run_design_pipeline(DesignConfig(material_name="granite"))
        assert err.value.stage == "materials"

    def test_infeasible_planform_propagates_stage(self):
        with pytest.raises(PipelineStageError) as err:
            run_design_pipeline(DesignConfig(payload_mass=4.0))
        assert err.value.stage == "planform"
        assert isinstance(err.value.cause, InfeasiblePlanformError)

    def test_alpha_warning_propagates(self):
        # a draggy, lightly loaded design solves near AR 1 where the required
        # angle of attack leaves the linear thin-plate range
        with pytest.warns(UserWarning, match="15 deg"):
            run_design_pipeline(DesignConfig(payload_mass=0.017, zero_lift_drag=0.06))

    def test_echo_records_defaults_and_user_values(self):
        report = run_design_pipeline(DesignConfig(payload_mass=0.1))
        assert report.echo["payload_mass"]["source"] == "user"
        assert report.echo["nutrition_kcal"]["source"] == "default"
        assert report.echo["drone_total_mass"]["source"] == "derived"
        assert report.echo["drone_total_mass"]["value"] == pytest.approx(
            report.mass_budget.gross_mass, rel=1e-12
        )

    def test_deterministic_reports(self):
        config = DesignConfig(capacity_ls=1.56)
        a = run_design_pipeline(config)
        b = run_design_pipeline(config)
        assert render_human(a) == render_human(b)
        assert render_machine(a) == render_machine(b)


class TestReportRendering:
    def test_human_contains_table_rows(self, reference_report):
        text = render_human(reference_report)
        assert "Wing loading (W/S)" in text
        assert "N/m^2" in text
        assert "Stall speed (V_s)" in text
        assert "Defaults used:" in text

    def test_machine_round_trip(self, reference_report):
        text = render_machine(reference_report)
        parsed = json.loads(text)
        assert json.dumps(parsed, indent=2, sort_keys=True) + "\n" == text

    def test_machine_has_si_and_display_blocks(self, reference_report):
        doc = json.loads(render_machine(reference_report))
        assert doc["wing"]["chord_m"] == pytest.approx(
            doc["display"]["chord_mm"] / 1e3, rel=1e-12
        )
        assert doc["display"]["reference_area_cm2"] == pytest.approx(1056.34, abs=1.0)
        assert doc["aero"]["critical_alpha_rad"] == pytest.approx(
            math.radians(doc["display"]["critical_alpha_deg"]), rel=1e-12
        )

    def test_emit_report_idempotent(self, tmp_path, reference_report):
        first = emit_report(reference_report, "machine_structured", tmp_path / "r.json")
        content = first.read_bytes()
        emit_report(reference_report, "machine_structured", tmp_path / "r.json")
        assert first.read_bytes() == content
        human = emit_report(reference_report, "human_text", tmp_path / "r.txt")
        assert "Wing loading (W/S)" in human.read_text()

    def test_unknown_format_rejected(self, reference_report):
        with pytest.raises(DesignError):
            emit_report(reference_report, "yaml", "/tmp/nope")


class TestDesignMapFiles:
    def test_csv_rows_and_round_trip(self):
        grid = design_space_grid((4.0, 16.0), (1.0, 10.0), (2, 2), 0.02, EnvironmentSpec())
        csv_text = design_map_csv(grid)
        lines = csv_text.strip().splitlines()
        assert lines[0] == "Vc,AR,wing_loading"
        assert len(lines) == 1 + 4
        for line, (i, j) in zip(lines[1:], [(0, 0), (0, 1), (1, 0), (1, 1)]):
            v, a, w = (float(x) for x in line.split(","))
            assert v == grid.cruise_speeds[i]
            assert a == grid.aspect_ratios[j]
            assert w == grid.wing_loading[i][j]

    def test_svg_heatmap_has_dashed_contour(self):
        grid = design_space_grid(
            (4.0, 16.0), (1.0, 10.0), (25, 19), 0.02, EnvironmentSpec(),
            target_wing_loading=27.3,
        )
        svg = design_map_svg(grid)
        assert "<rect" in svg
        assert "stroke-dasharray" in svg
        assert "polyline" in svg

    def test_emit_design_map_files(self, tmp_path):
        grid = design_space_grid(
            (4.0, 16.0), (1.0, 10.0), (5, 5), 0.02, EnvironmentSpec(),
            target_wing_loading=27.3,
        )
        csv_path, svg_path = emit_design_map(
            grid, tmp_path / "map.csv", tmp_path / "map.svg"
        )
        assert csv_path.read_text().startswith("Vc,AR,wing_loading")
        assert svg_path.read_text().startswith("<?xml")


class TestConfigFile:
    def test_parse_with_comments(self, tmp_path):
        cfg = tmp_path / "design.cfg"
        cfg.write_text(
            "# reference design\n"
            "nutrition_kcal = 300\n"
            "\n"
            "payload_mass_g = 80\n"
            "material_name = rice cookie\n"
        )
        values = read_config_file(cfg)
        assert values == {
            "nutrition_kcal": "300",
            "payload_mass_g": "80",
            "material_name": "rice cookie",
        }

    def test_missing_equals_reports_line(self, tmp_path):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("nutrition_kcal = 300\njust words\n")
        with pytest.raises(DesignError, match=r"bad\.cfg:2"):
            read_config_file(cfg)

    def test_duplicate_key_rejected(self, tmp_path):
        cfg = tmp_path / "dup.cfg"
        cfg.write_text("a = 1\na = 2\n")
        with pytest.raises(DesignError, match="duplicate"):
            read_config_file(cfg)

    def test_missing_file(self, tmp_path):
        with pytest.raises(DesignError, match="not found"):
            read_config_file(tmp_path / "none.cfg")


class TestConfigDefaultsMatchRequestModel:
    def test_request_model_round_trip(self):
        from ediblewing.service.schemas import DesignRequest

        config = DesignRequest().to_config()
        default = DesignConfig()
        for field in dataclasses.fields(DesignConfig):
            a = getattr(config, field.name)
            b = getattr(default, field.name)
            if isinstance(a, float) and isinstance(b, float):
                assert a == pytest.approx(b, rel=1e-12), field.name
            else:
                assert a == b, field.name
