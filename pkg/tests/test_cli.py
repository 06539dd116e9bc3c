import json

import pytest

from ediblewing.cli import main
from ediblewing.service.app import app


def run_cli(*argv):
    return main(list(argv))


class TestDesignCommand:
    def test_writes_reports_and_passes(self, tmp_path, capsys):
        code = run_cli("design", "--out-dir", str(tmp_path), "--capacity-ls-n", "1.56")
        assert code == 0
        human = (tmp_path / "design_report.txt").read_text()
        assert "Wing loading (W/S)" in human
        machine = json.loads((tmp_path / "design_report.json").read_text())
        assert machine["verdicts"]["overall"] is True
        out = capsys.readouterr().out
        assert "Wing aspect ratio (AR)" in out

    def test_failing_verdict_exits_one(self, tmp_path):
        code = run_cli("design", "--out-dir", str(tmp_path), "--capacity-ls-n", "1.04")
        assert code == 1

    def test_format_selection(self, tmp_path):
        code = run_cli("design", "--out-dir", str(tmp_path), "--format", "machine")
        assert code == 0
        assert not (tmp_path / "design_report.txt").exists()
        assert (tmp_path / "design_report.json").exists()

    def test_config_file_with_override(self, tmp_path):
        cfg = tmp_path / "design.cfg"
        cfg.write_text("payload_mass_g = 80\nnutrition_kcal = 300\nout_dir = unused\n")
        out = tmp_path / "out"
        code = run_cli(
            "design", "--config", str(cfg), "--out-dir", str(out), "--nutrition-kcal", "600"
        )
        assert code == 0
        machine = json.loads((out / "design_report.json").read_text())
        assert machine["inputs"]["nutrition_kcal"]["value"] == 600.0

    def test_unknown_config_key_exits_two(self, tmp_path, capsys):
        cfg = tmp_path / "design.cfg"
        cfg.write_text("wingspan_mm = 678\n")
        code = run_cli("design", "--config", str(cfg), "--out-dir", str(tmp_path))
        assert code == 2
        assert "wingspan_mm" in capsys.readouterr().err

    def test_stage_error_exits_two(self, tmp_path, capsys):
        code = run_cli(
            "design", "--out-dir", str(tmp_path), "--nutrition-kcal", "0"
        )
        assert code == 2
        assert "wing_area" in capsys.readouterr().err


class TestMapCommand:
    def test_writes_csv_and_svg(self, tmp_path):
        code = run_cli(
            "map", "--out-dir", str(tmp_path), "--vc-steps", "13", "--ar-steps", "7"
        )
        assert code == 0
        csv_text = (tmp_path / "design_map.csv").read_text()
        assert csv_text.startswith("Vc,AR,wing_loading")
        assert len(csv_text.strip().splitlines()) == 1 + 13 * 7
        assert (tmp_path / "design_map.svg").read_text().startswith("<?xml")


class TestTileCommand:
    def test_writes_svg(self, tmp_path, capsys):
        code = run_cli("tile", "--out-dir", str(tmp_path))
        assert code == 0
        svg = (tmp_path / "wing_tiling.svg").read_text()
        assert svg.startswith("<?xml")
        assert "full hexagons" in capsys.readouterr().out

    def test_explicit_planform(self, tmp_path):
        code = run_cli(
            "tile",
            "--out-dir",
            str(tmp_path),
            "--span-mm",
            "678.8",
            "--chord-mm",
            "155.9",
        )
        assert code == 0


class TestStructureCommand:
    def test_prints_bag_plan(self, capsys):
        code = run_cli("structure", "--capacity-ls-n", "1.56", "--station-count", "4")
        assert code == 0
        out = capsys.readouterr().out
        assert "bag plan" in out
        assert "margin" in out

    def test_failing_capacity_exits_one(self):
        assert run_cli("structure", "--capacity-ls-n", "1.04") == 1


class TestMaterialsCommand:
    def test_rank(self, capsys):
        code = run_cli(
            "materials", "rank", "--target-modulus-mpa", "10", "--target-density", "100"
        )
        assert code == 0
        assert "rice cookie" in capsys.readouterr().out

    def test_adhesive(self, capsys):
        assert run_cli("materials", "adhesive") == 0
        assert "gelatin glue" in capsys.readouterr().out

    def test_pareto_with_custom_db(self, tmp_path, capsys):
        db = tmp_path / "db.txt"
        db.write_text(
            "name,E_MPa,E_sd_MPa,rho_kg_m3,rho_sd,kcal_per_kg,provenance\n"
            "A,10,0,100,0,3870,x\n"
            "B,5,0,200,0,2000,x\n"
            "C,20,0,500,0,5000,x\n"
        )
        assert run_cli("materials", "pareto", "--db", str(db)) == 0
        out = capsys.readouterr().out
        assert "A" in out and "C" in out and "B" not in out.replace("MPa", "")

    def test_show(self, capsys):
        assert run_cli("materials", "show") == 0
        out = capsys.readouterr().out
        assert "rice cookie" in out
        assert "gelatin glue" in out


@pytest.fixture(scope="module")
def live_server():
    import socket
    import threading
    import time

    import uvicorn

    sock = socket.socket()
    sock.bind(("127.0.0.1", 0))
    port = sock.getsockname()[1]
    sock.close()
    server = uvicorn.Server(
        uvicorn.Config(app, host="127.0.0.1", port=port, log_level="warning")
    )
    thread = threading.Thread(target=server.run, daemon=True)
    thread.start()
    deadline = time.monotonic() + 10.0
    while not server.started:
        if time.monotonic() > deadline:
            raise RuntimeError("service did not start")
        time.sleep(0.02)
    yield f"http://127.0.0.1:{port}"
    server.should_exit = True
    thread.join(timeout=5)


class TestHttpMode:
    def test_design_over_live_server(self, live_server, tmp_path):
        code = run_cli("design", "--server", live_server, "--out-dir", str(tmp_path))
        assert code == 0
        assert (tmp_path / "design_report.json").exists()

    def test_server_error_surfaces_stage(self, live_server, tmp_path, capsys):
        code = run_cli(
            "design",
            "--server",
            live_server,
            "--out-dir",
            str(tmp_path),
            "--nutrition-kcal",
            "0",
        )
        assert code == 2
        assert "wing_area" in capsys.readouterr().err

    def test_materials_over_live_server(self, live_server, capsys):
        code = run_cli("materials", "adhesive", "--server", live_server)
        assert code == 0
        assert "gelatin glue" in capsys.readouterr().out

    def test_unreachable_server_exits_two(self, tmp_path, capsys):
        code = run_cli(
            "design", "--server", "http://127.0.0.1:9", "--out-dir", str(tmp_path)
        )
        assert code == 2
