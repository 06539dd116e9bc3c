"""Command-line client for the design service.

By default each subcommand runs the service handlers in-process; with
``--server URL`` the same request is POSTed to a running instance instead,
and the rendered documents from the response are written locally either way.

Exit codes: 0 when the run succeeds and every verdict passes, 1 when a
verdict fails, 2 on input or pipeline errors.
"""

from __future__ import annotations

import argparse
import sys
import typing
from pathlib import Path

import httpx
from pydantic import BaseModel, ValidationError

from . import __version__
from .configio import read_config_file
from .errors import DesignError
from .materials import load_adhesive_db, load_material_db
from .service import handlers
from .service import schemas as sc

# Keys handled by the CLI itself rather than by the request models.
_CLIENT_KEYS = {"out_dir"}


class LocalClient:
    """Runs handlers in-process; the default."""

    def design(self, req: sc.DesignRequest) -> sc.DesignResponse:
        return handlers.handle_design(req)

    def map(self, req: sc.MapRequest) -> sc.MapResponse:
        return handlers.handle_map(req)

    def tile(self, req: sc.TileRequest) -> sc.TileResponse:
        return handlers.handle_tile(req)

    def structure(self, req: sc.StructureRequest) -> sc.StructureResponse:
        return handlers.handle_structure(req)

    def materials_rank(self, req: sc.MaterialsRankRequest) -> sc.MaterialsRankResponse:
        return handlers.handle_materials_rank(req)

    def materials_pareto(self, req: sc.ParetoRequest) -> sc.ParetoResponse:
        return handlers.handle_materials_pareto(req)

    def materials_adhesive(self, req: sc.AdhesiveSelectRequest) -> sc.AdhesiveSelectResponse:
        return handlers.handle_adhesive_select(req)


class HttpClient:
    """POSTs requests to a running service instance."""

    def __init__(self, base_url: str, transport: httpx.BaseTransport | None = None):
        self._client = httpx.Client(base_url=base_url, transport=transport, timeout=60.0)

    def _post(self, path: str, req: BaseModel, response_type: type[BaseModel]):
        try:
            response = self._client.post(path, json=req.model_dump(mode="json"))
        except httpx.HTTPError as exc:
            raise DesignError(f"cannot reach server: {exc}") from exc
        if response.status_code != 200:
            try:
                body = response.json()
                detail = body.get("detail", response.text)
                stage = body.get("stage")
            except ValueError:
                detail, stage = response.text, None
            prefix = f"stage '{stage}': " if stage else ""
            raise DesignError(f"server returned {response.status_code}: {prefix}{detail}")
        return response_type.model_validate(response.json())

    def design(self, req):
        return self._post("/design", req, sc.DesignResponse)

    def map(self, req):
        return self._post("/map", req, sc.MapResponse)

    def tile(self, req):
        return self._post("/tile", req, sc.TileResponse)

    def structure(self, req):
        return self._post("/structure", req, sc.StructureResponse)

    def materials_rank(self, req):
        return self._post("/materials/rank", req, sc.MaterialsRankResponse)

    def materials_pareto(self, req):
        return self._post("/materials/pareto", req, sc.ParetoResponse)

    def materials_adhesive(self, req):
        return self._post("/materials/adhesive", req, sc.AdhesiveSelectResponse)


def _flag_type(annotation):
    origin = typing.get_origin(annotation)
    if origin is typing.Union:
        args = [a for a in typing.get_args(annotation) if a is not type(None)]
        if len(args) == 1:
            annotation = args[0]
    if annotation in (float, int, str):
        return annotation
    return None


def _add_model_flags(parser: argparse.ArgumentParser, model: type[BaseModel]) -> None:
    group = parser.add_argument_group("request overrides")
    for name, field in model.model_fields.items():
        flag_type = _flag_type(field.annotation)
        if flag_type is None:
            continue
        group.add_argument(
            "--" + name.replace("_", "-"),
            dest=name,
            type=flag_type,
            default=None,
            help=f"override config key {name} (default {field.default!r})",
            metavar="VALUE",
        )


def _add_common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", type=Path, default=None, help="key = value config file")
    parser.add_argument("--out-dir", type=Path, default=None, help="output directory")
    parser.add_argument("--server", default=None, help="base URL of a running service")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ediblewing",
        description="Size, check, and lay out an edible drone wing.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_design = sub.add_parser("design", help="run the full design pipeline")
    _add_common_flags(p_design)
    p_design.add_argument(
        "--format",
        choices=("human", "machine", "both"),
        default="both",
        help="which report files to write",
    )
    _add_model_flags(p_design, sc.DesignRequest)

    p_map = sub.add_parser("map", help="wing-loading design-space map (CSV + SVG)")
    _add_common_flags(p_map)
    _add_model_flags(p_map, sc.MapRequest)

    p_tile = sub.add_parser("tile", help="hexagonal cut layout (SVG) with mass accounting")
    _add_common_flags(p_tile)
    _add_model_flags(p_tile, sc.TileRequest)

    p_struct = sub.add_parser("structure", help="spanwise load, strength margin, bag plan")
    _add_common_flags(p_struct)
    _add_model_flags(p_struct, sc.StructureRequest)

    p_mat = sub.add_parser("materials", help="material and adhesive database queries")
    mat_sub = p_mat.add_subparsers(dest="materials_command", required=True)
    for name, help_text in (
        ("rank", "rank materials by closeness to a stiffness/density target"),
        ("pareto", "non-dominated materials (low density, high modulus, high kcal)"),
        ("adhesive", "select the strongest adhesive by conservative strength"),
        ("show", "print the database contents"),
    ):
        p = mat_sub.add_parser(name, help=help_text)
        p.add_argument("--db", type=Path, default=None, help="material DB file (default: seed)")
        p.add_argument("--server", default=None)
        if name == "rank":
            p.add_argument("--target-modulus-mpa", type=float, required=True)
            p.add_argument("--target-density", type=float, required=True, metavar="KG_M3")
        if name in ("adhesive", "show"):
            p.add_argument(
                "--adhesive-db", type=Path, default=None, help="adhesive DB file (default: seed)"
            )
    return parser


def _make_client(server: str | None):
    if server:
        return HttpClient(server)
    return LocalClient()


def _build_request(args, model: type[BaseModel]) -> tuple[BaseModel, Path]:
    values: dict = {}
    if args.config is not None:
        values.update(read_config_file(args.config))
    out_dir = Path(values.pop("out_dir", "."))
    for key in list(values):
        if key in _CLIENT_KEYS:
            values.pop(key)
    for name in model.model_fields:
        override = getattr(args, name, None)
        if override is not None:
            values[name] = override
    if args.out_dir is not None:
        out_dir = args.out_dir
    try:
        request = model(**values)
    except ValidationError as exc:
        raise DesignError(_format_validation_error(exc)) from None
    return request, out_dir


def _format_validation_error(exc: ValidationError) -> str:
    parts = []
    for err in exc.errors():
        location = ".".join(str(p) for p in err["loc"]) or "<request>"
        if err["type"] == "extra_forbidden":
            parts.append(f"unknown config key {location!r}")
        else:
            parts.append(f"{location}: {err['msg']}")
    return "; ".join(parts)


def _write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    print(f"wrote {path}")


def _cmd_design(args, client) -> int:
    request, out_dir = _build_request(args, sc.DesignRequest)
    response = client.design(request)
    if args.format in ("human", "both"):
        _write(out_dir / "design_report.txt", response.reports.human_text)
    if args.format in ("machine", "both"):
        _write(out_dir / "design_report.json", response.reports.machine_json)
    print(response.reports.human_text, end="")
    return 0 if response.verdicts.overall else 1


def _cmd_map(args, client) -> int:
    request, out_dir = _build_request(args, sc.MapRequest)
    response = client.map(request)
    _write(out_dir / "design_map.csv", response.csv)
    _write(out_dir / "design_map.svg", response.svg)
    print(
        f"target wing loading {response.target_wing_loading_n_m2:.4g} N/m^2, "
        f"{len(response.contour)} contour vertices"
    )
    return 0


def _cmd_tile(args, client) -> int:
    request, out_dir = _build_request(args, sc.TileRequest)
    response = client.tile(request)
    _write(out_dir / "wing_tiling.svg", response.svg)
    w = response.wing_mass
    print(
        f"planform {response.span_m * 1e3:.1f} x {response.chord_m * 1e3:.1f} mm: "
        f"{response.full_hex_count} full hexagons, {response.partial_count} partial tiles, "
        f"seam {response.seam_length_m:.3f} m"
    )
    print(
        f"cookie {w.cookie_mass_kg * 1e3:.1f} g + adhesive {w.adhesive_mass_kg * 1e3:.1f} g "
        f"= {w.total_mass_kg * 1e3:.1f} g, {w.total_kcal:.1f} kcal, "
        f"edible fraction {w.edible_fraction_of_drone:.3f}"
    )
    return 0


def _cmd_structure(args, client) -> int:
    request, _ = _build_request(args, sc.StructureRequest)
    response = client.structure(request)
    s = response.structure
    print(f"half span {response.span_m / 2 * 1e3:.1f} mm, samples {s.sample_count}")
    print(
        f"F(0) = {s.root_load_n_m:.4g} N/m, F(b/2) = {s.tip_load_n_m:.4g} N/m, "
        f"f0 = {s.load_intercept_n_m:.4g} N/m"
    )
    print(f"half-span lift integral = {s.half_span_lift_n:.4g} N")
    print("bag plan (root to tip):")
    for station in response.bag_plan:
        print(
            f"  {station.x_start_m * 1e3:7.1f} .. {station.x_end_m * 1e3:7.1f} mm: "
            f"{station.mass_kg * 1e3:8.2f} g"
        )
    if response.deflection is not None:
        d = response.deflection
        print(
            f"tip deflection {d.tip_deflection_m * 1e3:.3f} mm "
            f"at EI = {d.flexural_rigidity_n_m2:.4g} N m^2"
        )
    if response.strength is not None:
        st = response.strength
        verdict = "pass" if st.verdict else "FAIL"
        print(
            f"strength: capacity {st.capacity_half_lift_n:.4g} N vs required "
            f"{st.required_half_lift_n:.4g} N, margin {st.margin:.4g} "
            f"({st.full_span_capacity_in_wg:.4g} W_g full-span): {verdict}"
        )
        return 0 if st.verdict else 1
    return 0


def _materials_from_db(path: Path | None) -> list[sc.MaterialModel] | None:
    if path is None:
        return None
    return [sc.MaterialModel.from_record(m) for m in load_material_db(path)]


def _adhesives_from_db(path: Path | None) -> list[sc.AdhesiveModel] | None:
    if path is None:
        return None
    return [sc.AdhesiveModel.from_record(a) for a in load_adhesive_db(path)]


def _cmd_materials(args, client) -> int:
    command = args.materials_command
    if command == "rank":
        response = client.materials_rank(
            sc.MaterialsRankRequest(
                materials=_materials_from_db(args.db),
                target_modulus_mpa=args.target_modulus_mpa,
                target_density_kg_m3=args.target_density,
            )
        )
        print(
            f"target: E = {response.target_modulus_mpa:g} MPa, "
            f"rho = {response.target_density_kg_m3:g} kg/m^3"
        )
        for i, entry in enumerate(response.ranking, start=1):
            m = entry.material
            print(
                f"{i:3d}. {m.name:<24s} d = {entry.distance:.4f}  "
                f"(E = {m.youngs_modulus_mpa:g} MPa, rho = {m.density_kg_m3:g} kg/m^3, "
                f"{m.kcal_per_kg:g} kcal/kg)"
            )
        return 0
    if command == "pareto":
        response = client.materials_pareto(
            sc.ParetoRequest(materials=_materials_from_db(args.db))
        )
        for m in response.front:
            print(
                f"{m.name:<24s} E = {m.youngs_modulus_mpa:g} MPa, "
                f"rho = {m.density_kg_m3:g} kg/m^3, {m.kcal_per_kg:g} kcal/kg"
            )
        return 0
    if command == "adhesive":
        response = client.materials_adhesive(
            sc.AdhesiveSelectRequest(adhesives=_adhesives_from_db(args.adhesive_db))
        )
        m = response.selected
        print(
            f"selected: {m.name} ({m.kind}, {m.stress_kpa:g} kPa), "
            f"conservative strength {response.conservative_strength_kpa:g} kPa"
        )
        return 0
    if command == "show":
        seed = handlers.handle_seed_db()
        materials = _materials_from_db(args.db) or seed.materials
        adhesives = _adhesives_from_db(args.adhesive_db) or seed.adhesives
        print("materials:")
        for m in materials:
            print(
                f"  {m.name:<24s} E = {m.youngs_modulus_mpa:g} +/- {m.youngs_modulus_sd_mpa:g} MPa, "
                f"rho = {m.density_kg_m3:g} +/- {m.density_sd_kg_m3:g} kg/m^3, "
                f"{m.kcal_per_kg:g} kcal/kg"
            )
        print("adhesives:")
        for a in adhesives:
            print(
                f"  {a.name:<24s} {a.kind:<11s} {a.stress_kpa:g} +/- {a.stress_sd_kpa:g} kPa, "
                f"{a.kcal_per_kg:g} kcal/kg"
            )
        return 0
    raise DesignError(f"unknown materials command {command!r}")


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    client = _make_client(args.server)
    commands = {
        "design": _cmd_design,
        "map": _cmd_map,
        "tile": _cmd_tile,
        "structure": _cmd_structure,
        "materials": _cmd_materials,
    }
    try:
        return commands[args.command](args, client)
    except DesignError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
