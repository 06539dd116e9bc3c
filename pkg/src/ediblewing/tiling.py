"""Hexagonal cut layout for the rectangular planform, with mass accounting.

The planform rectangle (span b along x, chord c along y) is covered by a
flat-top regular hexagon lattice anchored at the planform center, and every
lattice cell is clipped to the rectangle. Interior cells stay full hexagons;
boundary cells become trapezoids and other partial polygons. The layout is
deterministic for identical inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

from .errors import DesignError
from .materials import AdhesiveRecord, FoodMaterial

SQRT3 = math.sqrt(3.0)

# Clipped fragments below this fraction of the planform area are geometric
# dust from cells that only touch the boundary; dropping them costs far less
# area than the 1e-9 conservation tolerance.
_AREA_DUST_FRACTION = 1e-12

Polygon = tuple[tuple[float, float], ...]


@dataclass(frozen=True)
class HexTilingSpec:
    """Planform rectangle and the across-corners size of one hexagon cell."""

    planform_span: float
    planform_chord: float
    circumdiameter: float = 0.070
    orientation: str = "flat_top"

    def __post_init__(self):
        if self.planform_span <= 0 or self.planform_chord <= 0:
            raise DesignError("planform dimensions must be > 0")
        if self.circumdiameter <= 0:
            raise DesignError("hexagon circumdiameter must be > 0")
        if self.circumdiameter > 2.0 * min(self.planform_span, self.planform_chord):
            raise DesignError(
                "hexagon circumdiameter must not exceed twice the smaller planform dimension"
            )
        if self.orientation != "flat_top":
            raise DesignError("only the flat_top orientation is supported")

    @property
    def side(self) -> float:
        return self.circumdiameter / 2.0


@dataclass(frozen=True, eq=False)
class TilingLayout:
    """Clipped tile polygons plus the seam and coverage bookkeeping."""

    spec: HexTilingSpec
    tiles: tuple[Polygon, ...]
    full_hex_count: int
    partial_count: int
    seam_length: float
    covered_area: float

    @property
    def tile_count(self) -> int:
        return self.full_hex_count + self.partial_count


@dataclass(frozen=True)
class WingMassBreakdown:
    """Cookie/adhesive mass split with calories and the edible drone fraction."""

    cookie_mass: float
    adhesive_mass: float
    total_mass: float
    total_kcal: float
    edible_fraction_of_drone: float


def polygon_area(poly: Polygon) -> float:
    acc = 0.0
    for (x0, y0), (x1, y1) in zip(poly, poly[1:] + poly[:1]):
        acc += x0 * y1 - x1 * y0
    return abs(acc) / 2.0


def polygon_perimeter(poly: Polygon) -> float:
    return sum(
        math.hypot(x1 - x0, y1 - y0) for (x0, y0), (x1, y1) in zip(poly, poly[1:] + poly[:1])
    )


def _hex_vertices(col: int, row: int, cx0: float, cy0: float, side: float) -> Polygon:
    # Vertices on the integer lattice (units a/2 horizontally, sqrt(3) a/2
    # vertically) so neighboring cells compute shared vertices from the same
    # integers and land on bit-identical floats.
    half = side / 2.0
    row_h = SQRT3 * half
    m0 = 3 * col
    n0 = 2 * row + (col & 1)
    lattice = (
        (m0 + 2, n0),
        (m0 + 1, n0 + 1),
        (m0 - 1, n0 + 1),
        (m0 - 2, n0),
        (m0 - 1, n0 - 1),
        (m0 + 1, n0 - 1),
    )
    return tuple((cx0 + m * half, cy0 + n * row_h) for m, n in lattice)


def _clip_halfplane(poly: list[tuple[float, float]], inside, intersect):
    out: list[tuple[float, float]] = []
    for i, cur in enumerate(poly):
        prev = poly[i - 1]
        cur_in, prev_in = inside(cur), inside(prev)
        if cur_in:
            if not prev_in:
                out.append(intersect(prev, cur))
            out.append(cur)
        elif prev_in:
            out.append(intersect(prev, cur))
    return out


def clip_to_rect(poly: Polygon, xmax: float, ymax: float) -> Polygon:
    """Sutherland-Hodgman clip of a convex polygon to [0, xmax] x [0, ymax]."""
    pts = list(poly)
    planes = (
        (lambda p: p[0] >= 0.0, lambda a, b: _cross_x(a, b, 0.0)),
        (lambda p: p[0] <= xmax, lambda a, b: _cross_x(a, b, xmax)),
        (lambda p: p[1] >= 0.0, lambda a, b: _cross_y(a, b, 0.0)),
        (lambda p: p[1] <= ymax, lambda a, b: _cross_y(a, b, ymax)),
    )
    for inside, intersect in planes:
        pts = _clip_halfplane(pts, inside, intersect)
        if not pts:
            return ()
    # drop consecutive duplicates left behind by clipping
    cleaned: list[tuple[float, float]] = []
    for p in pts:
        if not cleaned or (p[0] - cleaned[-1][0]) ** 2 + (p[1] - cleaned[-1][1]) ** 2 > 1e-24:
            cleaned.append(p)
    if len(cleaned) > 1 and (cleaned[0][0] - cleaned[-1][0]) ** 2 + (
        cleaned[0][1] - cleaned[-1][1]
    ) ** 2 <= 1e-24:
        cleaned.pop()
    return tuple(cleaned)


def _cross_x(a, b, x):
    # canonical endpoint order so both cells sharing an edge compute the
    # same crossing point bit for bit
    if b < a:
        a, b = b, a
    t = (x - a[0]) / (b[0] - a[0])
    return (x, a[1] + t * (b[1] - a[1]))


def _cross_y(a, b, y):
    if b < a:
        a, b = b, a
    t = (y - a[1]) / (b[1] - a[1])
    return (a[0] + t * (b[0] - a[0]), y)


def generate_hex_tiling(spec: HexTilingSpec) -> TilingLayout:
    """Clip a center-anchored flat-top hexagon lattice to the planform.

    Columns advance 1.5 a along the span with odd columns shifted half a row,
    rows advance sqrt(3) a along the chord. Cells are generated one ring
    beyond the rectangle so clipped fragments cover the boundary completely;
    the clipped pieces tile the rectangle exactly, which is what makes the
    seam bookkeeping below exact.
    """
    a = spec.side
    b, c = spec.planform_span, spec.planform_chord
    dx, dy = 1.5 * a, SQRT3 * a
    cx0, cy0 = b / 2.0, c / 2.0
    hex_area = 1.5 * SQRT3 * a * a
    dust = _AREA_DUST_FRACTION * b * c

    i_min = math.floor((-a - cx0) / dx) - 1
    i_max = math.ceil((b + a - cx0) / dx) + 1
    tiles: list[Polygon] = []
    full = partial = 0
    perimeter_sum = 0.0
    area_sum = 0.0
    for i in range(i_min, i_max + 1):
        y_off = cy0 + (dy / 2.0 if i % 2 else 0.0)
        j_min = math.floor((-dy / 2.0 - y_off) / dy) - 1
        j_max = math.ceil((c + dy / 2.0 - y_off) / dy) + 1
        for j in range(j_min, j_max + 1):
            hexagon = _hex_vertices(i, j, cx0, cy0, a)
            if all(0.0 <= x <= b and 0.0 <= y <= c for x, y in hexagon):
                tiles.append(hexagon)
                full += 1
                perimeter_sum += 6.0 * a
                area_sum += polygon_area(hexagon)
                continue
            clipped = clip_to_rect(hexagon, b, c)
            if len(clipped) < 3:
                continue
            area = polygon_area(clipped)
            if area <= dust:
                continue
            tiles.append(clipped)
            partial += 1
            perimeter_sum += polygon_perimeter(clipped)
            area_sum += area

    # Every interior edge is shared by exactly two tiles while the rectangle
    # boundary is traced once, so the seam total falls out of the perimeters.
    seam = max(0.0, (perimeter_sum - 2.0 * (b + c)) / 2.0)
    return TilingLayout(
        spec=spec,
        tiles=tuple(tiles),
        full_hex_count=full,
        partial_count=partial,
        seam_length=seam,
        covered_area=area_sum,
    )


def seam_density_comparison(cell_area: float) -> tuple[float, float]:
    """Asymptotic interior seam length per unit area for hex vs square cells.

    Hexagons of side a (area 3 sqrt(3)/2 a^2) contribute 2/(sqrt(3) a) of
    shared edge per unit area; squares of the same cell area contribute
    2/sqrt(cell_area). The hex/square ratio is the constant ~0.9306.
    """
    if cell_area <= 0:
        raise DesignError("cell area must be > 0")
    side = math.sqrt(cell_area / (1.5 * SQRT3))
    hex_density = 2.0 / (SQRT3 * side)
    square_density = 2.0 / math.sqrt(cell_area)
    return hex_density, square_density


def mass_and_calories(
    layout: TilingLayout,
    material: FoodMaterial,
    adhesive: AdhesiveRecord,
    thickness: float,
    adhesive_ratio: float = 0.25,
    drone_total_mass: float | None = None,
) -> WingMassBreakdown:
    """Mass, calorie, and edible-fraction accounting for the tiled wing.

    Adhesive mass follows the fixed adhesive-to-cookie lay-up ratio rather
    than the seam length; the seam total is a comparison metric only.
    """
    if thickness <= 0:
        raise DesignError("plate thickness must be > 0")
    if adhesive_ratio < 0:
        raise DesignError("adhesive ratio must be >= 0")
    cookie = layout.covered_area * material.density * thickness
    glue = adhesive_ratio * cookie
    total = cookie + glue
    kcal = cookie * material.caloric_density + glue * adhesive.caloric_density
    if drone_total_mass is None:
        fraction = 1.0
    elif drone_total_mass <= 0:
        raise DesignError("drone total mass must be > 0")
    else:
        fraction = total / drone_total_mass
    return WingMassBreakdown(
        cookie_mass=cookie,
        adhesive_mass=glue,
        total_mass=total,
        total_kcal=kcal,
        edible_fraction_of_drone=fraction,
    )


def render_svg(layout: TilingLayout) -> str:
    """Cut layout as an SVG 1.1 document in millimeter user units.

    One closed path per tile, coordinates rounded to 3 decimals; identical
    layouts render byte-identical documents.
    """
    w = layout.spec.planform_span * 1000.0
    h = layout.spec.planform_chord * 1000.0
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{w:.3f}mm" height="{h:.3f}mm" viewBox="0 0 {w:.3f} {h:.3f}">',
    ]
    for tile in layout.tiles:
        path = " L ".join(f"{x * 1000.0:.3f},{y * 1000.0:.3f}" for x, y in tile)
        lines.append(f'  <path d="M {path} Z" fill="none" stroke="black" stroke-width="0.2"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def export_svg(layout: TilingLayout, path: str | Path) -> Path:
    """Write the cut layout SVG; returns the output path."""
    path = Path(path)
    try:
        path.write_text(render_svg(layout), encoding="utf-8")
    except OSError as exc:
        raise DesignError(f"cannot write SVG to {path}: {exc}") from exc
    return path
