"""Edible structural materials and adhesives: databases, ranking, and selection.

Material records live in plain-text files so that new candidate foods can be
added without touching code. Both databases use comma-separated rows with a
mandatory header line; ``#`` starts a comment and blank lines are ignored.

Material DB header::

    name,E_MPa,E_sd_MPa,rho_kg_m3,rho_sd,kcal_per_kg,provenance

Adhesive DB header::

    name,kind,stress_kPa,stress_sd_kPa,kcal_per_kg,provenance

where ``kind`` is ``mean`` for a measured mean/sd pair and ``lower_bound``
for a substrate-limited test (the joint outlived the base material, so only
a lower bound on the adhesive stress is known and the sd column must be 0).

Stored records are converted to base SI units (Pa, kg/m3); kcal is kept as
the one domain unit.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from enum import Enum
from importlib import resources
from pathlib import Path

from .errors import DesignError, MaterialDBError

MATERIAL_HEADER = "name,E_MPa,E_sd_MPa,rho_kg_m3,rho_sd,kcal_per_kg,provenance"
ADHESIVE_HEADER = "name,kind,stress_kPa,stress_sd_kPa,kcal_per_kg,provenance"


class StrengthKind(str, Enum):
    MEASURED_MEAN = "measured_mean"
    LOWER_BOUND = "lower_bound"


@dataclass(frozen=True)
class FoodMaterial:
    """An edible structural material candidate.

    Units: Pa for moduli, kg/m3 for densities, kcal/kg for caloric density.
    Standard deviations are 0 when unknown.
    """

    name: str
    youngs_modulus: float
    youngs_modulus_sd: float
    density: float
    density_sd: float
    caloric_density: float
    provenance: str = ""

    def __post_init__(self):
        if self.youngs_modulus <= 0:
            raise DesignError(f"material '{self.name}': Young's modulus must be > 0")
        if self.density <= 0:
            raise DesignError(f"material '{self.name}': density must be > 0")
        if self.caloric_density < 0:
            raise DesignError(f"material '{self.name}': caloric density must be >= 0")
        if self.youngs_modulus_sd < 0 or self.density_sd < 0:
            raise DesignError(f"material '{self.name}': standard deviations must be >= 0")


@dataclass(frozen=True)
class AdhesiveRecord:
    """An edible adhesive candidate; stress in Pa, calories in kcal/kg."""

    name: str
    strength_kind: StrengthKind
    adhesive_stress: float
    adhesive_stress_sd: float
    caloric_density: float
    provenance: str = ""

    def __post_init__(self):
        if self.adhesive_stress <= 0:
            raise DesignError(f"adhesive '{self.name}': stress must be > 0")
        if self.adhesive_stress_sd < 0:
            raise DesignError(f"adhesive '{self.name}': stress sd must be >= 0")
        if self.caloric_density < 0:
            raise DesignError(f"adhesive '{self.name}': caloric density must be >= 0")
        if self.strength_kind is StrengthKind.LOWER_BOUND and self.adhesive_stress_sd != 0:
            raise DesignError(
                f"adhesive '{self.name}': lower-bound records must have sd = 0"
            )


@dataclass(frozen=True)
class MaterialTarget:
    """Target stiffness/density point the wing material should approximate."""

    target_modulus: float  # Pa
    target_density: float  # kg/m3

    def __post_init__(self):
        if self.target_modulus <= 0 or self.target_density <= 0:
            raise DesignError("material target modulus and density must be > 0")


def _data_lines(path: Path) -> list[tuple[int, str]]:
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise MaterialDBError(f"database file not found: {path}") from None
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        out.append((lineno, line))
    return out


def _parse_row(path: Path, lineno: int, line: str, n_fields: int) -> list[str]:
    fields = next(csv.reader([line]))
    if len(fields) != n_fields:
        raise MaterialDBError(
            f"{path}:{lineno}: expected {n_fields} comma-separated fields, got {len(fields)}"
        )
    return [f.strip() for f in fields]


def _parse_float(path: Path, lineno: int, name: str, raw: str) -> float:
    try:
        return float(raw)
    except ValueError:
        raise MaterialDBError(f"{path}:{lineno}: field '{name}' is not a number: {raw!r}") from None


def load_material_db(path: str | Path) -> list[FoodMaterial]:
    """Read a material database file; returns one record per data row.

    MPa columns are converted to Pa. Raises :class:`MaterialDBError` with the
    offending line number on any malformed or invariant-violating row.
    """
    path = Path(path)
    lines = _data_lines(path)
    if not lines:
        raise MaterialDBError(f"{path}: missing header line {MATERIAL_HEADER!r}")
    header_lineno, header = lines[0]
    if header != MATERIAL_HEADER:
        raise MaterialDBError(f"{path}:{header_lineno}: header must be {MATERIAL_HEADER!r}")
    records = []
    for lineno, line in lines[1:]:
        name, e_mpa, e_sd, rho, rho_sd, kcal, prov = _parse_row(path, lineno, line, 7)
        try:
            records.append(
                FoodMaterial(
                    name=name,
                    youngs_modulus=_parse_float(path, lineno, "E_MPa", e_mpa) * 1e6,
                    youngs_modulus_sd=_parse_float(path, lineno, "E_sd_MPa", e_sd) * 1e6,
                    density=_parse_float(path, lineno, "rho_kg_m3", rho),
                    density_sd=_parse_float(path, lineno, "rho_sd", rho_sd),
                    caloric_density=_parse_float(path, lineno, "kcal_per_kg", kcal),
                    provenance=prov,
                )
            )
        except DesignError as exc:
            if isinstance(exc, MaterialDBError):
                raise
            raise MaterialDBError(f"{path}:{lineno}: {exc}") from None
    return records


_KIND_ALIASES = {"mean": StrengthKind.MEASURED_MEAN, "lower_bound": StrengthKind.LOWER_BOUND}


def load_adhesive_db(path: str | Path) -> list[AdhesiveRecord]:
    """Read an adhesive database file; kPa columns are converted to Pa."""
    path = Path(path)
    lines = _data_lines(path)
    if not lines:
        raise MaterialDBError(f"{path}: missing header line {ADHESIVE_HEADER!r}")
    header_lineno, header = lines[0]
    if header != ADHESIVE_HEADER:
        raise MaterialDBError(f"{path}:{header_lineno}: header must be {ADHESIVE_HEADER!r}")
    records = []
    for lineno, line in lines[1:]:
        name, kind, stress, stress_sd, kcal, prov = _parse_row(path, lineno, line, 6)
        if kind not in _KIND_ALIASES:
            raise MaterialDBError(
                f"{path}:{lineno}: kind must be one of {sorted(_KIND_ALIASES)}, got {kind!r}"
            )
        try:
            records.append(
                AdhesiveRecord(
                    name=name,
                    strength_kind=_KIND_ALIASES[kind],
                    adhesive_stress=_parse_float(path, lineno, "stress_kPa", stress) * 1e3,
                    adhesive_stress_sd=_parse_float(path, lineno, "stress_sd_kPa", stress_sd) * 1e3,
                    caloric_density=_parse_float(path, lineno, "kcal_per_kg", kcal),
                    provenance=prov,
                )
            )
        except DesignError as exc:
            if isinstance(exc, MaterialDBError):
                raise
            raise MaterialDBError(f"{path}:{lineno}: {exc}") from None
    return records


def _seed_path(filename: str) -> Path:
    return Path(str(resources.files("ediblewing").joinpath("data", filename)))


def seed_material_db() -> list[FoodMaterial]:
    """The built-in material database (measured records only)."""
    return load_material_db(_seed_path("food_materials.txt"))


def seed_adhesive_db() -> list[AdhesiveRecord]:
    """The built-in adhesive database."""
    return load_adhesive_db(_seed_path("edible_adhesives.txt"))


def ashby_distance(material: FoodMaterial, target: MaterialTarget) -> float:
    """Log-space distance between a material and the target (E, rho) point.

    Both axes are log10, matching the log-log property chart this selection is
    read from; the metric is therefore invariant under a uniform unit rescale.
    """
    return math.hypot(
        math.log10(material.youngs_modulus) - math.log10(target.target_modulus),
        math.log10(material.density) - math.log10(target.target_density),
    )


def rank_by_ashby_distance(
    db: list[FoodMaterial], target: MaterialTarget
) -> list[tuple[FoodMaterial, float]]:
    """Rank materials by closeness to the target point, nearest first.

    Ties break by name ascending so the ordering is deterministic.
    """
    if not db:
        raise DesignError("cannot rank an empty material database")
    return sorted(((m, ashby_distance(m, target)) for m in db), key=lambda t: (t[1], t[0].name))


def _dominates(a: FoodMaterial, b: FoodMaterial) -> bool:
    # a dominates b iff a is no worse on every objective and better on one:
    # lower density, higher modulus, higher caloric density.
    no_worse = (
        a.density <= b.density
        and a.youngs_modulus >= b.youngs_modulus
        and a.caloric_density >= b.caloric_density
    )
    strict = (
        a.density < b.density
        or a.youngs_modulus > b.youngs_modulus
        or a.caloric_density > b.caloric_density
    )
    return no_worse and strict


def pareto_front(db: list[FoodMaterial]) -> list[FoodMaterial]:
    """Non-dominated materials for (min density, max modulus, max kcal/kg).

    Identical duplicates are all kept (no strict dominance between them).
    Output is ordered by name.
    """
    if not db:
        raise DesignError("cannot compute the Pareto front of an empty database")
    front = [m for m in db if not any(_dominates(other, m) for other in db)]
    return sorted(front, key=lambda m: m.name)


def conservative_strength(record: AdhesiveRecord) -> float:
    """Design-allowable adhesive stress in Pa.

    Lower-bound records are taken at face value; measured records are derated
    by one standard deviation.
    """
    if record.strength_kind is StrengthKind.LOWER_BOUND:
        return record.adhesive_stress
    return record.adhesive_stress - record.adhesive_stress_sd


def select_adhesive(candidates: list[AdhesiveRecord]) -> tuple[AdhesiveRecord, float]:
    """Pick the adhesive with the highest conservative strength.

    Ties break by name ascending. Returns the record and its conservative
    strength in Pa.
    """
    if not candidates:
        raise DesignError("cannot select an adhesive from an empty candidate list")
    best = sorted(candidates, key=lambda r: (-conservative_strength(r), r.name))[0]
    return best, conservative_strength(best)
