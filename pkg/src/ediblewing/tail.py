"""Tail sizing through vertical and horizontal volume coefficients.

C_VT = L_VT S_VT / (b S) and C_HT = L_HT S_HT / (c S); either the tail areas
or the tail arms can be prescribed and the other side solved.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DesignError

# Conventional band for the coefficient ratio; inclusive on both ends.
HT_OVER_VT_MIN = 5.0
HT_OVER_VT_MAX = 12.0


@dataclass(frozen=True)
class TailSpec:
    """Volume coefficients plus the solved areas (m2) and arms (m)."""

    c_vt: float = 0.05
    c_ht: float = 0.25
    s_vt: float | None = None
    s_ht: float | None = None
    l_vt: float | None = None
    l_ht: float | None = None

    def __post_init__(self):
        if self.c_vt <= 0 or self.c_ht <= 0:
            raise DesignError("tail volume coefficients must be > 0")
        for label, value in (
            ("vertical tail area", self.s_vt),
            ("horizontal tail area", self.s_ht),
            ("vertical tail arm", self.l_vt),
            ("horizontal tail arm", self.l_ht),
        ):
            if value is not None and value <= 0:
                raise DesignError(f"{label} must be > 0")

    @property
    def populated(self) -> bool:
        return None not in (self.s_vt, self.s_ht, self.l_vt, self.l_ht)


@dataclass(frozen=True)
class TailValidation:
    passed: bool
    coefficient_ratio: float
    vt_identity_residual: float
    ht_identity_residual: float
    violations: tuple[str, ...]


def tail_arm_from_area(
    coefficient: float, reference_length: float, wing_area: float, tail_area: float
) -> float:
    """Tail arm (m) for a prescribed tail area: L = C ref S / S_tail."""
    if min(coefficient, reference_length, wing_area, tail_area) <= 0:
        raise DesignError("tail arm solve needs strictly positive inputs")
    return coefficient * reference_length * wing_area / tail_area


def tail_area_from_arm(
    coefficient: float, reference_length: float, wing_area: float, arm: float
) -> float:
    """Tail area (m2) for a prescribed arm: S_tail = C ref S / L."""
    if coefficient < 0:
        raise DesignError("tail volume coefficient must be >= 0")
    if min(reference_length, wing_area, arm) <= 0:
        raise DesignError("tail area solve needs strictly positive inputs")
    return coefficient * reference_length * wing_area / arm


def volume_coefficient(
    arm: float, tail_area: float, reference_length: float, wing_area: float
) -> float:
    """Volume coefficient implied by an arm/area pair."""
    if min(arm, tail_area, reference_length, wing_area) <= 0:
        raise DesignError("volume coefficient needs strictly positive inputs")
    return arm * tail_area / (reference_length * wing_area)


def validate_tail(
    spec: TailSpec, span: float, chord: float, wing_area: float
) -> TailValidation:
    """Check a fully populated tail against the wing it serves.

    Passes when the coefficient identities hold to 1e-9 relative and the
    C_HT / C_VT ratio sits in the conventional [5, 12] band (inclusive).
    """
    if not spec.populated:
        raise DesignError("tail spec must be fully populated before validation")
    violations: list[str] = []

    ratio = spec.c_ht / spec.c_vt
    if not HT_OVER_VT_MIN <= ratio <= HT_OVER_VT_MAX:
        violations.append(
            f"C_HT/C_VT = {ratio:.4g} outside the "
            f"[{HT_OVER_VT_MIN:g}, {HT_OVER_VT_MAX:g}] band"
        )

    vt_implied = volume_coefficient(spec.l_vt, spec.s_vt, span, wing_area)
    ht_implied = volume_coefficient(spec.l_ht, spec.s_ht, chord, wing_area)
    vt_residual = abs(vt_implied - spec.c_vt) / spec.c_vt
    ht_residual = abs(ht_implied - spec.c_ht) / spec.c_ht
    if vt_residual > 1e-9:
        violations.append(
            f"vertical coefficient identity violated: relative residual {vt_residual:.3g}"
        )
    if ht_residual > 1e-9:
        violations.append(
            f"horizontal coefficient identity violated: relative residual {ht_residual:.3g}"
        )

    return TailValidation(
        passed=not violations,
        coefficient_ratio=ratio,
        vt_identity_residual=vt_residual,
        ht_identity_residual=ht_residual,
        violations=tuple(violations),
    )


def solve_tail(
    span: float,
    chord: float,
    wing_area: float,
    c_vt: float = 0.05,
    c_ht: float = 0.25,
    s_vt: float | None = None,
    s_ht: float | None = None,
    l_vt: float | None = None,
    l_ht: float | None = None,
) -> TailSpec:
    """Populate a tail spec from either prescribed areas or prescribed arms.

    For each surface: when the arm is given the area is solved, otherwise the
    area (required in that case) fixes the arm.
    """
    if l_vt is not None:
        s_vt = tail_area_from_arm(c_vt, span, wing_area, l_vt)
    elif s_vt is not None:
        l_vt = tail_arm_from_area(c_vt, span, wing_area, s_vt)
    else:
        raise DesignError("vertical tail needs either an area or an arm")
    if l_ht is not None:
        s_ht = tail_area_from_arm(c_ht, chord, wing_area, l_ht)
    elif s_ht is not None:
        l_ht = tail_arm_from_area(c_ht, chord, wing_area, s_ht)
    else:
        raise DesignError("horizontal tail needs either an area or an arm")
    return TailSpec(c_vt=c_vt, c_ht=c_ht, s_vt=s_vt, s_ht=s_ht, l_vt=l_vt, l_ht=l_ht)
