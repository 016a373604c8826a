"""Minimum communication radius at which alpha-coverage implies connectivity.

On a triangular lattice the network is connected exactly when the radio
reaches the nearest neighbour, so ``rc_min`` is the spacing that delivers the
requested coverage fraction:

* ``alpha > ALPHA_TANGENT``: the overlapping-regime spacing, strictly between
  ``sqrt(3) rs`` and ``2 rs`` (``sqrt(3) rs`` at alpha = 1);
* ``alpha == ALPHA_TANGENT``: ``2 rs``;
* ``alpha < ALPHA_TANGENT``: ``radius_factor(alpha) * rs``.

A radius longer than the field diameter buys nothing, so when a field is given
the result is capped there.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .coverage_model import (
    ALPHA_TANGENT,
    SQRT3,
    CoverageRegime,
    check_alpha,
    classify_regime,
    spacing_for_alpha,
)
from .geometry import SensingField, field_diameter, require_positive


def radius_factor(alpha: float) -> float:
    """``sqrt(2 pi / (sqrt(3) alpha))``: rc_min / rs in the disjoint regime."""
    alpha = check_alpha(alpha)
    return math.sqrt(2 * math.pi / (SQRT3 * alpha))


@dataclass(frozen=True)
class CommRadiusBound:
    alpha: float
    rc_min: float
    capped_by_diameter: bool
    regime: CoverageRegime

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "rc_min": self.rc_min,
            "capped_by_diameter": self.capped_by_diameter,
            "regime": self.regime.value,
        }


def min_comm_radius(alpha: float, rs: float, field: SensingField | None = None) -> CommRadiusBound:
    alpha = check_alpha(alpha)
    rs = require_positive("sensing radius", rs)
    if alpha > ALPHA_TANGENT:
        rc = spacing_for_alpha(alpha, rs).spacing
    elif alpha == ALPHA_TANGENT:
        rc = 2 * rs
    else:
        rc = radius_factor(alpha) * rs
    regime = classify_regime(rc, rs)

    capped = False
    if field is not None:
        diameter = field_diameter(field)
        if rc > diameter:
            rc, capped = diameter, True
    return CommRadiusBound(alpha, rc, capped, regime)


def cfc_condition(rc: float, rs: float) -> bool:
    """Full coverage of an arbitrary deployment implies connectivity iff ``rc >= 2 rs``."""
    rc = require_positive("communication radius", rc)
    rs = require_positive("sensing radius", rs)
    return rc >= 2 * rs


def coverage_implies_connectivity(
    alpha: float, rc: float, rs: float, field: SensingField | None = None
) -> bool:
    rc = require_positive("communication radius", rc)
    return rc >= min_comm_radius(alpha, rs, field).rc_min
