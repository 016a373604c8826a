"""Coverage fraction of a triangular lattice as a function of node spacing.

Three regimes, measured in units of the sensing radius ``rs``:

* ``d <= sqrt(3) rs``: the disks cover the plane, alpha = 1.
* ``sqrt(3) rs < d < 2 rs``: neighbouring disks overlap in lenses and leave a
  curved gap in the middle of every triangle.
* ``d >= 2 rs``: disks are disjoint and alpha falls off as ``1 / d**2``.

With ``beta = d / (2 rs)`` the overlapping regime gives::

    alpha = (pi/2 - 3 acos(beta) + 3 beta sqrt(1 - beta**2)) / (sqrt(3) beta**2)

and the disjoint regime gives ``alpha = 2 pi rs**2 / (sqrt(3) d**2)``. The two
agree at ``beta = 1`` where alpha equals ``ALPHA_TANGENT = pi / (2 sqrt(3))``.
"""

from __future__ import annotations

import csv
import enum
import io
import json
import math
from dataclasses import dataclass
from typing import Sequence

from .geometry import DomainError, require_positive

SQRT3 = math.sqrt(3.0)
# Coverage fraction when adjacent disks just touch (d = 2 rs), ~0.9069.
ALPHA_TANGENT = math.pi / (2.0 * SQRT3)
BETA_FULL = SQRT3 / 2.0

BISECT_TOL = 1e-12
TABLE_HEADER = ("alpha", "beta", "d_over_Rs", "Rc_min_over_Rs")


class CoverageRegime(enum.Enum):
    FULL = "FULL"
    OVERLAP_PARTIAL = "OVERLAP_PARTIAL"
    DISJOINT_PARTIAL = "DISJOINT_PARTIAL"


def check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not (0.0 < alpha <= 1.0):
        raise DomainError("alpha must be in (0,1]")
    return alpha


def alpha_overlap(beta: float) -> float:
    """Overlapping-regime coverage fraction at relative spacing ``beta = d/(2 rs)``.

    Meaningful for ``sqrt(3)/2 <= beta <= 1``; no range check is made so that
    the boundary values can be probed directly.
    """
    b = min(1.0, max(-1.0, beta))
    bracket = math.pi / 2 - 3 * math.acos(b) + 3 * b * math.sqrt(1 - b * b)
    return bracket / (SQRT3 * beta * beta)


def alpha_disjoint(d: float, rs: float) -> float:
    """Disjoint-regime coverage fraction, ``2 pi rs^2 / (sqrt(3) d^2)``."""
    return 2 * math.pi * rs * rs / (SQRT3 * d * d)


def alpha_of_spacing(d: float, rs: float) -> float:
    d = require_positive("spacing", d)
    rs = require_positive("sensing radius", rs)
    if d <= SQRT3 * rs:
        return 1.0
    if d < 2 * rs:
        return alpha_overlap(d / (2 * rs))
    return alpha_disjoint(d, rs)


def classify_regime(d: float, rs: float) -> CoverageRegime:
    d = require_positive("spacing", d)
    rs = require_positive("sensing radius", rs)
    if d <= SQRT3 * rs:
        return CoverageRegime.FULL
    if d < 2 * rs:
        return CoverageRegime.OVERLAP_PARTIAL
    return CoverageRegime.DISJOINT_PARTIAL


def bisect_decreasing(fn, target: float, lo: float, hi: float, tol: float = BISECT_TOL) -> float:
    """Solve ``fn(x) = target`` for a strictly decreasing ``fn`` on ``[lo, hi]``."""
    f_lo, f_hi = fn(lo) - target, fn(hi) - target
    if f_lo < 0 or f_hi > 0:
        raise DomainError(f"target {target!r} is not bracketed by [{lo!r}, {hi!r}]")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if fn(mid) - target > 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class SpacingSolution:
    alpha: float
    beta: float
    spacing: float
    regime: CoverageRegime

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "beta": self.beta,
            "spacing": self.spacing,
            "regime": self.regime.value,
        }


def spacing_for_alpha(alpha: float, rs: float) -> SpacingSolution:
    """Lattice spacing ``d_alpha`` that yields coverage fraction ``alpha``.

    The overlapping regime has no closed-form inverse and is solved by
    bisection on beta over ``[sqrt(3)/2, 1]``.
    """
    alpha = check_alpha(alpha)
    rs = require_positive("sensing radius", rs)
    if alpha == 1.0:
        beta = BETA_FULL
    elif alpha > ALPHA_TANGENT:
        beta = bisect_decreasing(alpha_overlap, alpha, BETA_FULL, 1.0)
    elif alpha == ALPHA_TANGENT:
        beta = 1.0
    else:
        beta = math.sqrt(2 * math.pi / (SQRT3 * alpha)) / 2
    spacing = 2 * rs * beta
    return SpacingSolution(alpha, beta, spacing, classify_regime(spacing, rs))


@dataclass(frozen=True)
class TableRow:
    alpha: float
    beta: float
    d_over_rs: float
    rc_min_over_rs: float

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.alpha, self.beta, self.d_over_rs, self.rc_min_over_rs)


@dataclass(frozen=True)
class LookupTable:
    rows: tuple[TableRow, ...]

    def __len__(self):
        return len(self.rows)

    def lookup(self, alpha: float) -> TableRow:
        """Row for the smallest tabulated alpha that is ``>= alpha``.

        Picking the next denser spacing keeps the requested coverage satisfied.
        """
        for row in self.rows:
            if row.alpha >= alpha:
                return row
        raise KeyError(f"alpha {alpha!r} exceeds the table range")

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(TABLE_HEADER)
        for row in self.rows:
            w.writerow([f"{v:.12g}" for v in row.as_tuple()])
        return buf.getvalue()

    def to_records(self) -> list[dict]:
        return [dict(zip(TABLE_HEADER, row.as_tuple())) for row in self.rows]

    def to_json(self) -> str:
        return json.dumps(self.to_records(), indent=2)

    @classmethod
    def from_csv(cls, text: str) -> LookupTable:
        reader = csv.reader(io.StringIO(text))
        header = tuple(next(reader))
        if header != TABLE_HEADER:
            raise ValueError(f"unexpected lookup-table header {header!r}")
        return cls(tuple(TableRow(*map(float, r)) for r in reader if r))


def build_lookup_table(alphas: Sequence[float], rs: float) -> LookupTable:
    # imported here: connectivity_rules depends on this module
    from .connectivity import min_comm_radius

    rs = require_positive("sensing radius", rs)
    alphas = [check_alpha(a) for a in alphas]
    if any(b <= a for a, b in zip(alphas, alphas[1:])):
        raise DomainError("alphas must be strictly increasing")
    rows = []
    for a in alphas:
        sol = spacing_for_alpha(a, rs)
        bound = min_comm_radius(a, rs)
        rows.append(TableRow(a, sol.beta, sol.spacing / rs, bound.rc_min / rs))
    return LookupTable(tuple(rows))
