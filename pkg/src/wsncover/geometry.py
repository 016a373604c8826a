"""Planar primitives: points, rectangular fields, disk intersections."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations


class DomainError(ValueError):
    """Raised when an argument lies outside the domain of an operation."""


# Relative slack used by every closed "<= radius" test. Lattice coordinates are
# built by repeated float arithmetic, so neighbours that are exactly `d` apart
# in exact arithmetic come out a few ulps either side of it.
REL_TOL = 1e-9


def within(dist: float, radius: float) -> bool:
    """Closed-disk membership ``dist <= radius`` with float slack."""
    return dist <= radius * (1.0 + REL_TOL)


def require_positive(name: str, value: float) -> float:
    value = float(value)
    if not (value > 0.0 and math.isfinite(value)):
        raise DomainError(f"{name} must be a positive finite number, got {value!r}")
    return value


@dataclass(frozen=True, slots=True)
class Point:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise DomainError(f"point coordinates must be finite, got ({self.x}, {self.y})")


@dataclass(frozen=True, slots=True)
class SensingField:
    """Axis-aligned rectangle; ``origin`` is the lower-left corner."""

    width: float
    height: float
    origin: Point = field(default_factory=lambda: Point(0.0, 0.0))

    def __post_init__(self):
        require_positive("field width", self.width)
        require_positive("field height", self.height)

    @property
    def x_max(self) -> float:
        return self.origin.x + self.width

    @property
    def y_max(self) -> float:
        return self.origin.y + self.height

    @property
    def area(self) -> float:
        return self.width * self.height

    @property
    def centroid(self) -> Point:
        return Point(self.origin.x + self.width / 2, self.origin.y + self.height / 2)

    def corners(self) -> list[Point]:
        x0, y0 = self.origin.x, self.origin.y
        return [Point(x0, y0), Point(self.x_max, y0), Point(self.x_max, self.y_max), Point(x0, self.y_max)]

    def contains(self, p: Point) -> bool:
        return self.origin.x <= p.x <= self.x_max and self.origin.y <= p.y <= self.y_max

    def shrink(self, margin: float) -> SensingField:
        """Field inset by ``margin`` on every side; DomainError if nothing is left."""
        w = self.width - 2 * margin
        h = self.height - 2 * margin
        if w <= 0 or h <= 0:
            need = 2 * margin
            raise DomainError(
                f"interior window is empty: a margin of {margin:g} per side needs a field "
                f"larger than {need:g} x {need:g}, got {self.width:g} x {self.height:g}"
            )
        return SensingField(w, h, Point(self.origin.x + margin, self.origin.y + margin))


def distance(a: Point, b: Point) -> float:
    return math.hypot(a.x - b.x, a.y - b.y)


def lens_area(d: float, rs: float) -> float:
    """Intersection area of two disks of radius ``rs`` whose centres are ``d`` apart.

    Exactly zero once the disks are tangent or separate (``d >= 2 rs``).
    """
    rs = require_positive("sensing radius", rs)
    d = float(d)
    if d < 0 or not math.isfinite(d):
        raise DomainError(f"centre distance must be a finite non-negative number, got {d!r}")
    if d >= 2 * rs:
        return 0.0
    half = min(1.0, max(-1.0, d / (2 * rs)))
    return rs * rs * (2 * math.acos(half) - (d / rs) * math.sqrt(1 - half * half))


def field_diameter(f: SensingField) -> float:
    """Largest distance between two points of the field (its diagonal)."""
    return math.hypot(f.width, f.height)


def corner_diameter(f: SensingField) -> float:
    # brute-force twin of field_diameter, used as a cross-check
    return max(distance(a, b) for a, b in combinations(f.corners(), 2))
