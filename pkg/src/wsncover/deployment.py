"""Triangular-lattice deployments over a rectangular field, and coverage plans."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .connectivity import CommRadiusBound, min_comm_radius
from .coverage_model import SpacingSolution, alpha_of_spacing, spacing_for_alpha
from .geometry import DomainError, Point, SensingField, distance, require_positive

ROW_FACTOR = math.sqrt(3.0) / 2.0
# Fraction of a spacing by which a lattice site may overshoot the field edge
# and still be kept (then clamped onto the edge).
EDGE_SLACK = 1e-9


@dataclass(frozen=True)
class Node:
    id: int
    position: Point
    sensing_radius: float


@dataclass(frozen=True)
class Deployment:
    field: SensingField
    spacing: float | None
    nodes: tuple[Node, ...]
    base_station_id: int | None = None

    def __post_init__(self):
        if self.base_station_id is not None and not (0 <= self.base_station_id < len(self.nodes)):
            raise DomainError(f"base station id {self.base_station_id} is not a node id")

    def __len__(self):
        return len(self.nodes)

    @property
    def rs(self) -> float:
        return self.nodes[0].sensing_radius if self.nodes else float("nan")

    @cached_property
    def positions(self) -> np.ndarray:
        """``(N, 2)`` array of node coordinates, in id order."""
        arr = np.array([(n.position.x, n.position.y) for n in self.nodes], dtype=float)
        return arr.reshape(-1, 2)

    def to_dict(self) -> dict:
        fld = {"width": self.field.width, "height": self.field.height}
        if self.field.origin != Point(0.0, 0.0):
            fld["origin"] = [self.field.origin.x, self.field.origin.y]
        return {
            "field": fld,
            "spacing": self.spacing,
            "rs": self.rs,
            "nodes": [{"id": n.id, "x": n.position.x, "y": n.position.y} for n in self.nodes],
            "base_station_id": self.base_station_id,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["id", "x", "y"])
        for n in self.nodes:
            w.writerow([n.id, repr(n.position.x), repr(n.position.y)])
        return buf.getvalue()

    @classmethod
    def from_dict(cls, data: dict) -> Deployment:
        fld = data["field"]
        origin = Point(*fld.get("origin", (0.0, 0.0)))
        field = SensingField(float(fld["width"]), float(fld["height"]), origin)
        rs = require_positive("rs", data["rs"])
        nodes = tuple(
            Node(int(n["id"]), Point(float(n["x"]), float(n["y"])), rs)
            for n in sorted(data["nodes"], key=lambda n: n["id"])
        )
        if [n.id for n in nodes] != list(range(len(nodes))):
            raise ValueError("node ids must be 0..N-1")
        spacing = data.get("spacing")
        return cls(field, None if spacing is None else float(spacing), nodes, data.get("base_station_id"))

    @classmethod
    def from_points(cls, field: SensingField, points, rs: float) -> Deployment:
        """Deployment at arbitrary positions (no generating lattice)."""
        rs = require_positive("sensing radius", rs)
        nodes = []
        for i, (x, y) in enumerate(points):
            p = Point(float(x), float(y))
            if not field.contains(p):
                raise DomainError(f"node {i} at ({p.x}, {p.y}) lies outside the field")
            nodes.append(Node(i, p, rs))
        return cls(field, None, tuple(nodes))


def _lattice_sites(field: SensingField, d: float):
    h = ROW_FACTOR * d
    n_rows = int(math.floor(field.height / h + EDGE_SLACK)) + 1
    for j in range(n_rows):
        y = min(field.origin.y + j * h, field.y_max)
        offset = d / 2 if j % 2 else 0.0
        if offset > field.width * (1 + EDGE_SLACK):
            continue
        n_cols = int(math.floor((field.width - offset) / d + EDGE_SLACK)) + 1
        for i in range(n_cols):
            yield min(field.origin.x + offset + i * d, field.x_max), y


def nearest_to_centroid(field: SensingField, nodes) -> int | None:
    c = field.centroid
    best = None
    for n in nodes:
        key = (distance(n.position, c), n.id)
        if best is None or key < best:
            best = key
    return None if best is None else best[1]


def generate_triangular_lattice(
    field: SensingField, d: float, rs: float, with_base_station: bool = False
) -> Deployment:
    """Place nodes on an equilateral-triangle lattice of side ``d``.

    The first node sits on the field origin, rows are ``sqrt(3)/2 * d`` apart
    and odd rows are shifted by ``d/2``. Only sites inside the closed field
    rectangle are kept; ids run in row-major order.
    """
    d = require_positive("spacing", d)
    rs = require_positive("sensing radius", rs)
    nodes = tuple(
        Node(i, Point(x, y), rs) for i, (x, y) in enumerate(_lattice_sites(field, d))
    )
    bs = nearest_to_centroid(field, nodes) if with_base_station else None
    return Deployment(field, d, nodes, bs)


@dataclass(frozen=True)
class CoveragePlan:
    requested_alpha: float
    solution: SpacingSolution
    rc_bound: CommRadiusBound
    deployment: Deployment

    @property
    def node_count(self) -> int:
        return len(self.deployment.nodes)

    @property
    def predicted_alpha(self) -> float:
        return alpha_of_spacing(self.solution.spacing, self.deployment.rs)

    def to_dict(self) -> dict:
        return {
            "requested_alpha": self.requested_alpha,
            "rs": self.deployment.rs,
            "spacing": self.solution.spacing,
            "beta": self.solution.beta,
            "regime": self.solution.regime.value,
            "rc_min": self.rc_bound.rc_min,
            "capped_by_diameter": self.rc_bound.capped_by_diameter,
            "predicted_alpha": self.predicted_alpha,
            "node_count": self.node_count,
            "deployment": self.deployment.to_dict(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def plan_deployment(
    field: SensingField, alpha: float, rs: float, with_base_station: bool = False
) -> CoveragePlan:
    solution = spacing_for_alpha(alpha, rs)
    bound = min_comm_radius(alpha, rs, field)
    dep = generate_triangular_lattice(field, solution.spacing, rs, with_base_station)
    return CoveragePlan(solution.alpha, solution, bound, dep)
