"""Empirical checks of a deployment: point coverage, coverage fraction, radio connectivity.

Everything here works from node positions alone and never consults the
analytic coverage model, so it can be used to test that model.
"""

from __future__ import annotations

import enum
import math
from collections import defaultdict, deque
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from scipy.spatial import cKDTree

from .deployment import Deployment, Node
from .geometry import REL_TOL, DomainError, Point, SensingField, distance, require_positive, within

# Points are drawn in blocks of this many; the block size does not affect the
# resulting stream.
MC_BLOCK = 1 << 18


class EstimationMode(enum.Enum):
    MONTE_CARLO = "MONTE_CARLO"
    GRID = "GRID"


class Window(enum.Enum):
    FULL_FIELD = "FULL_FIELD"
    INTERIOR = "INTERIOR"


# -- point coverage ----------------------------------------------------------

def point_coverage(z: Point, s: Node) -> int:
    """1 if ``z`` lies in the closed sensing disk of ``s``, else 0."""
    return 1 if within(distance(s.position, z), s.sensing_radius) else 0


def coverage_degree(z: Point, dep: Deployment) -> int:
    """Number of nodes whose sensing disk contains ``z``."""
    return sum(point_coverage(z, s) for s in dep.nodes)


def _as_array(samples) -> np.ndarray:
    if isinstance(samples, np.ndarray):
        return np.asarray(samples, dtype=float).reshape(-1, 2)
    return np.array([(p.x, p.y) for p in samples], dtype=float).reshape(-1, 2)


def coverage_degrees(dep: Deployment, points) -> np.ndarray:
    """Vectorised :func:`coverage_degree` for an ``(M, 2)`` array of points."""
    pts = _as_array(points)
    if len(dep) == 0:
        return np.zeros(len(pts), dtype=int)
    tree = cKDTree(dep.positions)
    return np.asarray(tree.query_ball_point(pts, dep.rs * (1 + REL_TOL), return_length=True), dtype=int)


def covered_mask(dep: Deployment, points: np.ndarray) -> np.ndarray:
    if len(dep) == 0:
        return np.zeros(len(points), dtype=bool)
    tree = cKDTree(dep.positions)
    dist, _ = tree.query(points, k=1, distance_upper_bound=dep.rs * (1 + REL_TOL))
    return np.isfinite(dist)


def network_coverage_degree(dep: Deployment, samples) -> int:
    """Smallest coverage degree over the sample points.

    A sampled stand-in for the minimum over the continuous field.
    """
    pts = _as_array(samples)
    if len(pts) == 0:
        raise DomainError("at least one sample point is required")
    f = dep.field
    inside = (
        (pts[:, 0] >= f.origin.x) & (pts[:, 0] <= f.x_max)
        & (pts[:, 1] >= f.origin.y) & (pts[:, 1] <= f.y_max)
    )
    if not inside.all():
        raise DomainError("sample points must lie inside the field")
    return int(coverage_degrees(dep, pts).min())


# -- coverage fraction -------------------------------------------------------

@dataclass(frozen=True)
class CoverageEstimate:
    fraction: float
    sample_count: int
    half_width_95: float
    mode: EstimationMode
    window: Window

    def to_dict(self) -> dict:
        return {
            "alpha_hat": self.fraction,
            "n": self.sample_count,
            "ci95": self.half_width_95,
            "mode": self.mode.value,
            "window": self.window.value,
        }


def interior_window(dep: Deployment) -> SensingField:
    """Field inset by two lattice spacings on every side."""
    if dep.spacing is None:
        raise DomainError("the interior window needs a lattice spacing")
    return dep.field.shrink(2 * dep.spacing)


def grid_points(window: SensingField, resolution: int) -> np.ndarray:
    """Cell-centre points of a ``resolution x resolution`` grid over the window."""
    return np.concatenate(list(grid_blocks(window, resolution)))


def grid_blocks(window: SensingField, resolution: int, block: int = MC_BLOCK):
    """Same points as :func:`grid_points`, yielded a few rows at a time."""
    if resolution < 2:
        raise DomainError("grid resolution must be at least 2 per axis")
    xs = window.origin.x + (np.arange(resolution) + 0.5) * (window.width / resolution)
    ys = window.origin.y + (np.arange(resolution) + 0.5) * (window.height / resolution)
    rows = max(1, block // resolution)
    for start in range(0, resolution, rows):
        gx, gy = np.meshgrid(xs, ys[start:start + rows])
        yield np.column_stack([gx.ravel(), gy.ravel()])


def monte_carlo_blocks(window: SensingField, n: int, seed: int, block: int = MC_BLOCK):
    """Uniform points over ``window`` from a PCG64 stream seeded with ``seed``.

    Points are yielded in consecutive blocks. The i-th point is always built from
    the (2i)-th and (2i+1)-th doubles of the stream, whatever the block size.
    """
    rng = np.random.Generator(np.random.PCG64(seed))
    scale = np.array([window.width, window.height])
    offset = np.array([window.origin.x, window.origin.y])
    done = 0
    while done < n:
        m = min(block, n - done)
        yield offset + rng.random((m, 2)) * scale
        done += m


def estimate_coverage_fraction(
    dep: Deployment,
    mode: EstimationMode = EstimationMode.MONTE_CARLO,
    window: Window = Window.INTERIOR,
    samples_or_resolution: int = 1_000_000,
    seed: int = 42,
) -> CoverageEstimate:
    mode = EstimationMode(mode)
    window = Window(window)
    region = interior_window(dep) if window is Window.INTERIOR else dep.field

    if mode is EstimationMode.GRID:
        res = int(samples_or_resolution)
        hits = sum(int(covered_mask(dep, pts).sum()) for pts in grid_blocks(region, res))
        n = res * res
        return CoverageEstimate(hits / n, n, 0.0, mode, window)

    n = int(samples_or_resolution)
    if n < 1:
        raise DomainError("at least one Monte Carlo sample is required")
    hits = 0
    for pts in monte_carlo_blocks(region, n, seed):
        hits += int(covered_mask(dep, pts).sum())
    p = hits / n
    return CoverageEstimate(p, n, 1.96 * math.sqrt(p * (1 - p) / n), mode, window)


# -- communication graph -----------------------------------------------------

class UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))
        self.rank = [0] * size

    def find(self, a: int) -> int:
        root = a
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[a] != root:
            self.parent[a], a = root, self.parent[a]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1


def canonical_labels(roots: Sequence[int]) -> list[int]:
    """Relabel components 0, 1, ... in order of their lowest node id."""
    mapping: dict[int, int] = {}
    return [mapping.setdefault(r, len(mapping)) for r in roots]


@dataclass(frozen=True)
class CommGraph:
    rc: float
    node_count: int
    adjacency: tuple[tuple[int, ...], ...]
    component_labels: tuple[int, ...]
    component_count: int

    def edges(self) -> set[tuple[int, int]]:
        return {(i, j) for i, nbrs in enumerate(self.adjacency) for j in nbrs if i < j}

    @property
    def edge_count(self) -> int:
        return sum(len(n) for n in self.adjacency) // 2

    @property
    def connected(self) -> bool:
        return self.component_count == 1


def _neighbour_pairs(pos: np.ndarray, rc: float) -> Iterable[tuple[int, int]]:
    # bucket nodes into square cells of side rc; any pair within rc lies in
    # the same or an adjacent cell
    cells: dict[tuple[int, int], list[int]] = defaultdict(list)
    for i, (x, y) in enumerate(pos):
        cells[(math.floor(x / rc), math.floor(y / rc))].append(i)
    for (cx, cy), members in cells.items():
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                other = cells.get((cx + dx, cy + dy))
                if not other:
                    continue
                for i in members:
                    xi, yi = pos[i]
                    for j in other:
                        if j > i and within(math.hypot(pos[j][0] - xi, pos[j][1] - yi), rc):
                            yield i, j


def build_comm_graph(dep: Deployment, rc: float) -> CommGraph:
    """Unit-disk graph of the deployment: nodes within ``rc`` of each other are linked."""
    rc = require_positive("communication radius", rc)
    pos = dep.positions.tolist()
    n = len(pos)
    adj: list[list[int]] = [[] for _ in range(n)]
    uf = UnionFind(n)
    for i, j in _neighbour_pairs(pos, rc):
        adj[i].append(j)
        adj[j].append(i)
        uf.union(i, j)
    labels = canonical_labels([uf.find(i) for i in range(n)])
    return CommGraph(
        rc, n, tuple(tuple(sorted(a)) for a in adj), tuple(labels), len(set(labels))
    )


def brute_force_comm_graph(dep: Deployment, rc: float) -> CommGraph:
    """All-pairs construction with BFS components; reference for :func:`build_comm_graph`."""
    rc = require_positive("communication radius", rc)
    pos = dep.positions
    n = len(pos)
    diff = pos[:, None, :] - pos[None, :, :]
    dist = np.sqrt((diff ** 2).sum(axis=-1))
    linked = dist <= rc * (1 + REL_TOL)
    np.fill_diagonal(linked, False)
    adj = tuple(tuple(int(j) for j in np.flatnonzero(row)) for row in linked)

    labels = [-1] * n
    count = 0
    for start in range(n):
        if labels[start] >= 0:
            continue
        labels[start] = count
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                if labels[v] < 0:
                    labels[v] = count
                    queue.append(v)
        count += 1
    return CommGraph(rc, n, adj, tuple(labels), count)


def is_connected(dep: Deployment, rc: float) -> bool:
    """True iff every node (base station included) can reach every other one."""
    if len(dep) == 0:
        raise DomainError("cannot test connectivity of an empty deployment")
    return build_comm_graph(dep, rc).connected


def connectivity_report(dep: Deployment, rc: float) -> dict:
    g = build_comm_graph(dep, rc)
    return {"connected": g.connected, "components": g.component_count, "rc": rc}
