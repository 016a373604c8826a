import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.spatial import cKDTree

from wsncover.coverage_model import ALPHA_TANGENT
from wsncover.deployment import Deployment, generate_triangular_lattice, plan_deployment
from wsncover.geometry import DomainError, Point, SensingField

from oracles import lattice_sites_bruteforce

SQRT3 = math.sqrt(3)


def test_tiny_field_holds_only_origin():
    dep = generate_triangular_lattice(SensingField(1, 1), 10, 1)
    assert len(dep) == 1
    assert dep.nodes[0].position == Point(0.0, 0.0)


def test_ten_by_ten_spacing_two():
    dep = generate_triangular_lattice(SensingField(10, 10), 2, 1)
    assert len(dep) == 33
    ys = sorted({n.position.y for n in dep.nodes})
    assert ys == pytest.approx([j * SQRT3 for j in range(6)], abs=1e-12)
    brute = sorted(lattice_sites_bruteforce(10, 10, 2))
    got = sorted((n.position.x, n.position.y) for n in dep.nodes)
    assert np.allclose(got, brute, atol=1e-12)


@settings(max_examples=40, deadline=None)
@given(st.floats(1, 40), st.floats(1, 40), st.floats(0.3, 5))
def test_lattice_matches_bruteforce_enumeration(w, h, d):
    dep = generate_triangular_lattice(SensingField(w, h), d, 1.0)
    brute = sorted(lattice_sites_bruteforce(w, h, d))
    got = sorted((n.position.x, n.position.y) for n in dep.nodes)
    assert len(got) == len(brute)
    assert np.allclose(got, brute, atol=1e-9)


def test_nodes_inside_field_and_row_major():
    f = SensingField(13.3, 7.1, Point(-2.0, 5.0))
    dep = generate_triangular_lattice(f, 1.7, 1.0)
    assert [n.id for n in dep.nodes] == list(range(len(dep)))
    assert all(f.contains(n.position) for n in dep.nodes)
    keys = [(n.position.y, n.position.x) for n in dep.nodes]
    assert keys == sorted(keys)


@pytest.mark.parametrize("d", [1.0, SQRT3, 2.0, 2.69])
def test_interior_nodes_have_six_neighbours_at_spacing(d):
    f = SensingField(30, 30)
    dep = generate_triangular_lattice(f, d, 1.0)
    pos = dep.positions
    tree = cKDTree(pos)
    interior = [
        i for i, (x, y) in enumerate(pos)
        if d < x < f.width - d and d < y < f.height - d
    ]
    assert interior
    for i in interior:
        nbrs = [j for j in tree.query_ball_point(pos[i], d * 1.5) if j != i]
        dists = np.hypot(*(pos[nbrs] - pos[i]).T)
        assert len(nbrs) == 6
        assert np.all(np.abs(dists - d) <= 1e-9)


@pytest.mark.parametrize("d", [0.5, 1.0, 2.3])
def test_node_count_tracks_cell_area(d):
    f = SensingField(20 * d + 0.37, 25 * d)
    n = len(generate_triangular_lattice(f, d, 1.0))
    assert abs(n - f.area / (SQRT3 / 2 * d * d)) / n <= 0.1


def test_generation_is_deterministic():
    f = SensingField(17, 11)
    a = generate_triangular_lattice(f, 1.3, 0.8)
    b = generate_triangular_lattice(f, 1.3, 0.8)
    assert a == b
    assert a.to_json() == b.to_json()


@pytest.mark.parametrize("d, rs", [(0, 1), (1, 0), (-1, 1)])
def test_generation_domain(d, rs):
    with pytest.raises(DomainError):
        generate_triangular_lattice(SensingField(5, 5), d, rs)


def test_base_station_nearest_centroid():
    dep = generate_triangular_lattice(SensingField(10, 10), 2, 1, with_base_station=True)
    c = Point(5, 5)
    best = min(dep.nodes, key=lambda n: (math.hypot(n.position.x - c.x, n.position.y - c.y), n.id))
    assert dep.base_station_id == best.id


def test_base_station_tie_broken_by_lowest_id():
    # 2x0.5 field with d=2: nodes at (0,0) and (2,0), both 1.03 from the centre
    dep = generate_triangular_lattice(SensingField(2, 0.5), 2, 1, with_base_station=True)
    assert len(dep) == 2
    assert dep.base_station_id == 0


def test_json_and_csv_round_trip():
    dep = generate_triangular_lattice(SensingField(6, 4), 1.5, 0.9, with_base_station=True)
    data = json.loads(dep.to_json())
    assert set(data) == {"field", "spacing", "rs", "nodes", "base_station_id"}
    assert data["field"] == {"width": 6, "height": 4}
    assert set(data["nodes"][0]) == {"id", "x", "y"}
    assert Deployment.from_dict(data) == dep
    lines = dep.to_csv().splitlines()
    assert lines[0] == "id,x,y"
    assert len(lines) == len(dep) + 1
    i, x, y = lines[3].split(",")
    assert (float(x), float(y)) == (dep.nodes[2].position.x, dep.nodes[2].position.y)


def test_from_points_rejects_outside_nodes():
    with pytest.raises(DomainError):
        Deployment.from_points(SensingField(1, 1), [(0.5, 0.5), (2.0, 0.0)], 1.0)


def test_plan_examples():
    f = SensingField(20, 20)
    p = plan_deployment(f, 1.0, 1.0)
    assert p.solution.spacing == SQRT3 and p.rc_bound.rc_min == SQRT3

    p = plan_deployment(f, 0.5, 1.0)
    assert p.solution.spacing == pytest.approx(2.69355, abs=1e-5)
    assert p.rc_bound.rc_min == pytest.approx(2.69355, abs=1e-5)
    assert not p.rc_bound.capped_by_diameter

    p = plan_deployment(f, 0.906900, 1.0)
    assert p.solution.spacing == pytest.approx(2.0, abs=1e-6)
    assert p.rc_bound.rc_min == pytest.approx(2.0, abs=1e-6)

    p = plan_deployment(f, ALPHA_TANGENT, 1.0)
    assert p.solution.spacing == 2.0 and p.rc_bound.rc_min == 2.0


def test_plan_invariants():
    p = plan_deployment(SensingField(20, 15), 0.8, 1.2)
    assert p.node_count == len(p.deployment.nodes)
    assert p.predicted_alpha == pytest.approx(0.8, abs=1e-9)
    d = json.loads(p.to_json())
    assert d["node_count"] == p.node_count
    assert d["deployment"]["spacing"] == p.solution.spacing


def test_plan_domain():
    with pytest.raises(DomainError, match=r"alpha must be in \(0,1\]"):
        plan_deployment(SensingField(20, 20), 0.0, 1.0)
