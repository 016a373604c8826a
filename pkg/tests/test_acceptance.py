"""Exit criteria. Each test records one PASS/FAIL line, shown in the pytest summary.

Run alone with ``pytest tests/test_acceptance.py -v`` or ``python tests/test_acceptance.py``.
"""

import math
import time

import numpy as np
import pytest

from wsncover.connectivity import min_comm_radius, radius_factor
from wsncover.coverage_model import (
    ALPHA_TANGENT,
    BETA_FULL,
    alpha_disjoint,
    alpha_of_spacing,
    alpha_overlap,
    spacing_for_alpha,
)
from wsncover.deployment import Deployment, generate_triangular_lattice, plan_deployment
from wsncover.geometry import SensingField
from wsncover.verification import (
    EstimationMode,
    Window,
    brute_force_comm_graph,
    build_comm_graph,
    estimate_coverage_fraction,
    grid_points,
    interior_window,
    is_connected,
    network_coverage_degree,
)

from acceptance_log import record

SQRT3 = math.sqrt(3)
RADII = (1.0, 0.37, 12.5)


def test_criterion_1_boundary_constants():
    worst = 0.0
    for rs in RADII:
        worst = max(worst, abs(alpha_of_spacing(SQRT3 * rs, rs) - 1.0))
        worst = max(worst, abs(alpha_of_spacing(2 * rs, rs) - math.pi / (2 * SQRT3)))
    ok = worst <= 1e-12 and round(alpha_of_spacing(2.0, 1.0), 6) == 0.906900
    assert record(1, "alpha(sqrt3 Rs)=1, alpha(2 Rs)=pi/(2 sqrt3) within 1e-12", ok, f"max err {worst:.1e}")


def test_criterion_2_regime_continuity():
    at_tangent = abs(alpha_overlap(1.0) - alpha_disjoint(2.0, 1.0))
    at_full = abs(alpha_overlap(BETA_FULL) - 1.0)
    ok = at_tangent <= 1e-12 and at_full <= 1e-12
    assert record(2, "overlap/disjoint and overlap/full continuity within 1e-12", ok,
                  f"{at_tangent:.1e} at 2Rs, {at_full:.1e} at sqrt3 Rs")


def test_criterion_3_inversion_round_trip():
    t0 = time.perf_counter()
    alphas = np.linspace(0.001, 1.0, 1000)[1:]
    assert len(alphas) == 999
    worst = max(abs(alpha_of_spacing(spacing_for_alpha(a, 1.0).spacing, 1.0) - a) for a in alphas)
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-9 and elapsed < 1.0
    assert record(3, "round trip over 999 alphas within 1e-9, < 1 s", ok, f"max err {worst:.1e}, {elapsed:.2f} s")


def test_criterion_4_overlap_band():
    t0 = time.perf_counter()
    alphas = np.linspace(ALPHA_TANGENT, 1.0, 101)[1:-1]
    assert len(alphas) == 99
    ratios = [spacing_for_alpha(a, 1.0).spacing for a in alphas]
    elapsed = time.perf_counter() - t0
    ok = all(SQRT3 < r < 2.0 for r in ratios) and elapsed < 1.0
    assert record(4, "spacing/Rs strictly inside (sqrt3, 2) for 99 alphas", ok,
                  f"range [{min(ratios):.6f}, {max(ratios):.6f}]")


def test_criterion_5_piecewise_rc_min():
    at = abs(min_comm_radius(ALPHA_TANGENT, 1.0).rc_min - 2.0)
    below = np.linspace(0.001, ALPHA_TANGENT, 500, endpoint=False)
    branch = max(
        abs(min_comm_radius(a, rs).rc_min - math.sqrt(2 * math.pi / (SQRT3 * a)) * rs)
        for a in below for rs in RADII
    )
    just_below = min_comm_radius(math.nextafter(ALPHA_TANGENT, 0.0), 1.0).rc_min
    cross = max(abs(just_below - 2.0), abs(radius_factor(ALPHA_TANGENT) - 2.0))
    ok = at <= 1e-9 and branch <= 1e-9 and cross <= 1e-9
    assert record(5, "rc_min = 2 Rs at tangent alpha, f(alpha) Rs below, continuous", ok,
                  f"{at:.1e} / {branch:.1e} / {cross:.1e}")


def test_criterion_6_oracle_agreement():
    t0 = time.perf_counter()
    field_factor = 30  # >= 20 spacings per side
    devs = {}
    for d in (1.8, 1.9, 2.0, 2.5, 3.0, 4.0):
        dep = generate_triangular_lattice(SensingField(field_factor * d, field_factor * d), d, 1.0)
        est = estimate_coverage_fraction(dep, EstimationMode.MONTE_CARLO, Window.INTERIOR, 1_000_000, 42)
        devs[d] = abs(est.fraction - alpha_of_spacing(d, 1.0))
    elapsed = time.perf_counter() - t0
    ok = max(devs.values()) <= 0.005 and elapsed < 30
    detail = ", ".join(f"{d}: {v:.4f}" for d, v in devs.items()) + f"; {elapsed:.1f} s"
    assert record(6, "Monte Carlo vs analytic alpha within 0.005 (10^6 samples, interior)", ok, detail)


def test_criterion_7_constructive_soundness():
    t0 = time.perf_counter()
    field = SensingField(20, 20)
    failures = []
    for alpha in (0.3, 0.5, 0.7, 0.906900, 0.95, 0.99, 1.0):
        plan = plan_deployment(field, alpha, 1.0)
        rc = plan.rc_bound.rc_min
        if not is_connected(plan.deployment, rc):
            failures.append(f"{alpha} disconnected at rc_min")
        if not plan.rc_bound.capped_by_diameter and is_connected(plan.deployment, 0.999 * rc):
            failures.append(f"{alpha} connected at 0.999 rc_min")
    elapsed = time.perf_counter() - t0
    ok = not failures and elapsed < 10
    assert record(7, "connected at rc_min, disconnected at 0.999 rc_min", ok,
                  "; ".join(failures) or f"{elapsed:.2f} s")


def test_criterion_8_graph_oracle_equivalence():
    t0 = time.perf_counter()
    rng = np.random.default_rng(20240101)
    mismatches = 0
    for _ in range(100):
        n = int(rng.integers(1, 201))
        side = float(rng.uniform(2.0, 30.0))
        field = SensingField(side, side)
        dep = Deployment.from_points(field, rng.random((n, 2)) * side, 1.0)
        rc = float(rng.uniform(0.05, 0.5)) * side
        fast, slow = build_comm_graph(dep, rc), brute_force_comm_graph(dep, rc)
        if fast.edges() != slow.edges() or fast.component_count != slow.component_count:
            mismatches += 1
    elapsed = time.perf_counter() - t0
    ok = mismatches == 0 and elapsed < 10
    assert record(8, "bucketed graph == brute force on 100 random deployments", ok,
                  f"{mismatches} mismatches, {elapsed:.2f} s")


def test_criterion_9_full_coverage_degree():
    t0 = time.perf_counter()
    results = {}
    for d in (SQRT3, 3.0):
        dep = generate_triangular_lattice(SensingField(30 * d, 30 * d), d, 1.0)
        results[d] = network_coverage_degree(dep, grid_points(interior_window(dep), 500))
    elapsed = time.perf_counter() - t0
    ok = results[SQRT3] >= 1 and results[3.0] == 0 and elapsed < 10
    assert record(9, "F_N >= 1 at d = sqrt3 Rs, F_N = 0 at d = 3 Rs (500x500 grid)", ok,
                  f"{results[SQRT3]} / {results[3.0]}")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-s"]))
