"""Coverage/connectivity planning for triangular-lattice sensor deployments."""

from .connectivity import (
    CommRadiusBound,
    cfc_condition,
    coverage_implies_connectivity,
    min_comm_radius,
    radius_factor,
)
from .coverage_model import (
    ALPHA_TANGENT,
    CoverageRegime,
    LookupTable,
    SpacingSolution,
    alpha_of_spacing,
    build_lookup_table,
    classify_regime,
    spacing_for_alpha,
)
from .deployment import CoveragePlan, Deployment, Node, generate_triangular_lattice, plan_deployment
from .geometry import DomainError, Point, SensingField, distance, field_diameter, lens_area
from .verification import (
    CommGraph,
    CoverageEstimate,
    EstimationMode,
    Window,
    build_comm_graph,
    coverage_degree,
    estimate_coverage_fraction,
    is_connected,
    network_coverage_degree,
    point_coverage,
)

__version__ = "0.1.0"
