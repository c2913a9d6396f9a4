"""Street-map delivery benchmark toolkit.

Generates reproducible delivery instances over a declarative street model,
serves pairwise delivery distances at scale, and ships a baseline
multi-objective solver (total length, vehicle count, route-length spread)
under a per-route length cap.
"""

from .errors import (
    CatalogError,
    GeometryError,
    ModelError,
    PostVRPError,
    SolverError,
    UnreachableError,
)
from .geometry import (
    DeliveryLocation,
    Edge,
    StreetGraph,
    attach_point,
    build_graph,
    location_point,
    segment_intersection,
)
from .instance import (
    CatalogRow,
    Instance,
    fill_catalog,
    fingerprint,
    format_catalog,
    generate_instance,
    load_instance,
    model_fingerprint,
    parse_catalog,
    serialize_instance,
    verify_catalog,
)
from .metric import (
    DistanceOracle,
    MatrixOracle,
    cross_cost,
    dijkstra,
    export_matrix,
    parse_matrix,
)
from .model import (
    AttributeTable,
    Street,
    StreetModel,
    crossing_width,
    density,
    format_model,
    parse_model,
)
from .render import render_svg
from .sampling import (
    DeliverySet,
    EdgeProbabilityTable,
    edge_probabilities,
    sample_deliveries,
)
from .solution import (
    DEPOT,
    ObjectiveVector,
    Solution,
    format_solution,
    is_feasible,
    objectives,
    parse_solution,
    partition,
    route_length,
    solution_from_routes,
)
from .solver import (
    SearchConfig,
    exhaustive_optimum,
    greedy_construct,
    solve,
    swap_descent,
)

__version__ = "0.1.0"

__all__ = [
    "AttributeTable",
    "CatalogError",
    "CatalogRow",
    "DEPOT",
    "DeliveryLocation",
    "DeliverySet",
    "DistanceOracle",
    "Edge",
    "EdgeProbabilityTable",
    "GeometryError",
    "Instance",
    "MatrixOracle",
    "ModelError",
    "ObjectiveVector",
    "PostVRPError",
    "SearchConfig",
    "Solution",
    "SolverError",
    "Street",
    "StreetGraph",
    "StreetModel",
    "UnreachableError",
    "attach_point",
    "build_graph",
    "cross_cost",
    "crossing_width",
    "density",
    "dijkstra",
    "edge_probabilities",
    "exhaustive_optimum",
    "export_matrix",
    "fill_catalog",
    "fingerprint",
    "format_catalog",
    "format_model",
    "format_solution",
    "generate_instance",
    "greedy_construct",
    "is_feasible",
    "load_instance",
    "location_point",
    "model_fingerprint",
    "objectives",
    "parse_catalog",
    "parse_matrix",
    "parse_model",
    "parse_solution",
    "partition",
    "render_svg",
    "route_length",
    "sample_deliveries",
    "segment_intersection",
    "serialize_instance",
    "solution_from_routes",
    "solve",
    "swap_descent",
    "verify_catalog",
]
