from .domain import (
    Disk,
    Ellipse,
    GridDomain,
    GridField,
    Polygon,
    StencilSet,
    boundary_data,
    build_domain,
    export_field_csv,
    field_from_function,
    inside,
)
from .solver import discretize_F, principal_eigenvalue_grid, solve_dirichlet
from .diagnostics import (
    ComparisonReport,
    SmallDomainReport,
    comparison_check,
    critical_plane_position,
    neumann_trace,
    reflect_points,
    reflection_gap,
    small_domain_check,
)

__all__ = [
    "Disk",
    "Ellipse",
    "Polygon",
    "GridDomain",
    "GridField",
    "StencilSet",
    "inside",
    "build_domain",
    "boundary_data",
    "field_from_function",
    "export_field_csv",
    "discretize_F",
    "solve_dirichlet",
    "principal_eigenvalue_grid",
    "neumann_trace",
    "reflect_points",
    "reflection_gap",
    "critical_plane_position",
    "comparison_check",
    "ComparisonReport",
    "small_domain_check",
    "SmallDomainReport",
]
