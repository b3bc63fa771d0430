from fourier_ib.boundary.conditioner import (
    BoundaryConditioner,
    ConditioningConfig,
    condition,
    edge_circulation,
)
from fourier_ib.boundary.extension import extend_into_body
from fourier_ib.boundary.extrapolation import extrapolate_boundary_values, lagrange_weights
from fourier_ib.boundary.window import WindowField, build_window, build_window_cells, erf_ramp

__all__ = [
    "BoundaryConditioner",
    "ConditioningConfig",
    "WindowField",
    "build_window",
    "build_window_cells",
    "condition",
    "edge_circulation",
    "erf_ramp",
    "extend_into_body",
    "extrapolate_boundary_values",
    "lagrange_weights",
]
