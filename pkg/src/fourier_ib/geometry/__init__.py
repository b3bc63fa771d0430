from fourier_ib.geometry.body import (
    HarmonicOscillation,
    ImmersedBody,
    Motion,
    Stationary,
    normal,
    signed_distance,
)
from fourier_ib.geometry.boundary_points import (
    BilinearStencil,
    NumericalBoundary,
    ProbeSet,
    bilinear_stencil,
    build_stencils,
    identify_numerical_boundary,
    surface_tolerance,
)
from fourier_ib.geometry.shapes import Circle, Enclosure, RoundedRectangle, Shape, Union

__all__ = [
    "BilinearStencil",
    "Circle",
    "Enclosure",
    "HarmonicOscillation",
    "ImmersedBody",
    "Motion",
    "NumericalBoundary",
    "ProbeSet",
    "RoundedRectangle",
    "Shape",
    "Stationary",
    "Union",
    "bilinear_stencil",
    "build_stencils",
    "identify_numerical_boundary",
    "normal",
    "signed_distance",
    "surface_tolerance",
]
