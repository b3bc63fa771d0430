from .fields import PhysicalField, SpectralField, SpectralVelocity, VelocityPair
from .grid import Grid, check_same_grid
from .operators import (
    curl_spectral,
    dealiased_product,
    derivative,
    divergence_spectral,
    velocity_from_vorticity,
)
from .transforms import (
    PADDED,
    PLAIN,
    TRANSFORMS,
    TransformCounter,
    forward_transform,
    from_padded_physical,
    inverse_transform,
    padded_shape,
    to_padded_physical,
)

__all__ = [
    "Grid",
    "check_same_grid",
    "PhysicalField",
    "SpectralField",
    "SpectralVelocity",
    "VelocityPair",
    "forward_transform",
    "inverse_transform",
    "to_padded_physical",
    "from_padded_physical",
    "padded_shape",
    "TransformCounter",
    "TRANSFORMS",
    "PLAIN",
    "PADDED",
    "velocity_from_vorticity",
    "curl_spectral",
    "divergence_spectral",
    "derivative",
    "dealiased_product",
]
