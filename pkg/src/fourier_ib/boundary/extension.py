from __future__ import annotations

from typing import Optional, Sequence, Tuple

import numpy as np

from fourier_ib.boundary.extrapolation import extrapolate_boundary_values
from fourier_ib.boundary.window import erf_ramp
from fourier_ib.geometry.body import ImmersedBody
from fourier_ib.geometry.boundary_points import NumericalBoundary


def _assign(target: np.ndarray, indices: np.ndarray, values: np.ndarray) -> None:
    if indices.size:
        target[indices[:, 1], indices[:, 0]] = values


def _surface_velocity_at(body: ImmersedBody, grid_x1: np.ndarray, grid_x2: np.ndarray,
                         indices: np.ndarray, t: float) -> np.ndarray:
    x = np.stack([grid_x1[indices[:, 0]], grid_x2[indices[:, 1]]], axis=-1)
    return body.surface_velocity(x, t)


def extend_into_body(
    u1: np.ndarray,
    u2: np.ndarray,
    layers: Sequence[Tuple[ImmersedBody, NumericalBoundary]],
    n_p: int,
    t: float,
    grid_x1: np.ndarray,
    grid_x2: np.ndarray,
    taper_start: Optional[float] = None,
) -> Tuple[np.ndarray, np.ndarray]:
    """Replace the velocity on every body point, leaving fluid points untouched.

    Boundary points get the normal-polynomial value. Shallow interior points
    get the same polynomial evaluated along their own normal, blended into the
    surface velocity between depth `taper_start` and twice that. Deep points
    and every point of an order-0 body carry the surface velocity. Samples are
    always taken from the incoming field; later layers overwrite earlier ones
    where bodies share points.
    """
    out1 = np.array(u1, dtype=float, copy=True)
    out2 = np.array(u2, dtype=float, copy=True)
    for body, layer in layers:
        p = body.effective_order(n_p)
        gamma = layer.boundary
        upb = body.surface_velocity(gamma.feet, t)
        vals = extrapolate_boundary_values(u1, u2, gamma, upb, p)
        _assign(out1, gamma.indices, vals[:, 0])
        _assign(out2, gamma.indices, vals[:, 1])

        inner = layer.interior
        if len(inner):
            upb_in = body.surface_velocity(inner.feet, t)
            if p == 0:
                vals = upb_in
            else:
                poly = extrapolate_boundary_values(u1, u2, inner, upb_in, p)
                start = taper_start if taper_start is not None else float(np.min(inner.delta2))
                blend = 1.0 - erf_ramp(inner.depth, start, start)
                vals = upb_in + blend[:, None] * (poly - upb_in)
            _assign(out1, inner.indices, vals[:, 0])
            _assign(out2, inner.indices, vals[:, 1])

        if layer.deep.size:
            vals = _surface_velocity_at(body, grid_x1, grid_x2, layer.deep, t)
            _assign(out1, layer.deep, vals[:, 0])
            _assign(out2, layer.deep, vals[:, 1])
    return out1, out2
