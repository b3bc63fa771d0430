from __future__ import annotations

import numpy as np

from fourier_ib.geometry.boundary_points import ProbeSet


def lagrange_weights(nodes: np.ndarray, at: float = 0.0) -> np.ndarray:
    """Weights of the Lagrange interpolant through `nodes` (m, k) evaluated at `at`."""
    nodes = np.atleast_2d(np.asarray(nodes, dtype=float))
    k = nodes.shape[1]
    w = np.ones_like(nodes)
    for a in range(k):
        for b in range(k):
            if a != b:
                w[:, a] *= (at - nodes[:, b]) / (nodes[:, a] - nodes[:, b])
    return w


def extrapolate_boundary_values(
    u1: np.ndarray,
    u2: np.ndarray,
    probes: ProbeSet,
    u_pb: np.ndarray,
    n_p: int,
) -> np.ndarray:
    """Velocity at probe-set points from the polynomial along each normal.

    The polynomial of degree min(n_p, order) passes through u_pb at the
    surface foot (distance delta1 from the point) and the sampled fluid
    velocity at the probes, and is evaluated at the point itself.
    Returns (m, 2).
    """
    m = len(probes)
    out = np.array(u_pb, dtype=float, copy=True).reshape(m, 2)
    if m == 0 or n_p == 0:
        return out

    s1 = probes.delta1
    s2 = s1 + probes.delta2
    s3 = s2 + probes.delta3
    samples_I = np.stack([probes.stencil_I.apply(u1), probes.stencil_I.apply(u2)], axis=-1)
    samples_II = np.stack([probes.stencil_II.apply(u1), probes.stencil_II.apply(u2)], axis=-1)

    eff = np.minimum(probes.order, n_p)
    first = eff == 1
    if first.any():
        w = lagrange_weights(np.stack([s1[first], s2[first]], axis=-1))
        out[first] = w[:, :1] * out[first] + w[:, 1:2] * samples_I[first]
    second = eff == 2
    if second.any():
        w = lagrange_weights(np.stack([s1[second], s2[second], s3[second]], axis=-1))
        out[second] = (
            w[:, :1] * out[second] + w[:, 1:2] * samples_I[second] + w[:, 2:3] * samples_II[second]
        )
    return out
