from __future__ import annotations

import logging

import numpy as np

from fourier_ib.spectral import (
    Grid,
    SpectralField,
    SpectralVelocity,
    check_same_grid,
    from_padded_physical,
    to_padded_physical,
)

log = logging.getLogger(__name__)

# Bound on nu*|k|^2_max*dt for explicit RK4 diffusion.
RK4_DIFFUSION_LIMIT = 2.8


def nonlinear_term(u_sol_hat: SpectralVelocity) -> SpectralField:
    """-k1 k2 F[u1^2 - u2^2] + (k1^2 - k2^2) F[u1 u2], the advection of vorticity.

    Both quadratic terms are formed on the 3/2-padded grid; the two velocity
    components are padded once and shared between the products.
    """
    g = check_same_grid(u_sol_hat[0].grid, u_sol_hat[1].grid)
    a = to_padded_physical(u_sol_hat[0])
    b = to_padded_physical(u_sol_hat[1])
    n1_hat = from_padded_physical(a * a - b * b, g).coeffs
    n2_hat = from_padded_physical(a * b, g).coeffs
    out = -g.k1_odd * g.k2_odd * n1_hat + (g.k1 ** 2 - g.k2 ** 2) * n2_hat
    out[0, 0] = 0.0
    return SpectralField(g, out)


def rhs(omega_bc_hat: SpectralField, u_sol_hat: SpectralVelocity, nu: float) -> SpectralField:
    """d_t omega = -nu|k|^2 omega^BC - k1 k2 F[u1^2 - u2^2] + (k1^2 - k2^2) F[u1 u2]."""
    g = check_same_grid(omega_bc_hat.grid, u_sol_hat[0].grid, u_sol_hat[1].grid)
    out = nonlinear_term(u_sol_hat).coeffs - nu * g.ksq * omega_bc_hat.coeffs
    out[0, 0] = 0.0
    return SpectralField(g, out)


def check_diffusion_stability(grid: Grid, nu: float, dt: float) -> bool:
    """Warn when explicit diffusion of the highest mode leaves the RK4 stability region."""
    value = float(nu * np.max(grid.ksq) * dt)
    if value >= RK4_DIFFUSION_LIMIT:
        log.warning(
            "Explicit diffusion outside RK4 stability: nu*|k|^2_max*dt=%.3f (limit %.3f)",
            value,
            RK4_DIFFUSION_LIMIT,
        )
        return False
    return True
