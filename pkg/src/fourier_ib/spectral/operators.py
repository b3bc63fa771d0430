from __future__ import annotations

from fourier_ib.spectral.fields import SpectralField, SpectralVelocity
from fourier_ib.spectral.grid import check_same_grid
from fourier_ib.spectral.transforms import from_padded_physical, to_padded_physical


def derivative(fh: SpectralField, axis: int, order: int = 1) -> SpectralField:
    """Spectral derivative along x1 (axis=1) or x2 (axis=2)."""
    g = fh.grid
    if axis not in (1, 2):
        raise ValueError(f"axis must be 1 or 2, got {axis}")
    if order % 2:
        k = g.k1_odd if axis == 1 else g.k2_odd
    else:
        k = g.k1 if axis == 1 else g.k2
    return SpectralField(g, (1j * k) ** order * fh.coeffs)


def velocity_from_vorticity(omega_hat: SpectralField) -> SpectralVelocity:
    """Zero-mean solenoidal velocity (d2 psi, -d1 psi) with psi = |k|^-2 omega."""
    g = omega_hat.grid
    psi = SpectralField(g, omega_hat.coeffs * g.ksq_inv)
    return derivative(psi, axis=2), -derivative(psi, axis=1)


def curl_spectral(u1_hat: SpectralField, u2_hat: SpectralField) -> SpectralField:
    check_same_grid(u1_hat.grid, u2_hat.grid)
    return derivative(u2_hat, axis=1) - derivative(u1_hat, axis=2)


def divergence_spectral(u1_hat: SpectralField, u2_hat: SpectralField) -> SpectralField:
    check_same_grid(u1_hat.grid, u2_hat.grid)
    return derivative(u1_hat, axis=1) + derivative(u2_hat, axis=2)


def dealiased_product(f_hat: SpectralField, g_hat: SpectralField) -> SpectralField:
    """Spectrum of the pointwise product f*g via 3/2-rule zero padding."""
    grid = check_same_grid(f_hat.grid, g_hat.grid)
    a = to_padded_physical(f_hat)
    b = to_padded_physical(g_hat)
    return from_padded_physical(a * b, grid)
