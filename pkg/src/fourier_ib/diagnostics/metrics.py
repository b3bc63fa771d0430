from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from fourier_ib.boundary.window import WindowField
from fourier_ib.errors import GridMismatchError
from fourier_ib.geometry.body import ImmersedBody
from fourier_ib.geometry.boundary_points import surface_tolerance
from fourier_ib.spectral import (
    Grid,
    PhysicalField,
    SpectralField,
    SpectralVelocity,
    VelocityPair,
    divergence_spectral,
    forward_transform,
    inverse_transform,
)

# rho above this counts as active interior for the fluid mask.
ACTIVE_RHO = 1.0 - 1e-12

CSV_COLUMNS = (
    "step",
    "time",
    "E",
    "Z",
    "CFL",
    "max_div",
    "mean_vorticity",
    "bc_residual",
    "steady_residual",
)


def fluid_mask(
    grid: Grid,
    bodies: Sequence[ImmersedBody] = (),
    t: float = 0.0,
    window: Optional[WindowField] = None,
) -> np.ndarray:
    """1 on fluid points of the active interior, 0 in bodies and the margin."""
    mask = np.ones(grid.shape)
    if window is not None:
        mask[window.rho.values < ACTIVE_RHO] = 0.0
    if bodies:
        X1, X2 = grid.mesh()
        x = np.stack([X1, X2], axis=-1)
        tol = surface_tolerance(grid)
        for b in bodies:
            mask[b.signed_distance(x, t) <= tol] = 0.0
    return mask


def _mask_or_ones(grid: Grid, mask: Optional[np.ndarray]) -> np.ndarray:
    return np.ones(grid.shape) if mask is None else mask


def energy(u: VelocityPair, mask: Optional[np.ndarray] = None) -> float:
    g = u[0].grid
    m = _mask_or_ones(g, mask)
    return float(0.5 * np.sum(m * (u[0].values ** 2 + u[1].values ** 2)) * g.cell_area)


def enstrophy(omega: PhysicalField, mask: Optional[np.ndarray] = None) -> float:
    g = omega.grid
    m = _mask_or_ones(g, mask)
    return float(0.5 * np.sum(m * omega.values ** 2) * g.cell_area)


def mean_vorticity(omega_hat: SpectralField) -> float:
    return float(omega_hat.mean_mode.real)


def max_divergence(u_hat: SpectralVelocity) -> float:
    return inverse_transform(divergence_spectral(*u_hat)).max_abs()


def steady_residual(previous: SpectralField, current: SpectralField, dt: float) -> float:
    """||omega^{n+1} - omega^n||_inf / dt."""
    return inverse_transform(current - previous).max_abs() / dt


def truncate_to(fine: PhysicalField, coarse: Grid) -> PhysicalField:
    """Spectral truncation of a field onto a nested coarser grid."""
    g = fine.grid
    if (g.l1, g.l2, g.origin1, g.origin2) != (coarse.l1, coarse.l2, coarse.origin1, coarse.origin2):
        raise GridMismatchError(f"grids do not cover the same domain: {g} vs {coarse}")
    if g.n1 % coarse.n1 or g.n2 % coarse.n2:
        raise GridMismatchError(f"incompatible grids (non-nested): {g.n1}x{g.n2} vs {coarse.n1}x{coarse.n2}")
    if g == coarse:
        return fine
    fh = forward_transform(fine).coeffs
    h1, h2 = coarse.n1 // 2, coarse.n2 // 2
    out = np.zeros(coarse.spectral_shape, dtype=complex)
    out[:h2, :h1] = fh[:h2, :h1]
    out[coarse.n2 - h2 + 1 :, :h1] = fh[g.n2 - h2 + 1 :, :h1]
    return inverse_transform(SpectralField(coarse, out))


def error_norm(
    reference: PhysicalField, omega: PhysicalField, mask: Optional[np.ndarray] = None
) -> float:
    """sqrt(sum mask (ref - omega)^2 dA) / ||ref||_inf on omega's grid."""
    ref = truncate_to(reference, omega.grid)
    g = omega.grid
    m = _mask_or_ones(g, mask)
    scale = reference.max_abs()
    if scale == 0.0:
        raise ValueError("reference field is identically zero")
    return float(np.sqrt(np.sum(m * (ref.values - omega.values) ** 2) * g.cell_area) / scale)


def window_shell_spectrum(window: WindowField) -> Tuple[np.ndarray, np.ndarray]:
    """Max |rho_hat| over integer shells of |m|; returns (shell index, max)."""
    rho_hat = forward_transform(window.rho)
    shells = np.rint(window.grid.mode_index_norm).astype(int)
    amp = np.abs(rho_hat.coeffs)
    top = np.zeros(int(shells.max()) + 1)
    np.maximum.at(top, shells.ravel(), amp.ravel())
    return np.arange(top.size), top


def window_spectrum_envelope(window: WindowField) -> Tuple[np.ndarray, np.ndarray]:
    """Shell maxima taken per edge period over the high band [n/4, n/2).

    Single shells dip to zero once per `window.edge_period` modes; a block of
    that many consecutive shells always holds one interference peak, so the
    block maxima trace the decay rate. Shells past n/2 are corner-only rings
    and are left out. Returns (first shell of each block, block max).
    """
    _, top = window_shell_spectrum(window)
    g = window.grid
    n = min(g.n1, g.n2)
    width = int(math.ceil(window.edge_period - 1e-9))
    starts = np.arange(n // 4, n // 2 - width + 1, width)
    if starts.size < 2:
        raise ValueError(f"high band of a {n}-point grid holds fewer than two blocks of {width} shells")
    return starts, np.array([top[s : s + width].max() for s in starts])


def window_spectrum_decays(window: WindowField) -> bool:
    """True when the high-band envelope of |rho_hat| is strictly decreasing."""
    _, env = window_spectrum_envelope(window)
    return bool(np.all(np.diff(env) < 0.0))


@dataclass(frozen=True)
class DiagnosticsRecord:
    step: int
    time: float
    E: float
    Z: float
    CFL: float
    max_div: float
    mean_vorticity: float
    bc_residual: float
    steady_residual: float = float("nan")

    def as_row(self) -> Dict[str, float]:
        return asdict(self)
