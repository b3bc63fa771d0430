from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

import numpy as np
from scipy.special import erf, erfcinv

from fourier_ib.errors import GeometryError
from fourier_ib.geometry.shapes import Bounds
from fourier_ib.spectral import Grid, PhysicalField

# Per-edge factor reaches EDGE_TOL of its end values at the ends of the rise band.
EDGE_TOL = 1e-15


def erf_ramp(s: np.ndarray, start: float, width: float, tol: float = EDGE_TOL) -> np.ndarray:
    """Smooth 0 -> 1 ramp: <= tol for s <= start, >= 1 - tol for s >= start + width."""
    z0 = float(erfcinv(2.0 * tol))
    z = z0 * (2.0 * (np.asarray(s, dtype=float) - start) / width - 1.0)
    return 0.5 * (1.0 + erf(z))


@dataclass(frozen=True)
class WindowField:
    """rho(x): 0 in the margin strip along every domain edge, 1 in the interior."""

    grid: Grid
    rho: PhysicalField
    margin: float
    rise: float

    @property
    def active_box(self) -> Bounds:
        """Region where rho = 1 to within the edge tolerance."""
        g = self.grid
        d = self.margin + self.rise
        return (g.origin1 + d, g.origin2 + d, g.origin1 + g.l1 - d, g.origin2 + g.l2 - d)

    @property
    def edge_period(self) -> float:
        """Spacing, in mode-index units, of the zeros of rho_hat along either axis.

        The rise bands on opposite sides of a periodic edge sit 2(margin + rise/2)
        apart, so their contributions cancel every l / (2 margin + rise) modes.
        """
        g = self.grid
        width = 2.0 * self.margin + self.rise
        return max(g.l1, g.l2) / width

    def apply(self, values: np.ndarray) -> np.ndarray:
        return self.rho.values * values


def _edge_distances(x: np.ndarray, origin: float, length: float) -> Tuple[np.ndarray, np.ndarray]:
    return x - origin, origin + length - x


def build_window(grid: Grid, margin: float, rise: float) -> WindowField:
    """Tensor-product erf window with a zero strip of width `margin` at each edge.

    Along each edge the factor is zero up to distance `margin` and rises to one
    over the next `rise`; factors of the four edges multiply at corners.
    """
    if not margin > 0.0:
        raise GeometryError(f"window margin must be positive, got {margin}")
    if rise < 2.0 * max(grid.dx1, grid.dx2) * (1.0 - 1e-12):
        raise GeometryError(f"window rise {rise:.4g} is below two grid cells")
    if 2.0 * (margin + rise) >= min(grid.l1, grid.l2):
        raise GeometryError("window margin and rise leave no active interior")

    left, right = _edge_distances(grid.x1, grid.origin1, grid.l1)
    bottom, top = _edge_distances(grid.x2, grid.origin2, grid.l2)
    f1 = erf_ramp(left, margin, rise) * erf_ramp(right, margin, rise)
    f2 = erf_ramp(bottom, margin, rise) * erf_ramp(top, margin, rise)
    rho = f2[:, None] * f1[None, :]
    return WindowField(grid=grid, rho=PhysicalField(grid, rho), margin=margin, rise=rise)


def build_window_cells(grid: Grid, margin_cells: float, rise_cells: float) -> WindowField:
    """build_window with margin and rise given in cells of the coarser direction."""
    dx = max(grid.dx1, grid.dx2)
    return build_window(grid, margin_cells * dx, rise_cells * dx)
