from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from fourier_ib.boundary.window import build_window_cells
from fourier_ib.errors import GeometryError
from fourier_ib.geometry import Enclosure, ImmersedBody
from fourier_ib.scenarios.base import ScenarioSetup
from fourier_ib.spectral import Grid, PhysicalField

log = logging.getLogger(__name__)

# Monopoles are negligible (< 1e-10 omega_e) beyond this many radii.
SUPPORT_RADII = 5.0


@dataclass(frozen=True)
class DipoleParams:
    omega_e: float = 299.528385375226
    r0: float = 0.1
    centers: Tuple[Tuple[float, float], Tuple[float, float]] = ((0.0, 0.1), (0.0, -0.1))
    nu: float = 1e-3
    half_width: float = 1.0
    U: float = 1.0
    margin_cells: int = 10
    window_cells: float = 12.0
    walls: bool = True
    wall_n_p: Optional[int] = None

    @property
    def reynolds(self) -> float:
        return self.U * self.half_width / self.nu


def dipole_domain_length(n: int, p: DipoleParams) -> float:
    """Periodic length that puts the walls exactly on grid index margin + window."""
    edge = p.margin_cells + p.window_cells
    if n - 2 * edge <= 0:
        raise GeometryError(f"{n} points cannot hold a margin of {edge} cells per side")
    return 2.0 * p.half_width * n / (n - 2.0 * edge)


def dipole_grid(n: int, p: DipoleParams, length: Optional[float] = None) -> Grid:
    L = dipole_domain_length(n, p) if length is None else length
    return Grid.square(n, L, centered=True)


def monopole(x1: np.ndarray, x2: np.ndarray, center: Tuple[float, float], omega_e: float, r0: float) -> np.ndarray:
    r2 = ((x1 - center[0]) ** 2 + (x2 - center[1]) ** 2) / (r0 * r0)
    return omega_e * (1.0 - r2) * np.exp(-r2)


def dipole_initial_vorticity(p: DipoleParams, grid: Grid) -> PhysicalField:
    """Two monopoles of opposite sign, +omega_e at centers[0], -omega_e at centers[1]."""
    reach = SUPPORT_RADII * p.r0
    for c in p.centers:
        if max(abs(c[0]), abs(c[1])) + reach > p.half_width:
            raise GeometryError(f"monopole at {c} overlaps the wall margin")
    X1, X2 = grid.mesh()
    w = monopole(X1, X2, p.centers[0], p.omega_e, p.r0) - monopole(X1, X2, p.centers[1], p.omega_e, p.r0)
    return PhysicalField(grid, w)


def build_dipole(p: DipoleParams, n: int, length: Optional[float] = None) -> ScenarioSetup:
    grid = dipole_grid(n, p, length)
    omega = dipole_initial_vorticity(p, grid)
    info = {"reynolds": p.reynolds, "half_width": p.half_width, "domain_length": grid.l1}
    if not p.walls:
        return ScenarioSetup(name="dipole_nowall", grid=grid, nu=p.nu, omega0=omega, info=info)

    window = build_window_cells(grid, p.margin_cells, p.window_cells)
    walls = ImmersedBody("walls", Enclosure(p.half_width, p.half_width), n_p=p.wall_n_p)
    log.info(
        "Dipole: l=%.6f dx=%.4e walls at +-%.3f, Re=%.0f",
        grid.l1, grid.dx1, p.half_width, p.reynolds,
    )
    return ScenarioSetup(
        name="dipole",
        grid=grid,
        nu=p.nu,
        omega0=PhysicalField(grid, window.apply(omega.values)),
        bodies=(walls,),
        window=window,
        info=info,
    )
