from __future__ import annotations

import logging
from dataclasses import dataclass

from fourier_ib.boundary.window import build_window_cells
from fourier_ib.errors import GeometryError
from fourier_ib.geometry import ImmersedBody, RoundedRectangle, Union
from fourier_ib.scenarios.base import ScenarioSetup
from fourier_ib.spectral import Grid, PhysicalField

log = logging.getLogger(__name__)

MIN_CHANNEL_CELLS = 2


@dataclass(frozen=True)
class CavityParams:
    """Lid-driven cavity whose lid is a moving strip with a return channel above it.

    Lengths in cells are counted on the cavity grid dx = L / cavity_cells. The
    channel runs over the lid and down both sides, so fluid dragged by the
    strip returns around the walls.
    """

    U: float = 1.0
    L: float = 1.0
    nu: float = 0.01
    cavity_cells: int = 185
    wall_cells: int = 4
    lid_cells: int = 4
    channel_cells: int = 6
    margin_cells: int = 8
    window_cells: float = 6.0
    n_r: int = 3

    @property
    def reynolds(self) -> float:
        return self.U * self.L / self.nu


def _layout(p: CavityParams, n: int) -> tuple[int, int]:
    if p.channel_cells < MIN_CHANNEL_CELLS:
        raise GeometryError(f"side channel must be at least {MIN_CHANNEL_CELLS} cells wide, got {p.channel_cells}")
    band = int(round(p.margin_cells + p.window_cells))
    free_x = n - 2 * band - 2 * p.wall_cells - p.cavity_cells
    free_y = n - 2 * band - p.wall_cells - p.cavity_cells - p.lid_cells - p.channel_cells
    left = free_x // 2
    if left < p.channel_cells or free_x - left < p.channel_cells or free_y < p.channel_cells:
        raise GeometryError(
            f"cavity of {p.cavity_cells} cells with its walls and channel does not fit a {n}^2 grid"
        )
    return band + left + p.wall_cells, band + free_y + p.wall_cells


def build_cavity(p: CavityParams, n: int) -> ScenarioSetup:
    """U-shaped no-slip walls, a lid strip moving at (U, 0), and the window."""
    dx = p.L / p.cavity_cells
    off1, off2 = _layout(p, n)
    grid = Grid(n, n, n * dx, n * dx, origin1=-off1 * dx, origin2=-off2 * dx)
    window = build_window_cells(grid, p.margin_cells, p.window_cells)

    w = p.wall_cells * dx
    L = p.L
    walls = Union(
        (
            RoundedRectangle.from_extent(-w, -w, 0.0, L),
            RoundedRectangle.from_extent(L, -w, L + w, L),
            RoundedRectangle.from_extent(-w, -w, L + w, 0.0),
        )
    )
    lid = RoundedRectangle.from_extent(-w, L, L + w, L + p.lid_cells * dx)
    bodies = (
        ImmersedBody("lid", lid, prescribed_velocity=(p.U, 0.0), n_p=0),
        ImmersedBody("walls", walls, n_p=0),
    )
    log.info(
        "Cavity: Re=%.0f dx=%.4e grid %dx%d, channel %d cells",
        p.reynolds, dx, n, n, p.channel_cells,
    )
    return ScenarioSetup(
        name="cavity",
        grid=grid,
        nu=p.nu,
        omega0=PhysicalField.zeros(grid),
        bodies=bodies,
        window=window,
        n_r=p.n_r,
        info={"reynolds": p.reynolds, "dx": dx, "cavity_cells": p.cavity_cells},
    )
