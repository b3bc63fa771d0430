from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from fourier_ib.scenarios.base import ScenarioSetup
from fourier_ib.spectral import Grid, PhysicalField


@dataclass(frozen=True)
class TaylorGreenParams:
    nu: float = 0.01
    amplitude: float = 2.0


def taylor_green_vorticity(grid: Grid, p: TaylorGreenParams, t: float = 0.0) -> PhysicalField:
    """omega = A exp(-2 nu t) sin x1 sin x2, an exact decaying solution on (2 pi)^2."""
    X1, X2 = grid.mesh()
    return PhysicalField(grid, p.amplitude * math.exp(-2.0 * p.nu * t) * np.sin(X1) * np.sin(X2))


def build_taylor_green(p: TaylorGreenParams, n: int) -> ScenarioSetup:
    grid = Grid.square(n, 2.0 * math.pi)
    return ScenarioSetup(name="taylor_green", grid=grid, nu=p.nu, omega0=taylor_green_vorticity(grid, p))
