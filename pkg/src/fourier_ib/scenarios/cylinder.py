from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from fourier_ib.boundary.window import build_window_cells
from fourier_ib.geometry import Circle, HarmonicOscillation, ImmersedBody
from fourier_ib.scenarios.base import ScenarioSetup
from fourier_ib.spectral import Grid, PhysicalField

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class CylinderParams:
    D: float = 0.35
    f: float = 1.0
    A: float = 0.27852
    nu: float = 6.1249747e-3
    length: float = 2.0 * math.pi
    margin_cells: int = 8
    window_cells: float = 8.0
    phase_start: float = -0.5 * math.pi

    @property
    def U(self) -> float:
        return 2.0 * math.pi * self.f * self.A

    @property
    def KC(self) -> float:
        return self.U / (self.f * self.D)

    @property
    def Re(self) -> float:
        return self.U * self.D / self.nu

    @property
    def time_shift(self) -> float:
        """Offset between simulation time and the zero-phase clock."""
        return -self.phase_start / (2.0 * math.pi * self.f)

    def motion(self) -> HarmonicOscillation:
        return HarmonicOscillation(self.A, self.f, self.phase_start, axis=0)


def cylinder_state(p: CylinderParams, t: float) -> Tuple[np.ndarray, np.ndarray]:
    m = p.motion()
    return m.displacement(t), m.velocity(t)


def build_cylinder(p: CylinderParams, n: int) -> ScenarioSetup:
    grid = Grid.square(n, p.length, centered=True)
    window = build_window_cells(grid, p.margin_cells, p.window_cells)
    body = ImmersedBody("cylinder", Circle(0.5 * p.D), p.motion())
    log.info(
        "Cylinder: D=%.3f U=%.5f KC=%.4f Re=%.2f (|KC-5|=%.2e, |Re-100|=%.2e)",
        p.D, p.U, p.KC, p.Re, abs(p.KC - 5.0), abs(p.Re - 100.0),
    )
    return ScenarioSetup(
        name="cylinder",
        grid=grid,
        nu=p.nu,
        omega0=PhysicalField.zeros(grid),
        bodies=(body,),
        window=window,
        info={"U": p.U, "KC": p.KC, "Re": p.Re, "time_shift": p.time_shift},
    )
