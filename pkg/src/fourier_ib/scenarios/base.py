from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Sequence

import numpy as np

from fourier_ib.boundary.window import WindowField
from fourier_ib.diagnostics.metrics import fluid_mask
from fourier_ib.geometry.body import ImmersedBody
from fourier_ib.spectral import Grid, PhysicalField, SpectralField, forward_transform


@dataclass(frozen=True)
class ScenarioSetup:
    """Everything a run needs from a scenario builder."""

    name: str
    grid: Grid
    nu: float
    omega0: PhysicalField
    bodies: Sequence[ImmersedBody] = ()
    window: Optional[WindowField] = None
    n_p: Optional[int] = None
    n_r: Optional[int] = None
    dt: Optional[float] = None
    info: Dict[str, Any] = field(default_factory=dict)

    @property
    def periodic(self) -> bool:
        return not self.bodies and self.window is None

    def initial_spectrum(self) -> SpectralField:
        return forward_transform(self.omega0).without_mean()

    def mask(self, t: float = 0.0) -> np.ndarray:
        return fluid_mask(self.grid, self.bodies, t, self.window)
