from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from fourier_ib.boundary.extension import extend_into_body
from fourier_ib.boundary.window import WindowField
from fourier_ib.dynamics.state import Conditioned
from fourier_ib.errors import ConfigError
from fourier_ib.geometry.body import ImmersedBody
from fourier_ib.geometry.boundary_points import (
    NumericalBoundary,
    bilinear_stencil,
    identify_numerical_boundary,
)
from fourier_ib.spectral import (
    Grid,
    PhysicalField,
    SpectralField,
    curl_spectral,
    forward_transform,
    inverse_transform,
    velocity_from_vorticity,
)

log = logging.getLogger(__name__)

# Circulation of rho*u^D around the domain edge above this is logged as a warning.
CIRCULATION_WARN = 1e-10


@dataclass(frozen=True)
class ConditioningConfig:
    n_p: int = 2
    n_r: int = 1
    bodies: Sequence[ImmersedBody] = ()
    window: Optional[WindowField] = None
    probe_spacing: Optional[float] = None

    def __post_init__(self) -> None:
        if self.n_p not in (0, 1, 2):
            raise ConfigError(f"n_p must be 0, 1 or 2, got {self.n_p}")
        if not 1 <= self.n_r <= 3:
            raise ConfigError(f"n_r must be in 1..3, got {self.n_r}")
        names = [b.name for b in self.bodies]
        if len(set(names)) != len(names):
            raise ConfigError(f"body names must be unique, got {names}")


def edge_circulation(u1: np.ndarray, u2: np.ndarray, grid: Grid) -> float:
    """Counter-clockwise line sum of u along the outermost grid rows and columns."""
    return float(
        np.sum(u1[0, :]) * grid.dx1
        + np.sum(u2[:, -1]) * grid.dx2
        - np.sum(u1[-1, :]) * grid.dx1
        - np.sum(u2[:, 0]) * grid.dx2
    )


@dataclass
class BoundaryConditioner:
    """Imposes body and window velocity conditions on a vorticity spectrum.

    Each call runs n_r passes of: velocity from vorticity, inverse transform,
    extrapolation/extension into the bodies, windowing, forward transform and
    curl. Numerical boundaries of static bodies are found once and reused;
    moving bodies are re-classified at every requested time.
    """

    grid: Grid
    config: ConditioningConfig
    _static: Dict[str, NumericalBoundary] = field(default_factory=dict, repr=False)
    _last: Optional[Tuple[float, List[Tuple[ImmersedBody, NumericalBoundary]]]] = field(default=None, repr=False)
    last_circulation: float = 0.0

    def __post_init__(self) -> None:
        for body in self.config.bodies:
            if body.is_static:
                self._static[body.name] = self._identify(body, 0.0)

    def _identify(self, body: ImmersedBody, t: float) -> NumericalBoundary:
        w = self.config.window
        others = [b for b in self.config.bodies if b.name != body.name]
        return identify_numerical_boundary(
            body,
            self.grid,
            t,
            n_p=body.effective_order(self.config.n_p),
            active_box=w.active_box if w is not None else None,
            obstacles=others,
            probe_spacing=self.config.probe_spacing,
        )

    def boundaries(self, t: float) -> List[Tuple[ImmersedBody, NumericalBoundary]]:
        if self._last is not None and self._last[0] == t:
            return self._last[1]
        out = []
        for body in self.config.bodies:
            nb = self._static.get(body.name)
            out.append((body, nb if nb is not None else self._identify(body, t)))
        self._last = (t, out)
        return out

    def physical_pass(self, u1: np.ndarray, u2: np.ndarray, t: float) -> Tuple[np.ndarray, np.ndarray]:
        """Body extension followed by windowing, on physical velocity samples."""
        g = self.grid
        layers = self.boundaries(t)
        if layers:
            u1, u2 = extend_into_body(u1, u2, layers, self.config.n_p, t, g.x1, g.x2)
        w = self.config.window
        if w is not None:
            u1, u2 = w.apply(u1), w.apply(u2)
        return u1, u2

    def __call__(self, omega_hat: SpectralField, t: float) -> Conditioned:
        g = self.grid
        w = omega_hat
        for sweep in range(self.config.n_r):
            u1_hat, u2_hat = velocity_from_vorticity(w)
            u1 = inverse_transform(u1_hat).values
            u2 = inverse_transform(u2_hat).values
            v1, v2 = self.physical_pass(u1, u2, t)
            self.last_circulation = edge_circulation(v1, v2, g)
            if abs(self.last_circulation) > CIRCULATION_WARN:
                log.warning(
                    "t=%.6g pass %d: edge circulation %.3e; window margin may be too thin",
                    t, sweep + 1, self.last_circulation,
                )
            w = curl_spectral(
                forward_transform(PhysicalField(g, v1)),
                forward_transform(PhysicalField(g, v2)),
            )
        return Conditioned(w, velocity_from_vorticity(w))

    def boundary_residual(self, u1: np.ndarray, u2: np.ndarray, t: float) -> float:
        """max |u - u_pb| at the surface feet of every body's boundary points.

        u1, u2 are physical samples of the conditioned solenoidal velocity.
        """
        if not self.config.bodies:
            return 0.0
        worst = 0.0
        for body, nb in self.boundaries(t):
            feet = nb.boundary.feet
            if not len(feet):
                continue
            st = bilinear_stencil(feet, self.grid)
            got = np.stack([st.apply(u1), st.apply(u2)], axis=-1)
            want = body.surface_velocity(feet, t)
            worst = max(worst, float(np.max(np.hypot(*(got - want).T))))
        return worst


def condition(omega_hat: SpectralField, config: ConditioningConfig, t: float) -> Conditioned:
    """One-shot conditioning; builds numerical boundaries on every call."""
    return BoundaryConditioner(omega_hat.grid, config)(omega_hat, t)
