from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable, NamedTuple

from fourier_ib.spectral import SpectralField, SpectralVelocity

SCHEMES = ("rk4", "if_rk4")


@dataclass(frozen=True)
class FluidParams:
    """Viscosity, time step, conditioning repetitions and the time scheme.

    `scheme` is "rk4" (explicit diffusion) or "if_rk4" (diffusion integrated
    exactly through an integrating factor, for steps beyond the explicit
    diffusion limit).
    """

    nu: float
    dt: float
    n_r: int = 1
    scheme: str = "rk4"

    def __post_init__(self) -> None:
        if not self.nu > 0.0:
            raise ValueError(f"nu must be positive, got {self.nu}")
        if not self.dt > 0.0:
            raise ValueError(f"dt must be positive, got {self.dt}")
        if not 1 <= int(self.n_r) <= 3:
            raise ValueError(f"n_r must be in 1..3, got {self.n_r}")
        if self.scheme not in SCHEMES:
            raise ValueError(f"scheme must be one of {SCHEMES}, got {self.scheme!r}")


@dataclass(frozen=True)
class SimulationState:
    omega_hat: SpectralField
    time: float = 0.0
    step_index: int = 0

    def advanced(self, omega_hat: SpectralField, dt: float) -> "SimulationState":
        return replace(self, omega_hat=omega_hat, time=self.time + dt, step_index=self.step_index + 1)


class Conditioned(NamedTuple):
    """Output of one boundary-conditioning call: omega^BC and u_Sol^BC (spectral)."""

    omega_bc_hat: SpectralField
    u_hat: SpectralVelocity


Conditioner = Callable[[SpectralField, float], Conditioned]
