from __future__ import annotations

import logging
from typing import Callable, Optional, Tuple, TypeVar

import numpy as np

from fourier_ib.dynamics.rhs import nonlinear_term, rhs
from fourier_ib.dynamics.state import Conditioned, Conditioner, FluidParams, SimulationState
from fourier_ib.errors import NumericalInstabilityError
from fourier_ib.spectral import PhysicalField, SpectralField, velocity_from_vorticity

log = logging.getLogger(__name__)

Y = TypeVar("Y")
Stage = Callable[[Y, float], Tuple[Y, Y]]


def rk4_advance(y: Y, t: float, dt: float, stage: Stage, first: Optional[Tuple[Y, Y]] = None) -> Y:
    """Classical four-stage Runge-Kutta step.

    `stage(y, t)` returns the conditioned value of y and its slope. The value
    returned by the first stage is the base of the update, so a conditioning
    stage is applied at the start of every sub-step.
    """
    base, k1 = first if first is not None else stage(y, t)
    _, k2 = stage(base + (0.5 * dt) * k1, t + 0.5 * dt)
    _, k3 = stage(base + (0.5 * dt) * k2, t + 0.5 * dt)
    _, k4 = stage(base + dt * k3, t + dt)
    return base + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def periodic_conditioner(omega_hat: SpectralField, t: float) -> Conditioned:
    """Conditioning switched off: the plain periodic pseudo-spectral solve."""
    return Conditioned(omega_hat.without_mean(), velocity_from_vorticity(omega_hat))


def _if_rk4_advance(
    state: SimulationState,
    params: FluidParams,
    conditioner: Conditioner,
    first: Optional[Conditioned],
) -> SpectralField:
    # RK4 on exp(nu|k|^2 t) omega: diffusion exact, advection from conditioned stages
    g = state.omega_hat.grid
    t, h = state.time, params.dt
    half = np.exp(-params.nu * g.ksq * 0.5 * h)
    full = half * half

    def slope(w: np.ndarray, tau: float) -> np.ndarray:
        return nonlinear_term(conditioner(SpectralField(g, w), tau).u_hat).coeffs

    c0 = first if first is not None else conditioner(state.omega_hat, t)
    w0 = c0.omega_bc_hat.coeffs
    n1 = nonlinear_term(c0.u_hat).coeffs
    n2 = slope(half * (w0 + 0.5 * h * n1), t + 0.5 * h)
    n3 = slope(half * w0 + 0.5 * h * n2, t + 0.5 * h)
    n4 = slope(full * w0 + h * half * n3, t + h)
    out = full * w0 + (h / 6.0) * (full * n1 + 2.0 * half * (n2 + n3) + n4)
    out[0, 0] = 0.0
    return SpectralField(g, out)


def rk4_step(
    state: SimulationState,
    params: FluidParams,
    conditioner: Conditioner = periodic_conditioner,
    first: Optional[Conditioned] = None,
) -> SimulationState:
    """Advance omega_hat by params.dt, conditioning once per RK4 stage.

    `first` may carry the conditioner output for `state` when the caller has
    already computed it (for diagnostics), saving one conditioning pass.
    """

    def stage(omega_hat: SpectralField, t: float) -> Tuple[SpectralField, SpectralField]:
        cond = conditioner(omega_hat, t)
        return cond.omega_bc_hat, rhs(cond.omega_bc_hat, cond.u_hat, params.nu)

    if params.scheme == "if_rk4":
        new_hat = _if_rk4_advance(state, params, conditioner, first)
    else:
        head = None
        if first is not None:
            head = (first.omega_bc_hat, rhs(first.omega_bc_hat, first.u_hat, params.nu))
        new_hat = rk4_advance(state.omega_hat, state.time, params.dt, stage, first=head)
    if not new_hat.is_finite():
        log.error("Non-finite vorticity after step %d (t=%.6g)", state.step_index + 1, state.time)
        raise NumericalInstabilityError(
            f"vorticity became non-finite at step {state.step_index + 1}",
            step=state.step_index + 1,
            time=state.time + params.dt,
        )
    return state.advanced(new_hat, params.dt)


def cfl_number(u: Tuple[PhysicalField, PhysicalField], dt: float, dx: float) -> float:
    """max |u| * dt / dx with |u| the pointwise speed."""
    speed = np.sqrt(u[0].values ** 2 + u[1].values ** 2)
    return float(np.max(speed) * dt / dx)
