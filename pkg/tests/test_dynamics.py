import logging
import math

import numpy as np
import pytest

from conftest import random_spectrum
from fourier_ib.boundary import BoundaryConditioner, ConditioningConfig
from fourier_ib.convergence import fitted_slope
from fourier_ib.diagnostics import energy, enstrophy
from fourier_ib.dynamics import (
    FluidParams,
    SimulationState,
    check_diffusion_stability,
    nonlinear_term,
    periodic_conditioner,
    rhs,
    rk4_advance,
    rk4_step,
)
from fourier_ib.errors import NumericalInstabilityError
from fourier_ib.pipeline import integrate
from fourier_ib.scenarios import TaylorGreenParams, taylor_green_vorticity
from fourier_ib.spectral import (
    PADDED,
    PLAIN,
    TRANSFORMS,
    Grid,
    SpectralField,
    dealiased_product,
    derivative,
    forward_transform,
    inverse_transform,
    velocity_from_vorticity,
)


def test_rk4_scalar_decay():
    y = rk4_advance(1.0, 0.0, 0.1, lambda y, t: (y, -y))
    assert y == pytest.approx(0.9048375, abs=1e-7)


def test_rk4_passes_stage_times():
    seen = []

    def stage(y, t):
        seen.append(t)
        return y, 1.0

    rk4_advance(0.0, 2.0, 0.5, stage)
    assert seen == [2.0, 2.25, 2.25, 2.5]


@pytest.mark.parametrize("kwargs", [dict(nu=0.0, dt=1e-3), dict(nu=1e-3, dt=0.0), dict(nu=1e-3, dt=1e-3, n_r=4),
                                    dict(nu=1e-3, dt=1e-3, scheme="euler")])
def test_fluid_params_validation(kwargs):
    with pytest.raises(ValueError):
        FluidParams(**kwargs)


@pytest.mark.parametrize("scheme", ["rk4", "if_rk4"])
def test_taylor_green_matches_exact_decay(scheme):
    p = TaylorGreenParams(nu=0.01)
    g = Grid.square(64, 2.0 * math.pi)
    state = SimulationState(forward_transform(taylor_green_vorticity(g, p)))
    params = FluidParams(nu=p.nu, dt=1e-3, scheme=scheme)
    state = integrate(state, params, periodic_conditioner, 1000)
    exact = taylor_green_vorticity(g, p, t=state.time).values
    got = inverse_transform(state.omega_hat).values
    assert state.time == pytest.approx(1.0)
    assert np.max(np.abs(got - exact)) / np.max(np.abs(exact)) < 1e-8


def test_rhs_has_zero_mean(rng, grid_2pi):
    for _ in range(20):
        fh = random_spectrum(grid_2pi, rng)
        r = rhs(fh, velocity_from_vorticity(fh), 0.01)
        assert abs(r.mean_mode) <= 1e-15 * r.max_abs()


def test_schemes_agree_for_small_steps(rng, grid_2pi):
    fh = random_spectrum(grid_2pi, rng, max_mode=4)
    s0 = SimulationState(fh)
    a = rk4_step(s0, FluidParams(nu=0.02, dt=1e-3))
    b = rk4_step(s0, FluidParams(nu=0.02, dt=1e-3, scheme="if_rk4"))
    assert (a.omega_hat - b.omega_hat).max_abs() < 1e-8 * fh.max_abs()
    assert a.step_index == 1 and a.time == pytest.approx(1e-3)


def test_plain_step_uses_only_padded_transforms(rng, grid_2pi):
    s0 = SimulationState(random_spectrum(grid_2pi, rng))
    before = TRANSFORMS.snapshot()
    rk4_step(s0, FluidParams(nu=0.01, dt=1e-3))
    after = TRANSFORMS.snapshot()
    assert after[PLAIN] - before[PLAIN] == 0
    assert after[PADDED] - before[PADDED] == 16


def test_non_finite_state_aborts(grid_2pi):
    c = np.zeros(grid_2pi.spectral_shape, dtype=complex)
    c[1, 1] = np.inf
    with pytest.raises(NumericalInstabilityError) as exc:
        rk4_step(SimulationState(SpectralField(grid_2pi, c), step_index=7), FluidParams(nu=0.01, dt=1e-3))
    assert exc.value.step in (None, 8)


def test_diffusion_stability_warning(caplog):
    g = Grid.square(64, 2.0 * math.pi)
    assert check_diffusion_stability(g, 0.01, 1e-3)
    with caplog.at_level(logging.WARNING):
        assert not check_diffusion_stability(g, 0.01, 1.0)
    assert "stability" in caplog.text


def _half_spectrum_weights(grid):
    # each interior column of the half spectrum stands for itself and its conjugate
    w = np.full(grid.spectral_shape, 2.0)
    w[:, 0] = 1.0
    w[:, grid.n1 // 2] = 1.0
    return w


def test_rhs_matches_convective_form(rng):
    g = Grid(32, 24, 2.0 * math.pi, 5.0)
    nu = 0.03
    for _ in range(5):
        # products stay below the Nyquist modes, where both forms are exact
        fh = random_spectrum(g, rng, max_mode=5)
        u1_hat, u2_hat = velocity_from_vorticity(fh)
        advection = dealiased_product(u1_hat, derivative(fh, axis=1))
        advection = advection + dealiased_product(u2_hat, derivative(fh, axis=2))
        expected = -advection.coeffs - nu * g.ksq * fh.coeffs
        expected[0, 0] = 0.0
        got = rhs(fh, (u1_hat, u2_hat), nu).coeffs
        np.testing.assert_allclose(got, expected, atol=1e-13 * np.max(np.abs(expected)))


def test_nonlinear_term_conserves_energy_and_enstrophy(rng, grid_2pi):
    w = _half_spectrum_weights(grid_2pi)
    for _ in range(5):
        fh = random_spectrum(grid_2pi, rng)
        n_hat = nonlinear_term(velocity_from_vorticity(fh)).coeffs
        pair = w * np.conj(fh.coeffs) * n_hat
        scale = np.sum(w * np.abs(fh.coeffs) * np.abs(n_hat))
        assert abs(np.sum(pair.real)) <= 1e-13 * scale
        assert abs(np.sum(pair.real * grid_2pi.ksq_inv)) <= 1e-13 * scale


@pytest.mark.parametrize("flow", ["taylor_green", "random"])
def test_energy_decays_at_twice_nu_times_enstrophy(rng, grid_2pi, flow):
    nu, dt = 0.05, 1e-3
    if flow == "taylor_green":
        fh = forward_transform(taylor_green_vorticity(grid_2pi, TaylorGreenParams(nu=nu)))
    else:
        fh = random_spectrum(grid_2pi, rng, max_mode=5)
    params = FluidParams(nu=nu, dt=dt)
    states = [SimulationState(fh)]
    for _ in range(2):
        states.append(rk4_step(states[-1], params))

    def e_of(s):
        return energy(tuple(inverse_transform(c) for c in velocity_from_vorticity(s.omega_hat)))

    de_dt = (e_of(states[2]) - e_of(states[0])) / (2.0 * dt)
    z = enstrophy(inverse_transform(states[1].omega_hat))
    assert de_dt < 0.0
    assert de_dt == pytest.approx(-2.0 * nu * z, rel=1e-4)


def test_rk4_with_identity_conditioner_is_fourth_order(rng, grid_2pi):
    fh = random_spectrum(grid_2pi, rng, max_mode=3)
    fh = fh * (2.0 / inverse_transform(fh).max_abs())
    conditioner = BoundaryConditioner(grid_2pi, ConditioningConfig())
    t_end = 0.2

    def run(dt):
        params = FluidParams(nu=0.01, dt=dt)
        return integrate(SimulationState(fh), params, conditioner, int(round(t_end / dt))).omega_hat

    reference = run(0.0025)
    dts = [0.02, 0.01, 0.005]
    errors = [(run(dt) - reference).max_abs() for dt in dts]
    assert errors[0] > errors[1] > errors[2] > 0.0
    assert fitted_slope(dts, errors) == pytest.approx(4.0, abs=0.3)
