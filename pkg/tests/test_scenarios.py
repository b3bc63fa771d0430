import math

import numpy as np
import pytest

from fourier_ib.diagnostics import energy, enstrophy
from fourier_ib.errors import ConfigError, GeometryError
from fourier_ib.pipeline import build_conditioner
from fourier_ib.scenarios import (
    CavityParams,
    CylinderParams,
    DipoleParams,
    build_cavity,
    build_cylinder,
    build_dipole,
    build_scenario,
    cylinder_state,
    dipole_domain_length,
    monopole,
    scenario_params,
)
from fourier_ib.spectral import PhysicalField, inverse_transform, velocity_from_vorticity


def test_monopole_profile():
    x = np.array([0.0, 0.1, 0.2])
    w = monopole(x, np.zeros(3), (0.0, 0.0), 300.0, 0.1)
    assert w[0] == pytest.approx(300.0)
    assert w[1] == pytest.approx(0.0, abs=1e-12)
    assert w[2] == pytest.approx(300.0 * -3.0 * math.exp(-4.0))


def test_dipole_walls_fall_on_grid_points():
    p = DipoleParams()
    setup = build_dipole(p, 128)
    edge = p.margin_cells + int(p.window_cells)
    assert setup.grid.x1[edge] == pytest.approx(-1.0, abs=1e-12)
    assert setup.grid.x1[128 - edge] == pytest.approx(1.0, abs=1e-12)
    assert setup.grid.l1 == pytest.approx(dipole_domain_length(128, p))
    assert [b.name for b in setup.bodies] == ["walls"]


def test_dipole_initial_energy_and_enstrophy():
    setup = build_dipole(DipoleParams(), 512)
    omega_hat = setup.initial_spectrum()
    u1_hat, u2_hat = velocity_from_vorticity(omega_hat)
    mask = setup.mask(0.0)
    E = energy((inverse_transform(u1_hat), inverse_transform(u2_hat)), mask)
    Z = enstrophy(inverse_transform(omega_hat), mask)
    assert E == pytest.approx(2.0, rel=1e-2)
    assert Z == pytest.approx(800.0, rel=1e-2)


def test_dipole_monopoles_have_opposite_sign():
    setup = build_dipole(DipoleParams(walls=False), 128)
    assert setup.periodic
    assert abs(np.sum(setup.omega0.values)) * setup.grid.cell_area < 1e-8
    i = int(np.argmin(np.abs(setup.grid.x1)))
    j_top = int(np.argmin(np.abs(setup.grid.x2 - 0.1)))
    j_bot = int(np.argmin(np.abs(setup.grid.x2 + 0.1)))
    assert setup.omega0.values[j_top, i] > 0.0 > setup.omega0.values[j_bot, i]


def test_dipole_too_close_to_the_wall():
    with pytest.raises(GeometryError):
        build_dipole(DipoleParams(centers=((0.0, 0.6), (0.0, -0.1))), 128)
    with pytest.raises(GeometryError):
        dipole_domain_length(40, DipoleParams())


def test_cylinder_parameters():
    p = CylinderParams()
    assert p.U == pytest.approx(1.75, abs=1e-4)
    assert p.KC == pytest.approx(5.0, abs=1e-3)
    assert p.Re == pytest.approx(100.0, abs=1e-3)
    x, v = cylinder_state(p, 0.0)
    np.testing.assert_allclose(x, [-p.A, 0.0], atol=1e-15)
    np.testing.assert_allclose(v, [0.0, 0.0], atol=1e-15)
    assert p.time_shift == pytest.approx(0.25)


def test_cylinder_setup_starts_at_rest():
    setup = build_cylinder(CylinderParams(), 128)
    assert setup.omega0.max_abs() == 0.0
    assert not setup.bodies[0].is_static
    assert setup.window is not None


def test_cavity_walls_on_grid_lines():
    p = CavityParams(cavity_cells=40)
    setup = build_cavity(p, 96)
    g = setup.grid
    assert g.dx1 == pytest.approx(1.0 / 40)
    assert np.min(np.abs(g.x1)) < 1e-12
    assert np.min(np.abs(g.x2 - 1.0)) < 1e-12
    assert [b.name for b in setup.bodies] == ["lid", "walls"]
    assert setup.n_r == 3


@pytest.mark.parametrize("kwargs,n", [(dict(channel_cells=1), 96), (dict(cavity_cells=40), 64)])
def test_cavity_layout_errors(kwargs, n):
    with pytest.raises(GeometryError):
        build_cavity(CavityParams(**kwargs), n)


def test_cavity_conditioning_drives_the_lid():
    p = CavityParams(cavity_cells=40)
    setup = build_cavity(p, 96)
    conditioner, _ = build_conditioner(setup, 2, p.n_r)
    out = conditioner(setup.initial_spectrum(), 0.0)
    u1 = inverse_transform(out.u_hat[0]).values
    g = setup.grid
    i = int(np.argmin(np.abs(g.x1 - 0.5)))
    j = int(np.argmin(np.abs(g.x2 - (1.0 + 2.0 * g.dx2))))
    assert 0.7 < u1[j, i] < 1.3
    centre = int(np.argmin(np.abs(g.x2 - 0.5)))
    assert abs(u1[centre, i]) < 0.7


def test_registry_overrides_and_errors():
    p = scenario_params("taylor_green", {"nu": "0.02"})
    assert p.nu == 0.02
    assert scenario_params("dipole", {"centers": [[0.0, 0.2], [0.0, -0.2]]}).centers == ((0.0, 0.2), (0.0, -0.2))
    with pytest.raises(ConfigError):
        scenario_params("channel")
    with pytest.raises(ConfigError):
        scenario_params("dipole", {"radius": 1.0})
    with pytest.raises(ConfigError):
        scenario_params("cavity", {"cavity_cells": "many"})
    setup = build_scenario("taylor_green", 32)
    assert isinstance(setup.omega0, PhysicalField) and setup.periodic
