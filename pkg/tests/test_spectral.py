import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_spectrum
from fourier_ib.errors import GridMismatchError, NumericalInstabilityError
from fourier_ib.spectral import (
    PADDED,
    PLAIN,
    TRANSFORMS,
    Grid,
    PhysicalField,
    SpectralField,
    curl_spectral,
    dealiased_product,
    derivative,
    divergence_spectral,
    forward_transform,
    inverse_transform,
    padded_shape,
    velocity_from_vorticity,
)

even_sizes = st.integers(min_value=4, max_value=24).map(lambda k: 2 * k)


@pytest.mark.parametrize("n1,n2,l1,l2", [(7, 8, 1.0, 1.0), (6, 8, 1.0, 1.0), (8, 8, 0.0, 1.0), (8, 8, 1.0, -2.0)])
def test_grid_rejects_bad_sizes(n1, n2, l1, l2):
    with pytest.raises(ValueError):
        Grid(n1, n2, l1, l2)


def test_grid_coordinates_and_shapes():
    g = Grid(16, 8, 2.0, 1.0, origin1=-1.0, origin2=0.5)
    assert g.shape == (8, 16)
    assert g.spectral_shape == (8, 9)
    assert g.x1[0] == -1.0 and g.x1[-1] == pytest.approx(1.0 - 2.0 / 16)
    assert g.h == pytest.approx(0.125)
    np.testing.assert_allclose(g.fractional_index(g.point(3, 5)), [3.0, 5.0])


def test_transform_round_trip_and_mean(rng, grid_2pi):
    f = PhysicalField(grid_2pi, rng.standard_normal(grid_2pi.shape))
    fh = forward_transform(f)
    assert fh.mean_mode.real == pytest.approx(f.mean(), abs=1e-15)
    np.testing.assert_allclose(inverse_transform(fh).values, f.values, atol=1e-13)


def test_full_spectrum_is_hermitian_expansion(rng, grid_2pi):
    f = PhysicalField(grid_2pi, rng.standard_normal(grid_2pi.shape))
    full = forward_transform(f).full()
    back = np.fft.ifft2(full, norm="forward")
    np.testing.assert_allclose(back.real, f.values, atol=1e-12)
    assert np.max(np.abs(back.imag)) < 1e-12


def test_forward_rejects_non_finite(grid_2pi):
    vals = np.zeros(grid_2pi.shape)
    vals[3, 4] = np.nan
    with pytest.raises(NumericalInstabilityError):
        forward_transform(PhysicalField(grid_2pi, vals))


def test_field_shape_and_grid_checks(grid_2pi):
    with pytest.raises(GridMismatchError):
        PhysicalField(grid_2pi, np.zeros((4, 4)))
    other = Grid.square(16, 2.0 * math.pi)
    with pytest.raises(GridMismatchError):
        SpectralField.zeros(grid_2pi) + SpectralField.zeros(other)


def test_velocity_of_cellular_flow(grid_2pi):
    X1, X2 = grid_2pi.mesh()
    omega = PhysicalField(grid_2pi, 2.0 * np.sin(X1) * np.sin(X2))
    u1_hat, u2_hat = velocity_from_vorticity(forward_transform(omega))
    np.testing.assert_allclose(inverse_transform(u1_hat).values, np.sin(X1) * np.cos(X2), atol=1e-13)
    np.testing.assert_allclose(inverse_transform(u2_hat).values, -np.cos(X1) * np.sin(X2), atol=1e-13)


def test_velocity_is_solenoidal_even_with_nyquist_content(rng, grid_2pi):
    fh = forward_transform(PhysicalField(grid_2pi, rng.standard_normal(grid_2pi.shape)))
    u_hat = velocity_from_vorticity(fh)
    scale = max(inverse_transform(u_hat[0]).max_abs(), inverse_transform(u_hat[1]).max_abs())
    assert inverse_transform(divergence_spectral(*u_hat)).max_abs() <= 1e-12 * scale


@given(n1=even_sizes, n2=even_sizes, seed=st.integers(0, 2**32 - 1))
@settings(max_examples=25, deadline=None)
def test_curl_inverts_velocity_on_zero_mean_fields(n1, n2, seed):
    g = Grid(n1, n2, 2.0 * math.pi, 3.0)
    fh = random_spectrum(g, np.random.default_rng(seed))
    back = curl_spectral(*velocity_from_vorticity(fh))
    np.testing.assert_allclose(back.coeffs, fh.coeffs, atol=1e-12 * max(fh.max_abs(), 1.0))


def test_derivatives_of_trig_functions(grid_2pi):
    X1, X2 = grid_2pi.mesh()
    fh = forward_transform(PhysicalField(grid_2pi, np.sin(3 * X1) * np.cos(2 * X2)))
    d1 = inverse_transform(derivative(fh, axis=1)).values
    d22 = inverse_transform(derivative(fh, axis=2, order=2)).values
    np.testing.assert_allclose(d1, 3 * np.cos(3 * X1) * np.cos(2 * X2), atol=1e-12)
    np.testing.assert_allclose(d22, -4 * np.sin(3 * X1) * np.cos(2 * X2), atol=1e-12)
    with pytest.raises(ValueError):
        derivative(fh, axis=3)


def test_dealiased_product_has_no_aliasing():
    g = Grid.square(16, 2.0 * math.pi)
    X1, _ = g.mesh()
    f = forward_transform(PhysicalField(g, np.cos(6 * X1)))
    h = forward_transform(PhysicalField(g, np.cos(5 * X1)))
    prod = inverse_transform(dealiased_product(f, h)).values
    # the k=11 part is beyond the grid and dropped; nothing folds back onto k=5
    np.testing.assert_allclose(prod, 0.5 * np.cos(X1), atol=1e-14)


def test_padded_shape_is_at_least_three_halves():
    for n in (8, 30, 64, 100, 512):
        m2, m1 = padded_shape(Grid.square(n, 1.0))
        assert m1 >= math.ceil(1.5 * n) and m2 >= math.ceil(1.5 * n)


def test_transform_counter_separates_kinds(grid_2pi):
    fh = SpectralField.zeros(grid_2pi)
    before = TRANSFORMS.snapshot()
    inverse_transform(fh)
    dealiased_product(fh, fh)
    after = TRANSFORMS.snapshot()
    assert after[PLAIN] - before[PLAIN] == 1
    assert after[PADDED] - before[PADDED] == 3


def _convolve_retained(f_full, g_full, grid):
    """Direct sum of f_a g_b over mode pairs with a + b a retained mode of the half spectrum."""
    n1, n2 = grid.n1, grid.n2
    m1 = np.rint(np.fft.fftfreq(n1, d=1.0 / n1)).astype(int)
    m2 = np.rint(np.fft.fftfreq(n2, d=1.0 / n2)).astype(int)
    M1, M2 = np.meshgrid(m1, m2)
    out = np.zeros(grid.spectral_shape, dtype=complex)
    for j2 in range(n2):
        for j1 in range(n1):
            s1 = m1[j1] + M1
            s2 = m2[j2] + M2
            keep = (s1 >= 0) & (s1 < n1 // 2) & (np.abs(s2) < n2 // 2)
            np.add.at(out, (s2[keep] % n2, s1[keep]), f_full[j2, j1] * g_full[keep])
    return out


@pytest.mark.parametrize("n1,n2", [(8, 10), (12, 8)])
def test_dealiased_product_equals_truncated_convolution(rng, n1, n2):
    g = Grid(n1, n2, 1.0, 1.3)
    f = random_spectrum(g, rng)
    h = random_spectrum(g, rng)
    f.coeffs[0, 0] = 0.3
    expected = _convolve_retained(f.full(), h.full(), g)
    got = dealiased_product(f, h).coeffs
    scale = np.sum(np.abs(f.full())) * np.sum(np.abs(h.full()))
    np.testing.assert_allclose(got, expected, atol=1e-14 * scale)


def test_velocity_and_curl_drop_nyquist_content(grid_2pi):
    c = np.zeros(grid_2pi.spectral_shape, dtype=complex)
    c[3, grid_2pi.n1 // 2] = 1.0
    c[grid_2pi.n2 // 2, 2] = 1.0
    u1_hat, u2_hat = velocity_from_vorticity(SpectralField(grid_2pi, c))
    # odd derivatives across a Nyquist line vanish
    assert u1_hat.coeffs[3, grid_2pi.n1 // 2] != 0.0 and u2_hat.coeffs[3, grid_2pi.n1 // 2] == 0.0
    assert u1_hat.coeffs[grid_2pi.n2 // 2, 2] == 0.0 and u2_hat.coeffs[grid_2pi.n2 // 2, 2] != 0.0
    assert divergence_spectral(u1_hat, u2_hat).max_abs() == 0.0
