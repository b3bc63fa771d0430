import math

import numpy as np
import pytest

from fourier_ib.filtering import FilterSpec, alpha_from_c_alpha, filter_field, helmholtz_filter
from fourier_ib.spectral import Grid, PhysicalField, SpectralField, forward_transform


@pytest.fixture(scope="module")
def grid_512():
    return Grid.square(512, 2.0 * math.pi)


def test_alpha_from_c_alpha(grid_512):
    assert alpha_from_c_alpha(1.0, grid_512) == pytest.approx(1.0 / (256.0 * math.sqrt(2.0)))
    assert alpha_from_c_alpha(1.0, grid_512) == pytest.approx(2.7621e-3, abs=1e-7)
    assert alpha_from_c_alpha(0.46, grid_512) == pytest.approx(6.0046e-3, abs=1e-7)
    assert alpha_from_c_alpha(2.0, grid_512) == pytest.approx(0.5 * alpha_from_c_alpha(1.0, grid_512))
    assert FilterSpec(0.46).alpha(grid_512) == alpha_from_c_alpha(0.46, grid_512)


@pytest.mark.parametrize("c_alpha", [0.0, -1.0])
def test_alpha_rejects_non_positive_factor(grid_512, c_alpha):
    with pytest.raises(ValueError):
        alpha_from_c_alpha(c_alpha, grid_512)


def test_single_mode_attenuation(grid_2pi):
    X1, X2 = grid_2pi.mesh()
    f = PhysicalField(grid_2pi, np.cos(3.0 * X1 + 5.0 * X2))
    alpha = 0.1
    out = helmholtz_filter(forward_transform(f), alpha)
    ratio = out.coeffs[5, 3] / forward_transform(f).coeffs[5, 3]
    assert ratio == pytest.approx(1.0 / (1.0 + alpha ** 2 * 34.0), abs=1e-14)


def test_constant_field_is_unchanged(grid_2pi):
    fh = forward_transform(PhysicalField.constant(grid_2pi, 4.5))
    np.testing.assert_array_equal(helmholtz_filter(fh, 0.3).coeffs, fh.coeffs)


def test_filters_compose_to_product_of_symbols(grid_2pi, rng):
    fh = SpectralField(grid_2pi, forward_transform(PhysicalField(grid_2pi, rng.standard_normal(grid_2pi.shape))).coeffs)
    twice = helmholtz_filter(helmholtz_filter(fh, 0.2), 0.2)
    symbol = 1.0 / (1.0 + 0.04 * grid_2pi.ksq) ** 2
    np.testing.assert_allclose(twice.coeffs, fh.coeffs * symbol, rtol=1e-13, atol=1e-16)


def test_zero_alpha_is_identity_and_negative_is_rejected(grid_2pi, rng):
    fh = forward_transform(PhysicalField(grid_2pi, rng.standard_normal(grid_2pi.shape)))
    np.testing.assert_array_equal(helmholtz_filter(fh, 0.0).coeffs, fh.coeffs)
    with pytest.raises(ValueError):
        helmholtz_filter(fh, -0.1)


def test_filter_field_reports_alpha(grid_2pi):
    X1, _ = grid_2pi.mesh()
    out, alpha = filter_field(PhysicalField(grid_2pi, np.sin(X1)), 1.0)
    assert alpha == pytest.approx(1.0 / (16.0 * math.sqrt(2.0)))
    np.testing.assert_allclose(out.values, np.sin(X1) / (1.0 + alpha ** 2), atol=1e-14)
