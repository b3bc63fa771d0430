from __future__ import annotations

import math

import numpy as np
import pytest

from fourier_ib.spectral import Grid, PhysicalField, SpectralField, forward_transform


def nyquist_mask(grid: Grid) -> np.ndarray:
    """True on half-spectrum modes with |m_i| = n_i/2 in either direction."""
    m = np.zeros(grid.spectral_shape, dtype=bool)
    m[:, grid.n1 // 2] = True
    m[grid.n2 // 2, :] = True
    return m


def random_spectrum(grid: Grid, rng: np.random.Generator, max_mode: int | None = None) -> SpectralField:
    """Zero-mean, Nyquist-free spectrum of a random real field.

    With `max_mode`, only modes with |m_i| <= max_mode are kept (a smooth field).
    """
    fh = forward_transform(PhysicalField(grid, rng.standard_normal(grid.shape)))
    c = fh.coeffs.copy()
    c[nyquist_mask(grid)] = 0.0
    c[0, 0] = 0.0
    if max_mode is not None:
        m1 = np.arange(grid.n1 // 2 + 1)[None, :]
        m2 = np.abs(np.fft.fftfreq(grid.n2, d=1.0 / grid.n2))[:, None]
        c[(m1 > max_mode) | (m2 > max_mode)] = 0.0
    return SpectralField(grid, c)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture
def grid_2pi() -> Grid:
    return Grid.square(32, 2.0 * math.pi)


@pytest.fixture
def box_grid() -> Grid:
    # [-2, 2)^2 with dx = 1/16
    return Grid.square(64, 4.0, centered=True)
