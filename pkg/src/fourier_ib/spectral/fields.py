from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np

from fourier_ib.errors import GridMismatchError
from fourier_ib.spectral.grid import Grid, check_same_grid

Scalar = Union[int, float, complex]


@dataclass(frozen=True)
class PhysicalField:
    """Real samples on the grid, array shape (n2, n1) with x1 fastest."""

    grid: Grid
    values: np.ndarray

    def __post_init__(self) -> None:
        if self.values.shape != self.grid.shape:
            raise GridMismatchError(
                f"field shape {self.values.shape} does not match grid shape {self.grid.shape}"
            )

    @classmethod
    def zeros(cls, grid: Grid) -> "PhysicalField":
        return cls(grid, np.zeros(grid.shape))

    @classmethod
    def constant(cls, grid: Grid, c: float) -> "PhysicalField":
        return cls(grid, np.full(grid.shape, float(c)))

    def is_finite(self) -> bool:
        return bool(np.all(np.isfinite(self.values)))

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.values)))

    def mean(self) -> float:
        return float(np.mean(self.values))


@dataclass(frozen=True)
class SpectralField:
    """Fourier coefficients of a real field, stored as the rfft half spectrum.

    Coefficients are normalised so that the (0, 0) entry is the arithmetic
    mean of the field. `full()` expands to the complete (n2, n1) k-grid.
    """

    grid: Grid
    coeffs: np.ndarray

    def __post_init__(self) -> None:
        if self.coeffs.shape != self.grid.spectral_shape:
            raise GridMismatchError(
                f"spectrum shape {self.coeffs.shape} does not match {self.grid.spectral_shape}"
            )

    @classmethod
    def zeros(cls, grid: Grid) -> "SpectralField":
        return cls(grid, np.zeros(grid.spectral_shape, dtype=complex))

    @property
    def mean_mode(self) -> complex:
        return complex(self.coeffs[0, 0])

    def with_coeffs(self, coeffs: np.ndarray) -> "SpectralField":
        return SpectralField(self.grid, coeffs)

    def without_mean(self) -> "SpectralField":
        c = self.coeffs.copy()
        c[0, 0] = 0.0
        return SpectralField(self.grid, c)

    def is_finite(self) -> bool:
        return bool(np.all(np.isfinite(self.coeffs)))

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.coeffs)))

    def full(self) -> np.ndarray:
        """Full conjugate-symmetric coefficient array of shape (n2, n1)."""
        n1, n2 = self.grid.n1, self.grid.n2
        h1 = n1 // 2
        out = np.zeros((n2, n1), dtype=complex)
        out[:, : h1 + 1] = self.coeffs
        mirror = (-np.arange(n2)) % n2
        out[:, h1 + 1 :] = np.conj(self.coeffs[mirror, 1:h1][:, ::-1])
        return out

    def __add__(self, other: "SpectralField") -> "SpectralField":
        check_same_grid(self.grid, other.grid)
        return SpectralField(self.grid, self.coeffs + other.coeffs)

    def __sub__(self, other: "SpectralField") -> "SpectralField":
        check_same_grid(self.grid, other.grid)
        return SpectralField(self.grid, self.coeffs - other.coeffs)

    def __mul__(self, a: Scalar) -> "SpectralField":
        return SpectralField(self.grid, self.coeffs * a)

    __rmul__ = __mul__

    def __neg__(self) -> "SpectralField":
        return SpectralField(self.grid, -self.coeffs)


VelocityPair = Tuple[PhysicalField, PhysicalField]
SpectralVelocity = Tuple[SpectralField, SpectralField]
