from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Tuple

import numpy as np

from fourier_ib.errors import GridMismatchError


@dataclass(frozen=True)
class Grid:
    """Uniform periodic grid over [origin, origin + l) in each direction.

    Physical samples are stored as arrays of shape (n2, n1) in C order, so
    index [j, i] holds the value at (x1_i, x2_j) and x1 varies fastest.
    """

    n1: int
    n2: int
    l1: float
    l2: float
    origin1: float = 0.0
    origin2: float = 0.0

    def __post_init__(self) -> None:
        for name, n in (("n1", self.n1), ("n2", self.n2)):
            if int(n) != n or n < 8 or n % 2:
                raise ValueError(f"{name} must be an even integer >= 8, got {n!r}")
        if not (self.l1 > 0.0 and self.l2 > 0.0):
            raise ValueError(f"domain lengths must be positive, got ({self.l1}, {self.l2})")

    @classmethod
    def square(cls, n: int, length: float, centered: bool = False) -> "Grid":
        o = -0.5 * length if centered else 0.0
        return cls(n1=n, n2=n, l1=length, l2=length, origin1=o, origin2=o)

    @property
    def dx1(self) -> float:
        return self.l1 / self.n1

    @property
    def dx2(self) -> float:
        return self.l2 / self.n2

    @property
    def h(self) -> float:
        return min(self.dx1, self.dx2)

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.n2, self.n1)

    @property
    def spectral_shape(self) -> Tuple[int, int]:
        return (self.n2, self.n1 // 2 + 1)

    @property
    def cell_area(self) -> float:
        return self.dx1 * self.dx2

    @cached_property
    def x1(self) -> np.ndarray:
        return self.origin1 + self.dx1 * np.arange(self.n1)

    @cached_property
    def x2(self) -> np.ndarray:
        return self.origin2 + self.dx2 * np.arange(self.n2)

    def mesh(self) -> Tuple[np.ndarray, np.ndarray]:
        return np.meshgrid(self.x1, self.x2)

    def point(self, i: int, j: int) -> np.ndarray:
        return np.array([self.origin1 + i * self.dx1, self.origin2 + j * self.dx2])

    def fractional_index(self, x: np.ndarray) -> np.ndarray:
        """Position in index units, (..., 2) -> (..., 2) as (i, j)."""
        x = np.asarray(x, dtype=float)
        return np.stack(
            [(x[..., 0] - self.origin1) / self.dx1, (x[..., 1] - self.origin2) / self.dx2],
            axis=-1,
        )

    # Wavenumbers on the half spectrum, broadcast to spectral_shape.

    @cached_property
    def k1(self) -> np.ndarray:
        return (2.0 * np.pi / self.l1) * np.arange(self.n1 // 2 + 1)[None, :] * np.ones((self.n2, 1))

    @cached_property
    def k2(self) -> np.ndarray:
        m = np.fft.fftfreq(self.n2, d=1.0 / self.n2)
        return (2.0 * np.pi / self.l2) * m[:, None] * np.ones((1, self.n1 // 2 + 1))

    @cached_property
    def k1_odd(self) -> np.ndarray:
        """k1 with the Nyquist column zeroed (symbol of first derivatives)."""
        k = self.k1.copy()
        k[:, self.n1 // 2] = 0.0
        return k

    @cached_property
    def k2_odd(self) -> np.ndarray:
        k = self.k2.copy()
        k[self.n2 // 2, :] = 0.0
        return k

    @cached_property
    def ksq(self) -> np.ndarray:
        return self.k1 ** 2 + self.k2 ** 2

    @cached_property
    def ksq_inv(self) -> np.ndarray:
        out = np.zeros_like(self.ksq)
        nz = self.ksq > 0.0
        out[nz] = 1.0 / self.ksq[nz]
        return out

    @cached_property
    def mode_index_norm(self) -> np.ndarray:
        """|m| with m the integer mode index pair, on the half spectrum."""
        m1 = np.arange(self.n1 // 2 + 1)[None, :]
        m2 = np.fft.fftfreq(self.n2, d=1.0 / self.n2)[:, None]
        return np.sqrt(m1 ** 2 + m2 ** 2)


def check_same_grid(*grids: Grid) -> Grid:
    first = grids[0]
    for g in grids[1:]:
        if g != first:
            raise GridMismatchError(f"grid mismatch: {first} vs {g}")
    return first
