from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from typing import Dict, Tuple

import numpy as np
from scipy import fft as sfft

from fourier_ib.errors import NumericalInstabilityError
from fourier_ib.spectral.fields import PhysicalField, SpectralField
from fourier_ib.spectral.grid import Grid

PLAIN = "plain"
PADDED = "padded"


@dataclass
class TransformCounter:
    """Counts 2D transforms by kind (plain n-grid vs 3/2-padded grid)."""

    counts: Dict[str, int] = field(default_factory=lambda: {PLAIN: 0, PADDED: 0})
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def add(self, kind: str, n: int = 1) -> None:
        with self._lock:
            self.counts[kind] = self.counts.get(kind, 0) + n

    def reset(self) -> None:
        with self._lock:
            for k in self.counts:
                self.counts[k] = 0

    def snapshot(self) -> Dict[str, int]:
        with self._lock:
            return dict(self.counts)


TRANSFORMS = TransformCounter()


def forward_transform(f: PhysicalField) -> SpectralField:
    if not f.is_finite():
        raise NumericalInstabilityError("non-finite values passed to forward transform")
    TRANSFORMS.add(PLAIN)
    return SpectralField(f.grid, sfft.rfft2(f.values, norm="forward"))


def inverse_transform(fh: SpectralField) -> PhysicalField:
    TRANSFORMS.add(PLAIN)
    g = fh.grid
    return PhysicalField(g, sfft.irfft2(fh.coeffs, s=g.shape, norm="forward"))


def padded_shape(grid: Grid) -> Tuple[int, int]:
    """Physical shape of the dealiasing grid, ceil(3n/2) rounded to a fast size."""
    m2 = sfft.next_fast_len(math.ceil(1.5 * grid.n2), real=True)
    m1 = sfft.next_fast_len(math.ceil(1.5 * grid.n1), real=True)
    return (m2, m1)


def _pad(fh: SpectralField, shape: Tuple[int, int]) -> np.ndarray:
    g = fh.grid
    h1, h2 = g.n1 // 2, g.n2 // 2
    m2, m1 = shape
    out = np.zeros((m2, m1 // 2 + 1), dtype=complex)
    out[:h2, :h1] = fh.coeffs[:h2, :h1]
    out[m2 - h2 + 1 :, :h1] = fh.coeffs[g.n2 - h2 + 1 :, :h1]
    return out


def _truncate(ph: np.ndarray, grid: Grid) -> np.ndarray:
    h1, h2 = grid.n1 // 2, grid.n2 // 2
    m2 = ph.shape[0]
    out = np.zeros(grid.spectral_shape, dtype=complex)
    out[:h2, :h1] = ph[:h2, :h1]
    out[grid.n2 - h2 + 1 :, :h1] = ph[m2 - h2 + 1 :, :h1]
    return out


def to_padded_physical(fh: SpectralField) -> np.ndarray:
    """Samples of fh (Nyquist modes dropped) on the 3/2-padded grid."""
    shape = padded_shape(fh.grid)
    TRANSFORMS.add(PADDED)
    return sfft.irfft2(_pad(fh, shape), s=shape, norm="forward")


def from_padded_physical(values: np.ndarray, grid: Grid) -> SpectralField:
    """Retained modes (|k_i| < n_i/2) of padded-grid samples; Nyquist left at zero."""
    TRANSFORMS.add(PADDED)
    return SpectralField(grid, _truncate(sfft.rfft2(values, norm="forward"), grid))
