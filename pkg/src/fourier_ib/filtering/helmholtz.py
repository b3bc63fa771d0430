from __future__ import annotations

import logging
import math
from dataclasses import dataclass

from fourier_ib.spectral import Grid, PhysicalField, SpectralField, forward_transform, inverse_transform

log = logging.getLogger(__name__)


def alpha_from_c_alpha(c_alpha: float, grid: Grid, length: float | None = None) -> float:
    """Filter width for a cutoff at c_alpha times the largest resolved wavenumber.

    alpha = L / (2 pi c_alpha |m|_max) with |m|_max = sqrt((n1/2)^2 + (n2/2)^2)
    the largest mode index and L the domain length (l1 unless given).
    """
    if not c_alpha > 0.0:
        raise ValueError(f"c_alpha must be positive, got {c_alpha}")
    L = grid.l1 if length is None else length
    m_max = math.hypot(grid.n1 / 2, grid.n2 / 2)
    return L / (2.0 * math.pi * c_alpha * m_max)


@dataclass(frozen=True)
class FilterSpec:
    c_alpha: float

    def alpha(self, grid: Grid) -> float:
        return alpha_from_c_alpha(self.c_alpha, grid)


def helmholtz_filter(phi_hat: SpectralField, alpha: float) -> SpectralField:
    """Inverse Helmholtz smoothing: phi_hat / (1 + alpha^2 |k|^2)."""
    if alpha < 0.0:
        raise ValueError(f"alpha must be >= 0, got {alpha}")
    g = phi_hat.grid
    return phi_hat.with_coeffs(phi_hat.coeffs / (1.0 + alpha * alpha * g.ksq))


def filter_field(field: PhysicalField, c_alpha: float) -> tuple[PhysicalField, float]:
    """Filter a physical field; returns the filtered field and the alpha used."""
    alpha = alpha_from_c_alpha(c_alpha, field.grid)
    log.info("Helmholtz filter c_alpha=%.4g alpha=%.6e on %dx%d", c_alpha, alpha, field.grid.n1, field.grid.n2)
    return inverse_transform(helmholtz_filter(forward_transform(field), alpha)), alpha
