from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Protocol, Tuple

import numpy as np

from fourier_ib.geometry.shapes import Bounds, Shape


class Motion(Protocol):
    """Rigid translation law of a body's frame."""

    @property
    def is_static(self) -> bool: ...

    def displacement(self, t: float) -> np.ndarray: ...

    def velocity(self, t: float) -> np.ndarray: ...


@dataclass(frozen=True)
class Stationary:
    @property
    def is_static(self) -> bool:
        return True

    def displacement(self, t: float) -> np.ndarray:
        return np.zeros(2)

    def velocity(self, t: float) -> np.ndarray:
        return np.zeros(2)


@dataclass(frozen=True)
class HarmonicOscillation:
    """x(t) = A sin(2 pi f t + phase) along `axis` (0 -> x1, 1 -> x2)."""

    amplitude: float
    frequency: float
    phase: float = 0.0
    axis: int = 0

    @property
    def is_static(self) -> bool:
        return False

    @property
    def max_speed(self) -> float:
        return 2.0 * np.pi * self.frequency * self.amplitude

    def _unit(self) -> np.ndarray:
        e = np.zeros(2)
        e[self.axis] = 1.0
        return e

    def displacement(self, t: float) -> np.ndarray:
        return self.amplitude * np.sin(2.0 * np.pi * self.frequency * t + self.phase) * self._unit()

    def velocity(self, t: float) -> np.ndarray:
        return self.max_speed * np.cos(2.0 * np.pi * self.frequency * t + self.phase) * self._unit()


@dataclass(frozen=True)
class ImmersedBody:
    """Shape + rigid motion + the Dirichlet velocity imposed on its surface.

    `prescribed_velocity` overrides the rigid-body value (a moving lid or a
    slip region); `n_p` overrides the run's extrapolation order for this body.
    """

    name: str
    shape: Shape
    motion: Motion = field(default_factory=Stationary)
    prescribed_velocity: Optional[Tuple[float, float]] = None
    n_p: Optional[int] = None

    def __post_init__(self) -> None:
        if self.n_p is not None and self.n_p not in (0, 1, 2):
            raise ValueError(f"n_p must be 0, 1 or 2, got {self.n_p}")

    @property
    def is_static(self) -> bool:
        return self.motion.is_static

    def _local(self, x: np.ndarray, t: float) -> np.ndarray:
        return np.asarray(x, dtype=float) - self.motion.displacement(t)

    def signed_distance(self, x: np.ndarray, t: float) -> np.ndarray:
        return self.shape.signed_distance(self._local(x, t))

    def normal(self, x: np.ndarray, t: float) -> np.ndarray:
        return self.shape.normal(self._local(x, t))

    def bounds(self, t: float) -> Optional[Bounds]:
        b = self.shape.bounds()
        if b is None:
            return None
        d = self.motion.displacement(t)
        return (b[0] + d[0], b[1] + d[1], b[2] + d[0], b[3] + d[1])

    def surface_velocity(self, x: np.ndarray, t: float) -> np.ndarray:
        """u_pb at positions x (..., 2)."""
        x = np.asarray(x, dtype=float)
        if self.prescribed_velocity is not None:
            v = np.asarray(self.prescribed_velocity, dtype=float)
        else:
            v = self.motion.velocity(t)
        return np.broadcast_to(v, x.shape).copy()

    def effective_order(self, n_p: int) -> int:
        return n_p if self.n_p is None else self.n_p


def signed_distance(body: ImmersedBody, x: np.ndarray, t: float) -> np.ndarray:
    return body.signed_distance(x, t)


def normal(body: ImmersedBody, x: np.ndarray, t: float) -> np.ndarray:
    return body.normal(x, t)
