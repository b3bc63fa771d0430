from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Protocol, Sequence, Tuple

import numpy as np

Bounds = Tuple[float, float, float, float]


def _sign(x: np.ndarray) -> np.ndarray:
    # sign with sign(0) = +1 so medial-axis ties resolve to a fixed direction
    return np.where(x < 0.0, -1.0, 1.0)


class Shape(Protocol):
    """Implicit shape in its own frame: negative inside, zero on the surface."""

    def signed_distance(self, x: np.ndarray) -> np.ndarray: ...

    def normal(self, x: np.ndarray) -> np.ndarray: ...

    def bounds(self) -> Optional[Bounds]: ...

    def min_feature(self) -> float: ...


@dataclass(frozen=True)
class Circle:
    radius: float
    center: Tuple[float, float] = (0.0, 0.0)

    def signed_distance(self, x: np.ndarray) -> np.ndarray:
        p = np.asarray(x, dtype=float) - np.asarray(self.center)
        return np.hypot(p[..., 0], p[..., 1]) - self.radius

    def normal(self, x: np.ndarray) -> np.ndarray:
        p = np.asarray(x, dtype=float) - np.asarray(self.center)
        d = np.hypot(p[..., 0], p[..., 1])
        safe = np.where(d > 0.0, d, 1.0)
        n = p / safe[..., None]
        at_center = d == 0.0
        n[at_center] = (1.0, 0.0)
        return n

    def bounds(self) -> Optional[Bounds]:
        cx, cy = self.center
        r = self.radius
        return (cx - r, cy - r, cx + r, cy + r)

    def min_feature(self) -> float:
        return 2.0 * self.radius


@dataclass(frozen=True)
class RoundedRectangle:
    """Axis-aligned rectangle with quarter-circle corners of radius `corner`."""

    half_width: float
    half_height: float
    corner: float = 0.0
    center: Tuple[float, float] = (0.0, 0.0)

    def __post_init__(self) -> None:
        if self.corner < 0.0 or self.corner > min(self.half_width, self.half_height):
            raise ValueError(f"corner radius {self.corner} does not fit the rectangle")

    @classmethod
    def from_extent(cls, x0: float, y0: float, x1: float, y1: float, corner: float = 0.0) -> "RoundedRectangle":
        return cls(
            half_width=0.5 * (x1 - x0),
            half_height=0.5 * (y1 - y0),
            corner=corner,
            center=(0.5 * (x0 + x1), 0.5 * (y0 + y1)),
        )

    def _q(self, x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        p = np.asarray(x, dtype=float) - np.asarray(self.center)
        inner = np.array([self.half_width - self.corner, self.half_height - self.corner])
        return p, np.abs(p) - inner

    def signed_distance(self, x: np.ndarray) -> np.ndarray:
        _, q = self._q(x)
        outside = np.hypot(np.maximum(q[..., 0], 0.0), np.maximum(q[..., 1], 0.0))
        inside = np.minimum(np.maximum(q[..., 0], q[..., 1]), 0.0)
        return outside + inside - self.corner

    def normal(self, x: np.ndarray) -> np.ndarray:
        p, q = self._q(x)
        qo = np.maximum(q, 0.0)
        length = np.hypot(qo[..., 0], qo[..., 1])
        s = _sign(p)
        n = np.empty_like(p)
        out = length > 0.0
        n[out] = s[out] * qo[out] / length[out][:, None]
        x_axis = ~out & (q[..., 0] >= q[..., 1])
        y_axis = ~out & ~x_axis
        n[x_axis] = np.stack([s[x_axis][:, 0], np.zeros(x_axis.sum())], axis=-1)
        n[y_axis] = np.stack([np.zeros(y_axis.sum()), s[y_axis][:, 1]], axis=-1)
        return n

    def bounds(self) -> Optional[Bounds]:
        cx, cy = self.center
        return (cx - self.half_width, cy - self.half_height, cx + self.half_width, cy + self.half_height)

    def min_feature(self) -> float:
        return 2.0 * min(self.half_width, self.half_height)


@dataclass(frozen=True)
class Enclosure:
    """Solid surroundings of an open box: the complement of an axis-aligned rectangle."""

    half_width: float
    half_height: float
    center: Tuple[float, float] = (0.0, 0.0)

    @property
    def box(self) -> RoundedRectangle:
        return RoundedRectangle(self.half_width, self.half_height, 0.0, self.center)

    def signed_distance(self, x: np.ndarray) -> np.ndarray:
        return -self.box.signed_distance(x)

    def normal(self, x: np.ndarray) -> np.ndarray:
        return -self.box.normal(x)

    def bounds(self) -> Optional[Bounds]:
        return None

    def min_feature(self) -> float:
        return float("inf")


@dataclass(frozen=True)
class Union:
    parts: Sequence[Shape]

    def __post_init__(self) -> None:
        if not self.parts:
            raise ValueError("union of no shapes")

    def _stack(self, x: np.ndarray) -> np.ndarray:
        return np.stack([s.signed_distance(x) for s in self.parts], axis=0)

    def signed_distance(self, x: np.ndarray) -> np.ndarray:
        return np.min(self._stack(x), axis=0)

    def normal(self, x: np.ndarray) -> np.ndarray:
        which = np.argmin(self._stack(x), axis=0)
        normals = np.stack([s.normal(x) for s in self.parts], axis=0)
        return np.take_along_axis(normals, which[None, ..., None], axis=0)[0]

    def bounds(self) -> Optional[Bounds]:
        bs = [s.bounds() for s in self.parts]
        if any(b is None for b in bs):
            return None
        arr = np.array(bs, dtype=float)
        return (arr[:, 0].min(), arr[:, 1].min(), arr[:, 2].max(), arr[:, 3].max())

    def min_feature(self) -> float:
        return min(s.min_feature() for s in self.parts)
