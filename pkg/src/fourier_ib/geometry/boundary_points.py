from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

import numpy as np

from fourier_ib.errors import GeometryError
from fourier_ib.geometry.body import ImmersedBody
from fourier_ib.geometry.shapes import Bounds
from fourier_ib.spectral.grid import Grid

log = logging.getLogger(__name__)

# Probe multipliers tried, in order, when a stencil reaches into solid.
PROBE_MULTIPLIERS = (1.0, 1.5, 2.0)
N_PERIMETER_PROBES = 32
WEIGHT_EPS = 1e-12
SNAP_EPS = 1e-9


def surface_tolerance(grid: Grid) -> float:
    return 1e-9 * grid.h


@dataclass(frozen=True)
class BilinearStencil:
    """Four-node bilinear interpolation stencils for m points.

    nodes: (m, 4, 2) integer (i, j), already wrapped into the grid.
    weights: (m, 4), each row sums to 1.
    """

    nodes: np.ndarray
    weights: np.ndarray

    def __len__(self) -> int:
        return int(self.weights.shape[0])

    def apply(self, values: np.ndarray) -> np.ndarray:
        return np.sum(values[self.nodes[..., 1], self.nodes[..., 0]] * self.weights, axis=-1)


def bilinear_stencil(points: np.ndarray, grid: Grid) -> BilinearStencil:
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    f = grid.fractional_index(pts)
    r = np.round(f)
    f = np.where(np.abs(f - r) < SNAP_EPS, r, f)
    base = np.floor(f).astype(int)
    t = f - base
    tx, ty = t[:, 0], t[:, 1]
    i0, j0 = base[:, 0], base[:, 1]
    nodes = np.stack(
        [
            np.stack([i0, j0], axis=-1),
            np.stack([i0 + 1, j0], axis=-1),
            np.stack([i0, j0 + 1], axis=-1),
            np.stack([i0 + 1, j0 + 1], axis=-1),
        ],
        axis=1,
    )
    nodes[..., 0] %= grid.n1
    nodes[..., 1] %= grid.n2
    weights = np.stack(
        [(1 - tx) * (1 - ty), tx * (1 - ty), (1 - tx) * ty, tx * ty],
        axis=-1,
    )
    return BilinearStencil(nodes=nodes, weights=weights)


def _empty_stencil() -> BilinearStencil:
    return BilinearStencil(nodes=np.zeros((0, 4, 2), dtype=int), weights=np.zeros((0, 4)))


@dataclass(frozen=True)
class ProbeSet:
    """Grid points inside a body with their normal probes into the fluid.

    `order` is the highest extrapolation order each point's probes support:
    2 if both probes are in fluid, 1 if only the first, 0 otherwise.
    """

    indices: np.ndarray  # (m, 2) int (i, j)
    points: np.ndarray  # (m, 2)
    normals: np.ndarray  # (m, 2)
    feet: np.ndarray  # (m, 2)
    delta1: np.ndarray  # (m,)
    delta2: np.ndarray
    delta3: np.ndarray
    stencil_I: BilinearStencil
    stencil_II: BilinearStencil
    order: np.ndarray  # (m,) int

    def __len__(self) -> int:
        return int(self.indices.shape[0])

    @property
    def depth(self) -> np.ndarray:
        return self.delta1


@dataclass(frozen=True)
class NumericalBoundary:
    """Gamma_N of one body at one time, plus the rest of its interior.

    `boundary` holds the numerical boundary points; `interior` the other body
    points shallow enough to receive an extended polynomial value; `deep`
    every remaining body point (indices only).
    """

    body: str
    time: float
    boundary: ProbeSet
    interior: ProbeSet
    deep: np.ndarray = field(default_factory=lambda: np.zeros((0, 2), dtype=int))

    @property
    def indices(self) -> np.ndarray:
        return self.boundary.indices

    @property
    def solid_indices(self) -> np.ndarray:
        return np.concatenate([self.boundary.indices, self.interior.indices, self.deep], axis=0)

    def __len__(self) -> int:
        return len(self.boundary)


def _combined_sdf(bodies: Sequence[ImmersedBody], x: np.ndarray, t: float) -> np.ndarray:
    return np.min(np.stack([b.signed_distance(x, t) for b in bodies], axis=0), axis=0)


def _stencil_in_fluid(
    st: BilinearStencil, grid: Grid, bodies: Sequence[ImmersedBody], t: float, tol: float
) -> np.ndarray:
    if len(st) == 0:
        return np.zeros(0, dtype=bool)
    node_x = np.stack(
        [grid.x1[st.nodes[..., 0]], grid.x2[st.nodes[..., 1]]],
        axis=-1,
    )
    phi = _combined_sdf(bodies, node_x, t)
    solid = (phi <= tol) & (st.weights > WEIGHT_EPS)
    return ~np.any(solid, axis=-1)


def _select(st: BilinearStencil, rows: np.ndarray, into: BilinearStencil) -> None:
    into.nodes[rows] = st.nodes[rows]
    into.weights[rows] = st.weights[rows]


def build_stencils(
    indices: np.ndarray,
    grid: Grid,
    body: ImmersedBody,
    t: float,
    *,
    obstacles: Sequence[ImmersedBody] = (),
    probe_spacing: Optional[float] = None,
) -> Tuple[ProbeSet, int]:
    """Attach normal probes and bilinear stencils to body points.

    Probes are tried at spacing h * (1, 1.5, 2); points whose probes all
    touch solid keep the best order found. Returns the probe set and the
    number of points left below second order.
    """
    indices = np.asarray(indices, dtype=int).reshape(-1, 2)
    m = indices.shape[0]
    h = probe_spacing if probe_spacing is not None else grid.h
    tol = surface_tolerance(grid)
    points = np.stack([grid.x1[indices[:, 0]], grid.x2[indices[:, 1]]], axis=-1) if m else np.zeros((0, 2))
    if m == 0:
        empty = np.zeros(0)
        return (
            ProbeSet(indices, points, points.copy(), points.copy(), empty, empty, empty,
                     _empty_stencil(), _empty_stencil(), np.zeros(0, dtype=int)),
            0,
        )

    normals = body.normal(points, t)
    delta1 = np.maximum(-body.signed_distance(points, t), 0.0)
    feet = points + delta1[:, None] * normals
    solids = [body, *obstacles]

    order = np.full(m, -1, dtype=int)
    d2 = np.full(m, h)
    st_I = bilinear_stencil(feet + h * normals, grid)
    st_II = bilinear_stencil(feet + 2.0 * h * normals, grid)
    chosen_I = BilinearStencil(st_I.nodes.copy(), st_I.weights.copy())
    chosen_II = BilinearStencil(st_II.nodes.copy(), st_II.weights.copy())
    first_ok = np.zeros(m, dtype=bool)

    for mult in PROBE_MULTIPLIERS:
        pending = order < 2
        if not pending.any():
            break
        step = mult * h
        sI = bilinear_stencil(feet + step * normals, grid)
        sII = bilinear_stencil(feet + 2.0 * step * normals, grid)
        okI = _stencil_in_fluid(sI, grid, solids, t, tol)
        okII = _stencil_in_fluid(sII, grid, solids, t, tol)
        full = pending & okI & okII
        rows = np.nonzero(full)[0]
        _select(sI, rows, chosen_I)
        _select(sII, rows, chosen_II)
        d2[rows] = step
        order[rows] = 2
        half = pending & ~full & okI & ~first_ok
        rows = np.nonzero(half)[0]
        _select(sI, rows, chosen_I)
        d2[rows] = step
        first_ok |= half

    order[(order < 2) & first_ok] = 1
    order[order < 0] = 0
    probes = ProbeSet(
        indices=indices,
        points=points,
        normals=normals,
        feet=feet,
        delta1=delta1,
        delta2=d2,
        delta3=d2.copy(),
        stencil_I=chosen_I,
        stencil_II=chosen_II,
        order=order,
    )
    return probes, int(np.count_nonzero(order < 2))


def _index_window(grid: Grid, bounds: Optional[Bounds], pad: int) -> Tuple[np.ndarray, np.ndarray]:
    if bounds is None:
        return np.arange(grid.n1), np.arange(grid.n2)
    f0 = grid.fractional_index(np.array(bounds[:2]))
    f1 = grid.fractional_index(np.array(bounds[2:]))
    i = np.arange(max(int(np.floor(f0[0])) - pad, 0), min(int(np.ceil(f1[0])) + pad, grid.n1 - 1) + 1)
    j = np.arange(max(int(np.floor(f0[1])) - pad, 0), min(int(np.ceil(f1[1])) + pad, grid.n2 - 1) + 1)
    return i, j


def _inside_box(bounds: Bounds, box: Bounds) -> bool:
    return bounds[0] >= box[0] and bounds[1] >= box[1] and bounds[2] <= box[2] and bounds[3] <= box[3]


def _confirm_boundary(
    body: ImmersedBody, x: np.ndarray, t: float, h: float, tol: float
) -> np.ndarray:
    # A point belongs to Gamma_N if some point of its closed h-disk lies outside.
    n = body.normal(x, t)
    hit = body.signed_distance(x + h * n, t) > tol
    for theta in np.linspace(0.0, 2.0 * np.pi, N_PERIMETER_PROBES, endpoint=False):
        if hit.all():
            break
        e = np.array([np.cos(theta), np.sin(theta)])
        hit |= body.signed_distance(x + h * e, t) > tol
    return hit


def identify_numerical_boundary(
    body: ImmersedBody,
    grid: Grid,
    t: float,
    *,
    n_p: int = 2,
    active_box: Optional[Bounds] = None,
    obstacles: Sequence[ImmersedBody] = (),
    probe_spacing: Optional[float] = None,
    extension_depth: Optional[float] = None,
) -> NumericalBoundary:
    """Classify the grid points of `body` at time t.

    Boundary points are body points (phi <= tol) whose closed disk of radius
    h = min(dx1, dx2) contains a fluid point. Interior points shallower than
    `extension_depth` (default 2 h) get probes too; the rest are `deep`.
    """
    h = grid.h
    tol = surface_tolerance(grid)
    depth_limit = extension_depth if extension_depth is not None else 2.0 * (probe_spacing or h)

    if body.shape.min_feature() < h:
        raise GeometryError(
            f"body {body.name!r}: smallest feature {body.shape.min_feature():.3g} is below one cell ({h:.3g})"
        )
    bounds = body.bounds(t)
    if bounds is not None:
        domain = (grid.origin1, grid.origin2, grid.origin1 + grid.l1 - grid.dx1, grid.origin2 + grid.l2 - grid.dx2)
        if not _inside_box(bounds, active_box or domain):
            raise GeometryError(f"body {body.name!r} at t={t:g} leaves the active region {active_box or domain}")

    ii, jj = _index_window(grid, bounds, pad=2)
    I, J = np.meshgrid(ii, jj)
    idx = np.stack([I.ravel(), J.ravel()], axis=-1)
    x = np.stack([grid.x1[idx[:, 0]], grid.x2[idx[:, 1]]], axis=-1)
    phi = body.signed_distance(x, t)

    solid = phi <= tol
    candidate = solid & (phi > -h - tol)
    on_boundary = np.zeros_like(solid)
    cand_rows = np.nonzero(candidate)[0]
    if cand_rows.size:
        on_boundary[cand_rows] = _confirm_boundary(body, x[cand_rows], t, h, tol)
    if not on_boundary.any():
        raise GeometryError(f"body {body.name!r} has no numerical boundary points on this grid")

    shallow = solid & ~on_boundary & (-phi <= depth_limit)
    deep = solid & ~on_boundary & ~shallow

    boundary, short_b = build_stencils(
        idx[on_boundary], grid, body, t, obstacles=obstacles, probe_spacing=probe_spacing
    )
    interior, _ = build_stencils(
        idx[shallow], grid, body, t, obstacles=obstacles, probe_spacing=probe_spacing
    )
    if n_p > 0:
        below = int(np.count_nonzero(boundary.order < n_p))
        if below:
            log.warning(
                "body %s: %d of %d boundary points cannot support order %d; downgraded",
                body.name, below, len(boundary), n_p,
            )
    log.debug(
        "body %s t=%g: %d boundary, %d shallow, %d deep points (%d below order 2)",
        body.name, t, len(boundary), len(interior), int(deep.sum()), short_b,
    )
    return NumericalBoundary(
        body=body.name, time=t, boundary=boundary, interior=interior, deep=idx[deep]
    )
