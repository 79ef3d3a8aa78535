"""Brute-force reference computations, independent of the grid engine.

These are slow and meant for tests: a lattice-membership polar, a
nearest-neighbour Hausdorff distance between point clouds, and the scalar
arithmetic-harmonic iteration that the geometric mean reduces to on balls.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial import ConvexHull, cKDTree
from scipy.spatial import QhullError

from .bodies import GridBody
from .errors import EmptyCloud, EmptySample

_CHUNK = 1 << 15


@dataclass(frozen=True, eq=False)
class PointCloud:
    points: np.ndarray
    bound: float

    def __init__(self, points, bound=None):
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        norms = np.linalg.norm(pts, axis=1) if pts.size else np.zeros(0)
        b = float(norms.max()) if bound is None and pts.size else float(bound or 0.0)
        if pts.size and norms.max() > b * (1 + 1e-12) + 1e-12:
            raise ValueError("cloud points exceed the stated bound")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "bound", b)

    def __len__(self):
        return 0 if self.points.size == 0 else self.points.shape[0]


def lattice(step: float, bound: float, dimension: int = 2) -> np.ndarray:
    """Points of ``step * Z^n`` inside the closed ball of radius ``bound``."""
    k = int(np.floor(bound / step + 1e-9))
    axis = step * np.arange(-k, k + 1)
    mesh = np.stack(np.meshgrid(*([axis] * dimension), indexing="ij"), axis=-1).reshape(-1, dimension)
    return mesh[np.linalg.norm(mesh, axis=1) <= bound + 1e-12]


def _extreme_points(pts: np.ndarray) -> np.ndarray:
    try:
        hull = ConvexHull(pts)
        return pts[hull.vertices]
    except (QhullError, ValueError):
        return pts  # degenerate (flat) sample: keep everything


def _max_dot(x: np.ndarray, a: np.ndarray) -> np.ndarray:
    out = np.empty(len(x))
    for s in range(0, len(x), _CHUNK):
        out[s:s + _CHUNK] = (x[s:s + _CHUNK] @ a.T).max(axis=1)
    return out


def brute_polar(sample: PointCloud, lattice_step: float = 0.01, bound: float = 2.0) -> PointCloud:
    """Lattice points ``x`` with ``|x| <= bound`` and ``<a, x> <= 1`` for every sample point ``a``."""
    if len(sample) == 0:
        raise EmptySample("the polar of an empty sample is not defined here")
    pts = sample.points
    x = lattice(lattice_step, bound, pts.shape[1])
    a = _extreme_points(pts)
    return PointCloud(x[_max_dot(x, a) <= 1.0 + 1e-12], bound)


def brute_hausdorff(P: PointCloud, Q: PointCloud) -> float:
    """Two-sided max-min distance between finite clouds (exact nearest neighbours)."""
    if len(P) == 0 or len(Q) == 0:
        raise EmptyCloud("Hausdorff distance needs two nonempty clouds")
    d_pq, _ = cKDTree(Q.points).query(P.points)
    d_qp, _ = cKDTree(P.points).query(Q.points)
    return float(max(d_pq.max(), d_qp.max()))


def scalar_ahm(r: float, s: float, tol: float = 1e-12, max_iter: int = 200) -> float:
    """Arithmetic-harmonic mean iteration ``(a, h) -> ((a+h)/2, 2/(1/a + 1/h))``; limit ``sqrt(r s)``."""
    if not (r > 0 and s > 0 and tol > 0):
        raise ValueError("r, s and tol must be positive")
    a, h = float(r), float(s)
    for _ in range(max_iter):
        if abs(a - h) <= tol:
            break
        a, h = 0.5 * (a + h), 2.0 / (1.0 / a + 1.0 / h)
    return a


def _boundary(vertices: np.ndarray, spacing: float) -> np.ndarray:
    v = np.asarray(vertices, dtype=float)
    if len(v) == 1:
        return v
    closed = np.vstack([v, v[:1]]) if len(v) > 2 else v
    out = []
    for a, b in zip(closed[:-1], closed[1:]):
        k = max(1, int(np.ceil(np.linalg.norm(b - a) / spacing)))
        s = np.arange(k)[:, None] / k
        out.append(a + s * (b - a))
    out.append(closed[-1:])
    return np.vstack(out)


def polygon_cloud(vertices, spacing: float = 0.01) -> PointCloud:
    """Lattice points of a convex polygon (vertices counterclockwise) plus its sampled boundary."""
    v = np.asarray(vertices, dtype=float)
    bound = float(np.linalg.norm(v, axis=1).max())
    x = lattice(spacing, bound, 2)
    if len(v) >= 3:
        e = np.roll(v, -1, axis=0) - v
        cr = e[None, :, 0] * (x[:, None, 1] - v[None, :, 1]) - e[None, :, 1] * (x[:, None, 0] - v[None, :, 0])
        x = x[(cr >= -1e-12).all(axis=1)]
    else:
        x = np.zeros((0, 2))
    return PointCloud(np.vstack([x, _boundary(v, spacing)]), bound)


def body_cloud(A: GridBody, spacing: float = 0.01, bound: float | None = None) -> PointCloud:
    """Lattice points of the outer polyhedron of a planar grid body, plus boundary samples.

    Unbounded bodies need ``bound``; points beyond it are dropped.
    """
    if A.dimension != 2:
        raise ValueError("body clouds are planar")
    if bound is None:
        if not A.is_bounded:
            raise ValueError("an unbounded body needs an explicit bound")
        bound = float(A.radial.max())
    x = lattice(spacing, bound, 2)
    dirs = A.grid.directions
    h = A.support
    fin = np.isfinite(h)
    keep = np.ones(len(x), bool)
    for s in range(0, len(x), _CHUNK):
        blk = x[s:s + _CHUNK] @ dirs[fin].T
        keep[s:s + _CHUNK] = (blk <= h[fin] + 1e-12).all(axis=1)
    edge = A.boundary_points()
    edge = edge[np.linalg.norm(edge, axis=1) <= bound + 1e-12]
    return PointCloud(np.vstack([x[keep], edge, np.zeros((1, 2))]), bound)
