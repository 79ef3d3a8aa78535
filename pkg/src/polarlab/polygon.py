"""Exact planar polyhedra ``conv(vertices) + cone(rays)`` containing the origin."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np
from scipy.optimize import linprog

from .bodies import GridBody
from .errors import InvalidBody, NotInterior

EPS = 1e-12


def _angles(v):
    return np.mod(np.arctan2(v[:, 1], v[:, 0]), 2 * np.pi)


def _strict_hull(points: np.ndarray) -> np.ndarray:
    """CCW hull vertices without collinear points (monotone chain)."""
    pts = np.unique(np.round(points, 15), axis=0)
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= EPS:
            lower.pop()
        lower.append(p)
    for p in pts[::-1]:
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= EPS:
            upper.pop()
        upper.append(p)
    return np.array(lower[:-1] + upper[:-1])


def _max_gap(angles: np.ndarray) -> float:
    a = np.sort(angles)
    gaps = np.diff(np.concatenate([a, [a[0] + 2 * np.pi]]))
    return float(gaps.max())


@dataclass(frozen=True, eq=False)
class Polytope2:
    """Planar polyhedron ``conv(vertices) + cone(rays)`` with ``0`` in the set.

    Vertices are stored counterclockwise in strict convex position; rays are
    unit vectors sorted by angle.
    """

    vertices: np.ndarray
    rays: np.ndarray

    def __init__(self, vertices, rays=None):
        v = np.atleast_2d(np.asarray(vertices, dtype=float)).reshape(-1, 2)
        if len(v) == 0:
            v = np.zeros((1, 2))
        r = np.zeros((0, 2)) if rays is None else np.atleast_2d(np.asarray(rays, dtype=float)).reshape(-1, 2)
        if len(r):
            norms = np.linalg.norm(r, axis=1)
            if (norms <= EPS).any():
                raise InvalidBody("rays must be nonzero")
            r = r / norms[:, None]
            r = r[np.argsort(_angles(r), kind="stable")]
            keep = np.ones(len(r), bool)
            for i in range(1, len(r)):
                if np.abs(r[i] - r[i - 1]).max() < 1e-12:
                    keep[i] = False
            r = r[keep]
        hull = _strict_hull(v)
        object.__setattr__(self, "vertices", hull)
        object.__setattr__(self, "rays", r)
        if not self.contains(np.zeros((1, 2)))[0]:
            raise InvalidBody("the origin does not belong to the polygon")

    @property
    def is_cone(self) -> bool:
        return len(self.vertices) == 1 and np.abs(self.vertices[0]).max() <= EPS

    @property
    def is_bounded(self) -> bool:
        return len(self.rays) == 0

    def contains(self, points, tol: float = 1e-9) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        if self.is_bounded:
            v = self.vertices
            if len(v) == 1:
                return np.linalg.norm(pts - v[0], axis=1) <= tol
            if len(v) == 2:
                a, b = v
                d = b - a
                t = np.clip(((pts - a) @ d) / (d @ d), 0, 1)
                return np.linalg.norm(pts - (a + t[:, None] * d), axis=1) <= tol
            nxt = np.roll(v, -1, axis=0)
            e = nxt - v
            cr = e[None, :, 0] * (pts[:, None, 1] - v[None, :, 1]) - e[None, :, 1] * (pts[:, None, 0] - v[None, :, 0])
            return (cr >= -tol).all(axis=1)
        # general case: feasibility of  V^T lam + R^T mu = x, sum lam = 1, lam, mu >= 0
        out = np.empty(len(pts), bool)
        nv, nr = len(self.vertices), len(self.rays)
        a_eq = np.zeros((3, nv + nr))
        a_eq[:2, :nv] = self.vertices.T
        a_eq[:2, nv:] = self.rays.T
        a_eq[2, :nv] = 1.0
        for i, p in enumerate(pts):
            res = linprog(np.zeros(nv + nr), A_eq=a_eq, b_eq=[p[0], p[1], 1.0], bounds=(0, None), method="highs")
            out[i] = res.status == 0
        return out

    def support(self, directions) -> np.ndarray:
        d = np.atleast_2d(np.asarray(directions, dtype=float))
        h = np.maximum(0.0, (self.vertices @ d.T).max(axis=0))
        if len(self.rays):
            up = (self.rays @ d.T > EPS).any(axis=0)
            h = np.where(up, np.inf, h)
        return h

    def halfspaces(self):
        """``(normals, offsets)`` with ``self = {x : normals @ x <= offsets}`` (bounded, 0 interior)."""
        if not self.is_bounded or len(self.vertices) < 3:
            raise NotInterior("half-space form needs a bounded polygon with interior")
        v = self.vertices
        e = np.roll(v, -1, axis=0) - v
        normals = np.column_stack([e[:, 1], -e[:, 0]])
        normals /= np.linalg.norm(normals, axis=1, keepdims=True)
        return normals, np.einsum("ij,ij->i", normals, v)

    def to_grid(self, grid) -> GridBody:
        if grid.dimension != 2:
            raise ValueError("Polytope2 lives in the plane")
        return GridBody.from_support(grid, self.support(grid.directions), exact=self)


def _polar_cone(rays: np.ndarray) -> Polytope2:
    # polar of cone(rays) = {x : <r, x> <= 0 for all r}
    ang = _angles(rays)
    if len(ang) == 1:
        a = ang[0]
        gens = [a + np.pi / 2, a + np.pi, a + 3 * np.pi / 2]
    else:
        gap = _max_gap(ang)
        if gap < np.pi - 1e-12:
            return Polytope2(np.zeros((1, 2)))
        a_sorted = np.sort(ang)
        # the cone spans the complement of its largest gap: [start, end] counterclockwise
        gaps = np.diff(np.concatenate([a_sorted, [a_sorted[0] + 2 * np.pi]]))
        i = int(np.argmax(gaps))
        end = a_sorted[i]
        start = a_sorted[(i + 1) % len(a_sorted)]
        if abs(gap - np.pi) <= 1e-12:
            # half-plane: the polar is a single ray
            gens = [start - np.pi / 2]
        else:
            gens = [end + np.pi / 2, start - np.pi / 2]
    g = np.array([[np.cos(t), np.sin(t)] for t in gens])
    g[np.abs(g) < 1e-15] = 0.0
    return Polytope2(np.zeros((1, 2)), g)


def polar_polytope(A: Polytope2) -> Polytope2:
    """Exact polar of a planar polyhedron.

    Requires the origin to be interior (bounded polar) or ``A`` to be a cone
    (polar cone); otherwise raises :class:`NotInterior`.
    """
    if A.is_cone:
        if len(A.rays) == 0:
            raise NotInterior("the polar of {0} is the whole plane, which has no vertex form")
        return _polar_cone(A.rays)
    gens = np.vstack([A.vertices[np.linalg.norm(A.vertices, axis=1) > EPS], A.rays])
    if len(gens) < 3 or _max_gap(_angles(gens)) >= np.pi - 1e-12:
        raise NotInterior("the origin is not an interior point; use the grid engine")
    if A.is_bounded:
        v = A.vertices
        nxt = np.roll(v, -1, axis=0)
        out = []
        for a, b in zip(v, nxt):
            out.append(np.linalg.solve(np.vstack([a, b]), np.ones(2)))
        return Polytope2(np.array(out))
    # vertex enumeration of {x : <v, x> <= 1, <r, x> <= 0}
    rows = np.vstack([A.vertices, A.rays])
    rhs = np.concatenate([np.ones(len(A.vertices)), np.zeros(len(A.rays))])
    pts = []
    for i, j in combinations(range(len(rows)), 2):
        m = rows[[i, j]]
        if abs(np.linalg.det(m)) < 1e-12:
            continue
        x = np.linalg.solve(m, rhs[[i, j]])
        if (rows @ x <= rhs + 1e-9).all():
            pts.append(x)
    return Polytope2(np.array(pts))
