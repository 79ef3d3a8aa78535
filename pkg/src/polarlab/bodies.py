"""Closed convex sets containing the origin, sampled on a direction grid.

A :class:`GridBody` stores two arrays over the grid directions ``u_i``:

* ``support[i]`` -- the support value ``h(u_i) = sup_{a in A} <a, u_i>``;
* ``radial[i]``  -- the radial value ``rho(u_i) = sup{s >= 0 : s u_i in A}``.

Both live in ``[0, +inf]``; ``+inf`` encodes unboundedness. Every constructor
returns the *canonical* pair: ``radial`` is the radial function of the outer
polyhedron ``{x : <u_k, x> <= h_k}`` and ``support`` is the support of the hull
of the sampled boundary points ``rho_k u_k``. On canonical pairs the polar is
the exact swap ``(h, rho) -> (1/rho, 1/h)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import NonPositiveScale, SingularMap
from .grid import DirectionGrid, snap_noise as _snap

_SNAP = 1e-9


def _canonical_pair(grid: DirectionGrid, support: np.ndarray):
    radial = _snap(grid.radial_from_support(_snap(support)))
    tight = _snap(grid.support_from_radial(radial))
    return tight, radial


@dataclass(frozen=True, eq=False)
class GridBody:
    """A member of K_0^n at grid resolution. Immutable; build with the classmethods."""

    grid: DirectionGrid
    support: np.ndarray
    radial: np.ndarray
    exact: object = None
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        h = np.array(self.support, dtype=float)
        r = np.array(self.radial, dtype=float)
        n = self.grid.size
        if h.shape != (n,) or r.shape != (n,):
            raise ValueError(f"support and radial need shape ({n},)")
        if np.isnan(h).any() or np.isnan(r).any():
            raise ValueError("samples must not be NaN")
        if (h < 0).any() or (r < 0).any():
            raise ValueError("support and radial samples must be nonnegative (0 must belong to the set)")
        h.setflags(write=False)
        r.setflags(write=False)
        object.__setattr__(self, "support", h)
        object.__setattr__(self, "radial", r)

    # constructors -------------------------------------------------------

    @classmethod
    def from_support(cls, grid: DirectionGrid, support, exact=None) -> "GridBody":
        h = np.asarray(support, dtype=float)
        if h.shape != (grid.size,):
            raise ValueError(f"support needs shape ({grid.size},)")
        if np.isnan(h).any() or (h < 0).any():
            raise ValueError("support samples must be nonnegative")
        tight, radial = _canonical_pair(grid, h)
        return cls(grid, tight, radial, exact)

    @classmethod
    def from_radial(cls, grid: DirectionGrid, radial, exact=None) -> "GridBody":
        """Closed convex hull of ``{0}`` and the points ``rho_k u_k`` (rays where infinite)."""
        r = np.asarray(radial, dtype=float)
        if r.shape != (grid.size,) or np.isnan(r).any() or (r < 0).any():
            raise ValueError("radial samples must be nonnegative with one per direction")
        return cls.from_support(grid, grid.support_from_radial(r), exact)

    @classmethod
    def ball(cls, grid: DirectionGrid, r: float = 1.0) -> "GridBody":
        if not r >= 0:
            raise ValueError("ball radius must be nonnegative")
        full = np.full(grid.size, float(r))
        return cls(grid, full, full.copy())

    @classmethod
    def origin(cls, grid: DirectionGrid) -> "GridBody":
        return cls.ball(grid, 0.0)

    @classmethod
    def whole_space(cls, grid: DirectionGrid) -> "GridBody":
        return cls.ball(grid, np.inf)

    @classmethod
    def from_points(cls, grid: DirectionGrid, points, rays=None) -> "GridBody":
        """``conv({0} U points) + cone(rays)``."""
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        if pts.size == 0:
            pts = np.zeros((1, grid.dimension))
        h = np.maximum(0.0, (pts @ grid.directions.T).max(axis=0))
        if rays is not None and len(rays):
            rv = np.atleast_2d(np.asarray(rays, dtype=float))
            up = (rv @ grid.directions.T > 1e-12).any(axis=0)
            h = np.where(up, np.inf, h)
        return cls.from_support(grid, h)

    @classmethod
    def segment(cls, grid: DirectionGrid, to) -> "GridBody":
        return cls.from_points(grid, [to])

    @classmethod
    def from_halfspaces(cls, grid: DirectionGrid, normals, offsets) -> "GridBody":
        """``{x : <n_k, x> <= b_k}`` with every ``b_k >= 0``; exact on the radial side."""
        nrm = np.atleast_2d(np.asarray(normals, dtype=float))
        off = np.asarray(offsets, dtype=float).ravel()
        if nrm.shape[0] != off.size or nrm.shape[1] != grid.dimension:
            raise ValueError("normals and offsets do not match")
        if (off < 0).any():
            raise ValueError("offsets must be nonnegative so that 0 belongs to the set")
        proj = nrm @ grid.directions.T
        with np.errstate(divide="ignore", invalid="ignore"):
            q = np.where(proj > 1e-12, off[:, None] / np.where(proj > 1e-12, proj, 1.0), np.inf)
        return cls.from_radial(grid, q.min(axis=0))

    # queries -------------------------------------------------------------

    @property
    def dimension(self) -> int:
        return self.grid.dimension

    @property
    def is_bounded(self) -> bool:
        return bool(np.isfinite(self.support).all())

    @property
    def has_interior(self) -> bool:
        """0 is an interior point at grid resolution."""
        return bool((self.radial > 0).all())

    def boundary_points(self) -> np.ndarray:
        """Sampled boundary points ``rho_k u_k`` for finite radial samples."""
        ok = np.isfinite(self.radial)
        return self.radial[ok, None] * self.grid.directions[ok]


def _same_grid(*bodies: GridBody) -> DirectionGrid:
    grid = bodies[0].grid
    for b in bodies[1:]:
        if b.grid is not grid:
            raise ValueError("bodies live on different direction grids")
    return grid


def canonicalize(A: GridBody) -> GridBody:
    """Recompute the radial samples from the support samples (and tighten)."""
    return GridBody.from_support(A.grid, A.support, A.exact)


def polar(A: GridBody) -> GridBody:
    """Polar set ``{x : <a, x> <= 1 for all a in A}``.

    Support of the polar is ``1/rho`` and, for canonical input, its radial is
    ``1/h`` (the consistency rule evaluated on ``1/rho`` gives exactly that).
    Conventions ``1/0 = inf`` and ``1/inf = 0``.
    """
    with np.errstate(divide="ignore"):
        return GridBody(A.grid, 1.0 / A.radial, 1.0 / A.support)


def minkowski_sum(A: GridBody, B: GridBody) -> GridBody:
    grid = _same_grid(A, B)
    return GridBody.from_support(grid, A.support + B.support)


def intersect(A: GridBody, B: GridBody) -> GridBody:
    """Intersection of the outer polyhedra, re-tightened on the sampled boundary."""
    grid = _same_grid(A, B)
    return GridBody.from_support(grid, np.minimum(A.support, B.support))


def hull_union(A: GridBody, B: GridBody) -> GridBody:
    """Closed convex hull of ``A U B``."""
    grid = _same_grid(A, B)
    return GridBody.from_support(grid, np.maximum(A.support, B.support))


def scale(A: GridBody, r: float) -> GridBody:
    r = float(r)
    if not (r > 0 and np.isfinite(r)):
        raise NonPositiveScale(f"scale factor must be positive and finite, got {r}")
    return GridBody(A.grid, A.support * r, A.radial * r)


def combine(A: GridBody, a: float, B: GridBody, b: float) -> GridBody:
    """Minkowski combination ``a A + b B`` with ``a, b >= 0``."""
    grid = _same_grid(A, B)
    if a < 0 or b < 0:
        raise NonPositiveScale("combination weights must be nonnegative")

    def part(body, w):
        return np.zeros(grid.size) if w == 0 else body.support * w

    return GridBody.from_support(grid, part(A, a) + part(B, b))


def truncate(A: GridBody, r: float) -> GridBody:
    """``A`` intersected with the ball of radius ``r``; a no-op once ``nu(A) <= r``."""
    r = float(r)
    if not r > 0:
        raise NonPositiveScale(f"truncation radius must be positive, got {r}")
    if nu(A) <= r:
        return A
    key = ("truncate", r)
    hit = A._cache.get(key)
    if hit is None:
        hit = GridBody.from_support(A.grid, np.minimum(A.support, r))
        A._cache[key] = hit
    return hit


def nu(A: GridBody) -> float:
    """Largest norm of a point of ``A`` (``inf`` when unbounded)."""
    return float(A.radial.max())


def tau_grid(*bodies: GridBody, factor: float = 5.0, cap: float = 10.0) -> float:
    """Grid tolerance ``factor * (pi/N) * min(scale, cap)`` for the given bodies.

    The scale is the largest ``nu`` among the bodies, so comparisons involving
    an unbounded body use the capped scale.
    """
    grid = _same_grid(*bodies)
    size = max(nu(b) for b in bodies)
    return factor * (grid.step / 2.0) * min(size, cap)


class LinearMap:
    """Invertible ``n x n`` matrix with cached inverse, transpose and, when the
    matrix is symmetric, an ordered eigendecomposition ``T = U^T D U``.

    Eigenvalues are sorted in descending order and each eigenvector (row of
    ``U``) has its first nonzero component positive, which makes ``U`` unique
    for simple spectra.
    """

    POSITIVE_DEFINITE = "positive-definite"
    INDEFINITE = "indefinite-or-negative"
    NOT_SYMMETRIC = "not-symmetric"

    def __init__(self, matrix):
        m = np.array(matrix, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 2:
            raise ValueError("a linear map needs a square matrix of size at least 2")
        if not np.isfinite(m).all():
            raise SingularMap("matrix entries must be finite")
        n = m.shape[0]
        scale_ = np.linalg.norm(m, 2)
        det = np.linalg.det(m)
        if scale_ == 0 or abs(det) <= 1e-10 * scale_**n:
            raise SingularMap("matrix is singular")
        m.setflags(write=False)
        self.matrix = m
        self.inverse = np.linalg.inv(m)
        self.transpose = m.T.copy()
        self.eigvals = None
        self.U = None
        norm_inf = np.abs(m).sum(axis=1).max()
        if np.abs(m - m.T).max() <= 1e-12 * norm_inf:
            w, v = np.linalg.eigh(0.5 * (m + m.T))
            order = np.argsort(-w, kind="stable")
            w, v = w[order], v[:, order]
            for j in range(n):
                col = v[:, j]
                lead = col[np.flatnonzero(np.abs(col) > 1e-12)[0]]
                if lead < 0:
                    v[:, j] = -col
            self.eigvals = w
            self.U = v.T
            recon = self.U.T @ np.diag(w) @ self.U
            if np.abs(recon - m).max() > 1e-9 * norm_inf:
                raise ValueError("eigendecomposition failed to reproduce the matrix")
            self.classification = self.POSITIVE_DEFINITE if (w > 0).all() else self.INDEFINITE
        else:
            self.classification = self.NOT_SYMMETRIC

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    @property
    def is_orthogonal(self) -> bool:
        return bool(np.abs(self.transpose @ self.matrix - np.eye(self.dimension)).max() <= 1e-12)

    def __matmul__(self, other: "LinearMap") -> "LinearMap":
        return LinearMap(self.matrix @ other.matrix)

    def inv(self) -> "LinearMap":
        return LinearMap(self.inverse)

    def T(self) -> "LinearMap":
        return LinearMap(self.transpose)

    def __repr__(self):
        return f"LinearMap({self.matrix.tolist()!r})"

    @classmethod
    def rotation(cls, degrees: float) -> "LinearMap":
        a = np.radians(degrees)
        return cls([[np.cos(a), -np.sin(a)], [np.sin(a), np.cos(a)]])

    @classmethod
    def diag(cls, *entries) -> "LinearMap":
        return cls(np.diag(np.asarray(entries, dtype=float)))


def _as_map(T) -> LinearMap:
    return T if isinstance(T, LinearMap) else LinearMap(T)


def _planar_image_support(A: GridBody, w: np.ndarray) -> np.ndarray:
    # h_A at the (non-unit) vectors w, by homogeneous interpolation between the
    # two straddling grid directions; exact for the outer polygon of A.
    grid = A.grid
    n = grid.size
    step = grid.step
    norm = np.hypot(w[:, 0], w[:, 1])
    pos = np.mod(np.arctan2(w[:, 1], w[:, 0]), 2.0 * np.pi) / step
    near = np.rint(pos)
    on_grid = np.abs(pos - near) < _SNAP
    k = np.where(on_grid, near, np.floor(pos)).astype(np.int64) % n
    k1 = (k + 1) % n
    u0 = grid.directions[k]
    u1 = grid.directions[k1]
    den = np.sin(step)
    alpha = (w[:, 0] * u1[:, 1] - w[:, 1] * u1[:, 0]) / den
    beta = (u0[:, 0] * w[:, 1] - u0[:, 1] * w[:, 0]) / den
    alpha = np.where(on_grid, norm, alpha)
    beta = np.where(on_grid, 0.0, beta)
    tiny = 1e-12 * np.maximum(norm, 1.0)
    alpha = np.where(alpha > tiny, alpha, 0.0)
    beta = np.where(beta > tiny, beta, 0.0)
    h = A.support
    with np.errstate(invalid="ignore"):
        t0 = np.where(alpha > 0, alpha * h[k], 0.0)
        t1 = np.where(beta > 0, beta * h[k1], 0.0)
    return t0 + t1


def _direct_image(T: LinearMap, A: GridBody) -> GridBody:
    # rows are (T^T u_i)^T = u_i^T T
    w = A.grid.directions @ T.matrix
    if A.dimension == 2:
        h = _planar_image_support(A, w)
    else:
        norm = np.linalg.norm(w, axis=1)
        idx = A.grid.nearest(w / norm[:, None])
        h = norm * A.support[idx]
    return GridBody.from_support(A.grid, h)


def linear_image(T, A: GridBody) -> GridBody:
    """Image ``T(A)`` through ``h_{TA}(u) = h_A(T^T u)``.

    Planar grids interpolate the support function between the two grid
    directions straddling ``T^T u``; higher dimensions use the nearest grid
    direction (error of order ``|T| * nu(A) * grid.step``).

    An unbounded body with 0 in its interior is mapped through its bounded
    polar, ``T(A) = (T^{-T} A°)°``. Its finite support values sit on a thin
    set of normals that a linear map moves off the grid, which would
    otherwise turn, for example, the image of a half-plane into the plane.
    """
    T = _as_map(T)
    if T.dimension != A.dimension:
        raise SingularMap("map and body dimensions differ")
    if not A.is_bounded and A.has_interior:
        return polar(_direct_image(LinearMap(T.inverse.T), polar(A)))
    return _direct_image(T, A)
