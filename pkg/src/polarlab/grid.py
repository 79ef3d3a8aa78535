"""Direction grids carrying the support and radial samples of a body."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.stats import qmc

from . import _kernels

DEFAULT_SIZE_2D = 1440
DEFAULT_RANDOM_DIRECTIONS = 2048

_POSITIVE = 1e-12
_NOISE = 1e-12


def snap_noise(values: np.ndarray) -> np.ndarray:
    """Zero out entries below ``1e-12`` times the largest finite entry.

    Grid directions are not exact (``cos(pi/2)`` is about ``6e-17``), so true
    zeros of support-type sums come back as tiny positives; left alone they
    turn into huge finite reciprocals instead of infinities.
    """
    finite = values[np.isfinite(values)]
    top = finite.max() if finite.size else 0.0
    if top == 0.0:
        return values
    return np.where(values < _NOISE * top, 0.0, values)


@dataclass(frozen=True, eq=False)
class DirectionGrid:
    """Ordered set of unit vectors in R^n.

    For ``n == 2`` the directions are the ``N`` equally spaced angles
    ``2*pi*k/N``; for ``n >= 3`` they are the coordinate axes ``+-e_i`` together
    with seeded scrambled-Sobol points pushed onto the sphere.

    Use :func:`make_grid` rather than the constructor so that equal
    parameters share one instance (operations require identical grids).
    """

    dimension: int
    directions: np.ndarray
    seed: int = 0
    _tables: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        dirs = np.asarray(self.directions, dtype=float)
        if dirs.ndim != 2 or dirs.shape[1] != self.dimension:
            raise ValueError("directions must have shape (N, dimension)")
        if self.dimension < 2:
            raise ValueError("dimension must be at least 2")
        if dirs.shape[0] < 8:
            raise ValueError("a direction grid needs at least 8 directions")
        if np.max(np.abs(np.linalg.norm(dirs, axis=1) - 1.0)) > 1e-12:
            raise ValueError("directions must be unit vectors")
        dirs.setflags(write=False)
        object.__setattr__(self, "directions", dirs)

    @property
    def size(self) -> int:
        return self.directions.shape[0]

    @property
    def step(self) -> float:
        """Angular spacing; for n >= 3 the mean nearest-neighbour angle."""
        if self.dimension == 2:
            return 2.0 * np.pi / self.size
        if "step" not in self._tables:
            cos = self.directions @ self.directions.T
            np.fill_diagonal(cos, -1.0)
            self._tables["step"] = float(np.mean(np.arccos(np.clip(cos.max(axis=1), -1, 1))))
        return self._tables["step"]

    @property
    def angles(self) -> np.ndarray:
        if self.dimension != 2:
            raise ValueError("angles are only defined on planar grids")
        return 2.0 * np.pi * np.arange(self.size) / self.size

    def _neighbour_table(self):
        if "nbr" not in self._tables:
            cos = self.directions @ self.directions.T
            positive = cos > _POSITIVE
            width = int(positive.sum(axis=1).max())
            nbr = np.zeros((self.size, width), dtype=np.int64)
            vals = np.zeros((self.size, width))
            for i in range(self.size):
                k = np.flatnonzero(positive[i])
                nbr[i, : k.size] = k
                vals[i, : k.size] = cos[i, k]
            self._tables["nbr"] = (nbr, vals)
        return self._tables["nbr"]

    def support_from_radial(self, radial: np.ndarray) -> np.ndarray:
        """Support samples of the closed convex hull of ``{0}`` and ``rho_k u_k``.

        Infinite radial samples contribute the ray along ``u_k``.
        """
        radial = np.asarray(radial, dtype=float)
        if self.dimension == 2:
            at_inf = np.isinf(radial)
            r = np.where(at_inf, 0.0, radial)
            cos_t, sin_t = self.directions[:, 0], self.directions[:, 1]
            return snap_noise(_kernels.planar_support(r * cos_t, r * sin_t, at_inf, cos_t, sin_t))
        nbr, vals = self._neighbour_table()
        return _kernels.dense_support_from_radial(radial, nbr, vals)

    def radial_from_support(self, support: np.ndarray) -> np.ndarray:
        """Radial samples of the outer polyhedron ``{x : <u_k, x> <= h_k}``."""
        support = np.asarray(support, dtype=float)
        if self.dimension == 2:
            zero = support == 0.0
            with np.errstate(divide="ignore"):
                inv = np.where(zero, 0.0, 1.0 / np.where(zero, 1.0, support))
            cos_t, sin_t = self.directions[:, 0], self.directions[:, 1]
            s = snap_noise(_kernels.planar_support(inv * cos_t, inv * sin_t, zero, cos_t, sin_t))
            with np.errstate(divide="ignore"):
                return 1.0 / s
        nbr, vals = self._neighbour_table()
        return _kernels.dense_radial_from_support(support, nbr, vals)

    def nearest(self, vectors: np.ndarray) -> np.ndarray:
        """Index of the grid direction closest to each (nonzero) row."""
        v = np.atleast_2d(vectors)
        return np.argmax(v @ self.directions.T, axis=1)


def _sphere_directions(dimension: int, count: int, seed: int) -> np.ndarray:
    sampler = qmc.Sobol(d=dimension, scramble=True, seed=np.random.default_rng(seed))
    # 2**k Sobol points keep the balance properties; trim afterwards
    m = int(np.ceil(np.log2(max(count, 2))))
    u = sampler.random_base2(m)[:count]
    u = np.clip(u, 1e-12, 1 - 1e-12)
    from scipy.special import ndtri

    g = ndtri(u)
    g /= np.linalg.norm(g, axis=1, keepdims=True)
    axes = np.vstack([np.eye(dimension), -np.eye(dimension)])
    return np.vstack([axes, g])


@lru_cache(maxsize=None)
def make_grid(dimension: int = 2, size: int | None = None, seed: int = 0) -> DirectionGrid:
    """Shared grid instance.

    ``size`` is the number of directions for ``n == 2`` (default 1440) and the
    number of random directions added to the ``2n`` axes otherwise (default 2048).
    """
    if dimension == 2:
        n = DEFAULT_SIZE_2D if size is None else int(size)
        if n < 8:
            raise ValueError("a direction grid needs at least 8 directions")
        theta = 2.0 * np.pi * np.arange(n) / n
        return DirectionGrid(2, np.column_stack([np.cos(theta), np.sin(theta)]), seed)
    count = DEFAULT_RANDOM_DIRECTIONS if size is None else int(size)
    return DirectionGrid(dimension, _sphere_directions(dimension, count, seed), seed)
