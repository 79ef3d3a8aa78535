"""Hausdorff and Attouch-Wets distances between grid bodies.

Every distance is computed from support samples. For compact convex sets the
Hausdorff distance is the sup-norm gap of the support functions; the
Attouch-Wets distance factors through truncations by the balls ``j B``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import floor

import numpy as np

from .bodies import GridBody, truncate
from .errors import BadEpsilon

# radius used when a residual must compare unbounded bodies
RESIDUAL_RADIUS = 10.0


@dataclass(frozen=True)
class MetricConfig:
    j_max: int = 64
    tol: float = 1e-12

    def __post_init__(self):
        if int(self.j_max) != self.j_max or self.j_max < 1:
            raise ValueError("j_max must be a positive integer")
        if not self.tol >= 0:
            raise ValueError("tol must be nonnegative")


@dataclass
class AWSweep:
    """Attouch-Wets value with the per-``j`` terms that produced it."""

    value: float
    terms: list = field(default_factory=list)  # (j, min(1/j, d_H at j))

    def to_dict(self):
        return {"d_aw": self.value, "sweep": [{"j": j, "term": t} for j, t in self.terms]}


def hausdorff(A: GridBody, B: GridBody) -> float:
    """``max_i |h_A(u_i) - h_B(u_i)|``; ``inf - inf`` on a shared direction counts as 0."""
    if A.grid is not B.grid:
        raise ValueError("bodies live on different direction grids")
    a, b = A.support, B.support
    both = np.isinf(a) & np.isinf(b)
    if (np.isinf(a) ^ np.isinf(b)).any():
        return float("inf")
    diff = np.abs(np.where(both, 0.0, a) - np.where(both, 0.0, b))
    return float(diff.max())


def hausdorff_truncated(A: GridBody, B: GridBody, j: float) -> float:
    """Hausdorff distance of ``A ∩ jB`` and ``B ∩ jB`` (always finite)."""
    if not j > 0:
        raise ValueError("truncation radius must be positive")
    return hausdorff(truncate(A, j), truncate(B, j))


def attouch_wets_sweep(A: GridBody, B: GridBody, cfg: MetricConfig | None = None) -> AWSweep:
    cfg = cfg or MetricConfig()
    best = 0.0
    terms = []
    for j in range(1, cfg.j_max + 1):
        if 1.0 / j <= best:
            break
        d = hausdorff_truncated(A, B, j)
        if d <= cfg.tol:
            d = 0.0
        term = min(1.0 / j, d)
        terms.append((j, term))
        best = max(best, term)
    return AWSweep(best, terms)


def attouch_wets(A: GridBody, B: GridBody, cfg: MetricConfig | None = None) -> float:
    """``sup_j min(1/j, d_H(A ∩ jB, B ∩ jB))``, a value in ``[0, 1]``."""
    return attouch_wets_sweep(A, B, cfg).value


def threshold_index(eps: float) -> int:
    """The integer ``j`` with ``1/(j+1) < eps <= 1/j``."""
    if not (0 < eps <= 1):
        raise BadEpsilon(f"eps must lie in (0, 1], got {eps}")
    j = floor(1.0 / eps)
    # guard against rounding in 1/eps
    while 1.0 / j < eps:
        j -= 1
    while 1.0 / (j + 1) >= eps:
        j += 1
    return j


def aw_threshold_check(A: GridBody, B: GridBody, eps: float, cfg: MetricConfig | None = None):
    """``(d_AW(A,B) < eps, d_H(A ∩ jB, B ∩ jB) < eps)`` with ``j`` from :func:`threshold_index`.

    The two booleans agree for every pair of closed convex sets.
    """
    j = threshold_index(eps)
    return attouch_wets(A, B, cfg) < eps, hausdorff_truncated(A, B, j) < eps


def residual_distance(A: GridBody, B: GridBody, radius: float = RESIDUAL_RADIUS) -> float:
    """Hausdorff distance when both bodies are bounded, else of their truncations at ``radius``."""
    if A.is_bounded and B.is_bounded:
        return hausdorff(A, B)
    return hausdorff_truncated(A, B, radius)


def inclusion_gap(inner: GridBody, outer: GridBody) -> float:
    """``max_i (h_inner - h_outer)``; nonpositive means ``inner ⊆ outer`` on the grid.

    Directions where the outer support is infinite impose no constraint, and
    an infinite inner support against a finite outer one gives ``inf``.
    """
    a, b = inner.support, outer.support
    free = np.isinf(b)
    if (np.isinf(a) & ~free).any():
        return float("inf")
    gap = np.where(free, -np.inf, a - np.where(free, 0.0, b))
    return float(gap.max())
