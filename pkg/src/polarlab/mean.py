"""Geometric mean of convex bodies by the arithmetic / polar-harmonic iteration.

Starting from ``A_0 = A`` and ``H_0 = K`` the iteration is::

    A_{m+1} = (A_m + H_m) / 2
    H_{m+1} = ((A_m° + H_m°) / 2)°

From ``m = 1`` on, ``H_m ⊆ A_m`` and both sequences squeeze the mean, so the
support gap ``max |h_{A_m} - h_{H_m}|`` is a two-sided error bracket.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .bodies import GridBody, LinearMap, linear_image, minkowski_sum, polar, scale, tau_grid
from .errors import NoConvergence, NotInteriorBody
from .metrics import hausdorff, inclusion_gap
from .report import Report

DEFAULT_TOL = 1e-6
DEFAULT_MAX_ITER = 200


@dataclass
class MeanTrace:
    """Record of one geometric-mean run.

    ``iterates`` holds ``(m, gap_m)``; ``interleaving`` holds
    ``(m, max_i(h_{H_m} - h_{A_m}))`` for ``m >= 1`` (nonpositive when nested).
    ``iterations`` counts the gap evaluations, so ``g(A, A)`` takes one.
    """

    iterates: list = field(default_factory=list)
    final: GridBody | None = None
    inner: GridBody | None = None
    converged: bool = False
    iterations: int = 0
    interleaving: list = field(default_factory=list)

    @property
    def gaps(self) -> np.ndarray:
        return np.array([g for _, g in self.iterates])

    @property
    def max_interleaving(self) -> float:
        return max((v for _, v in self.interleaving), default=-np.inf)


def check_admissible(A: GridBody, name: str = "body"):
    if not A.is_bounded:
        raise NotInteriorBody(f"{name} is unbounded (some support sample is infinite)")
    if not A.has_interior:
        raise NotInteriorBody(f"{name} does not contain the origin in its interior (some radial sample is 0)")


def geometric_mean(
    A: GridBody,
    K: GridBody,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    raise_on_stall: bool = True,
) -> MeanTrace:
    """Geometric mean ``g(A, K)`` of two bounded bodies with 0 in their interior.

    Stops once the support gap is at most ``tol``. The returned ``final`` is the
    outer iterate ``A_m``. Raises :class:`NoConvergence` (carrying the trace)
    when ``max_iter`` iterations do not reach ``tol``, unless
    ``raise_on_stall`` is false.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    if int(max_iter) < 1:
        raise ValueError("max_iter must be a positive integer")
    check_admissible(A, "first input")
    check_admissible(K, "second input")
    trace = MeanTrace()
    a, hm = A, K
    for m in range(int(max_iter) + 1):
        gap = hausdorff(a, hm)
        trace.iterates.append((m, gap))
        if m >= 1:
            trace.interleaving.append((m, inclusion_gap(hm, a)))
        if gap <= tol:
            trace.converged = True
            break
        if m == max_iter:
            break
        a, hm = (
            scale(minkowski_sum(a, hm), 0.5),
            polar(scale(minkowski_sum(polar(a), polar(hm)), 0.5)),
        )
    trace.final, trace.inner = a, hm
    trace.iterations = len(trace.iterates)
    if not trace.converged and raise_on_stall:
        raise NoConvergence(f"gap {trace.iterates[-1][1]:.3e} > tol {tol:.1e} after {max_iter} iterations", trace)
    return trace


def mean_body(A: GridBody, K: GridBody, tol: float = DEFAULT_TOL) -> GridBody:
    return geometric_mean(A, K, tol).final


def gamma_suite(
    A: GridBody,
    K: GridBody,
    T: LinearMap,
    tol: float = DEFAULT_TOL,
    factor: float = 10.0,
    tau: float | None = None,
) -> Report:
    """Check the algebraic properties of the mean on ``(A, K)`` and the map ``T``.

    Each residual is compared with ``factor * tau`` where ``tau`` defaults to
    the grid tolerance of all bodies involved.

    * symmetry: ``g(A,K) = g(K,A)``
    * polarity: ``g(A°,K°) = g(A,K)°``
    * self-polar: ``g(A,A°) = B``
    * monotonicity: ``A ⊆ A'`` and ``K ⊆ K'`` give ``g(A,K) ⊆ g(A',K')``
    * stability: moving ``A`` by ``tau`` moves ``g`` by at most ``factor * tau``
    * linear equivariance: ``g(TA,TK) = T g(A,K)``
    """
    grid = A.grid
    ball = GridBody.ball(grid, 1.0)
    g = mean_body(A, K, tol)
    tA, tK = linear_image(T, A), linear_image(T, K)
    if tau is None:
        tau = tau_grid(A, K, polar(A), polar(K), tA, tK, g)
    lim = factor * tau
    rep = Report("gamma", config={"tol": tol, "tau_grid": tau})

    rep.add("symmetry", "g(A,K) = g(K,A)", hausdorff(g, mean_body(K, A, tol)), lim)
    rep.add(
        "polarity",
        "g(A°,K°) = g(A,K)°",
        hausdorff(mean_body(polar(A), polar(K), tol), polar(g)),
        lim,
    )
    rep.add("self_polar", "g(A,A°) = B", hausdorff(mean_body(A, polar(A), tol), ball), lim)

    # nested quadruple: shrink toward the inner balls and grow by a quarter ball
    grow = GridBody.ball(grid, 0.25)
    A_big, K_big = minkowski_sum(A, grow), minkowski_sum(K, grow)
    A_small, K_small = scale(A, 0.8), scale(K, 0.8)
    mono = max(
        inclusion_gap(mean_body(A, K, tol), mean_body(A_big, K_big, tol)),
        inclusion_gap(mean_body(A_small, K_small, tol), g),
        inclusion_gap(mean_body(A_small, K, tol), mean_body(A, K_big, tol)),
    )
    rep.add("monotonicity", "A⊆A', K⊆K' gives g(A,K)⊆g(A',K')", max(mono, 0.0), lim)

    bumped = minkowski_sum(A, GridBody.ball(grid, tau))
    rep.add("stability", "g continuous in its inputs", hausdorff(mean_body(bumped, K, tol), g), lim)

    rep.add("linear", "g(TA,TK) = T g(A,K)", hausdorff(mean_body(tA, tK, tol), linear_image(T, g)), lim)
    return rep
