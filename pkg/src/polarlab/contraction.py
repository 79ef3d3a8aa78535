"""Homotopies on closed convex sets containing the origin, and the contraction
toward the unit ball that commutes with the polar map.

All homotopies take a time ``t`` in ``[0, 1]`` and start at the identity
(``t = 0``). The ball radius ``(1 - t)/t`` used by the truncating homotopies
shrinks from infinity to 0 as ``t`` runs over ``(0, 1]``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .bodies import GridBody, combine, minkowski_sum, nu, polar, tau_grid, truncate
from .errors import BadParameter
from .mean import DEFAULT_TOL, geometric_mean
from .metrics import attouch_wets, hausdorff, inclusion_gap, residual_distance, threshold_index
from .report import Report

GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0  # beyond this t, inflate_and_truncate is a ball


def _check_t(t, lo_open=False, hi_open=False):
    t = float(t)
    ok = (0 < t if lo_open else 0 <= t) and (t < 1 if hi_open else t <= 1)
    if not ok:
        raise BadParameter(f"t = {t} is outside the admissible interval")
    return t


def cap_radius(t: float) -> float:
    """``(1 - t)/t``, with ``inf`` at ``t = 0``."""
    return np.inf if t == 0 else (1.0 - t) / t


def _cap(A: GridBody, radius: float) -> GridBody:
    if radius == 0:
        return GridBody.origin(A.grid)
    if np.isinf(radius):
        return A
    return truncate(A, radius)


def truncation_homotopy(K: GridBody, t: float) -> GridBody:
    """``K ∩ ((1-t)/t) B``; the identity at ``t = 0`` and ``{0}`` at ``t = 1``."""
    return _cap(K, cap_radius(_check_t(t)))


def ball_addition(K: GridBody, t: float) -> GridBody:
    """``K + t B``."""
    t = _check_t(t)
    return K if t == 0 else minkowski_sum(K, GridBody.ball(K.grid, t))


def interior_homotopy(A: GridBody, t: float) -> GridBody:
    """``A ∩ ((1-t)/t) B + t B``; bounded with 0 interior for every ``t > 0``."""
    t = _check_t(t)
    if t == 0:
        return A
    return minkowski_sum(_cap(A, cap_radius(t)), GridBody.ball(A.grid, t))


def inflate_and_truncate(A: GridBody, t: float) -> GridBody:
    """``(A + t B) ∩ ((1-t)/t) B``.

    Contains ``t B`` for ``t < 1/2`` and equals ``((1-t)/t) B`` once ``t``
    reaches ``(sqrt(5) - 1)/2``.
    """
    t = _check_t(t)
    if t == 0:
        return A
    return _cap(minkowski_sum(A, GridBody.ball(A.grid, t)), cap_radius(t))


def radial_shrink(A: GridBody, t: float) -> GridBody:
    """Closed convex hull of ``t B`` and the segments ``[0, a / (1 + t|a|)]``, ``a in A``.

    The map ``s -> s/(1 + t s)`` is increasing, so the union of segments has
    radial function ``rho/(1 + t rho)`` (``1/t`` on recession directions);
    the grid hull of those points is then taken.
    """
    t = _check_t(t, lo_open=True, hi_open=True)
    rho = A.radial
    with np.errstate(invalid="ignore"):
        shrunk = np.where(np.isinf(rho), 1.0 / t, rho / (1.0 + t * rho))
    return GridBody.from_radial(A.grid, np.maximum(t, shrunk))


def equivariant_contraction(A: GridBody, t: float, tol: float = DEFAULT_TOL) -> GridBody:
    """Contraction of ``A`` to the unit ball that commutes with the polar map.

    ``t = 0`` returns ``A``, ``t = 1`` the unit ball, and otherwise the
    geometric mean of ``inflate_and_truncate(A, t)`` and the polar of
    ``inflate_and_truncate(A°, t)``. Both mean inputs are bounded with 0 in
    their interior for ``0 < t < 1``.
    """
    t = _check_t(t)
    if t == 0:
        return A
    if t == 1:
        return GridBody.ball(A.grid, 1.0)
    outer = inflate_and_truncate(A, t)
    inner = polar(inflate_and_truncate(polar(A), t))
    return geometric_mean(outer, inner, tol).final


def level_set_homotopy(A: GridBody, s: float) -> GridBody:
    """``(1 - s) A + s r B`` with ``r = nu(A)``; keeps the largest norm fixed at ``r``."""
    s = _check_t(s)
    r = nu(A)
    if np.isinf(r):
        raise BadParameter("level-set homotopy needs a bounded body")
    return combine(A, 1.0 - s, GridBody.ball(A.grid, r), s)


def aw_time_bound(eps: float) -> float:
    """Time ``eta`` below which the contraction stays within Attouch-Wets distance ``eps``.

    ``eta = 0.99 * min(1/2, eps/(eps+1), 1/(j+1), eps/j^2)`` where
    ``1/(j+1) < eps <= 1/j``; the factor 0.99 keeps ``t`` strictly inside.
    """
    j = threshold_index(eps)
    return 0.99 * min(0.5, eps / (eps + 1.0), 1.0 / (j + 1), eps / j**2)


def check_outer_bound(A: GridBody, t: float, tol: float = DEFAULT_TOL, slack: float | None = None) -> Report:
    """``contraction(A, t) ⊆ A + (t/(1-t)) B`` for ``0 < t < 1/2``."""
    t = float(t)
    if not 0 < t < 0.5:
        raise BadParameter("the outer bound is stated for 0 < t < 1/2")
    body = equivariant_contraction(A, t, tol)
    bound = minkowski_sum(A, GridBody.ball(A.grid, t / (1.0 - t)))
    slack = tau_grid(A, body) if slack is None else slack
    rep = Report("outer_bound", config={"t": t, "tol": tol})
    rep.add(f"outer_bound[t={t:g}]", "contraction(A,t) ⊆ A + t/(1-t) B", inclusion_gap(body, bound), slack)
    return rep


def check_aw_closeness(
    A: GridBody, eps: float, samples: int = 5, tol: float = DEFAULT_TOL, tol_aw: float = 0.0
) -> Report:
    """Attouch-Wets distance from ``A`` stays below ``eps`` for ``t`` in ``(0, eta)``.

    The times are ``eta * k / (samples + 1)`` for ``k = 1..samples``.
    """
    eta = aw_time_bound(eps)
    if int(samples) < 1:
        raise BadParameter("samples must be a positive integer")
    ts = [eta * k / (samples + 1) for k in range(1, samples + 1)]
    dists = [attouch_wets(equivariant_contraction(A, t, tol), A) for t in ts]
    rep = Report("aw_closeness", config={"eps": eps, "eta": eta, "samples": samples})
    rep.add(
        f"aw_closeness[eps={eps:.6g}]",
        "d_AW(contraction(A,t), A) < eps for t < eta",
        max(dists),
        eps + tol_aw,
        detail=f"eta={eta:.6g} worst_t={ts[int(np.argmax(dists))]:.6g}",
    )
    return rep


@dataclass
class HomotopyTrace:
    """Contraction evaluated along an increasing list of times."""

    t_values: list = field(default_factory=list)
    bodies: list = field(default_factory=list)
    residuals: list = field(default_factory=list)  # one dict per t

    def __post_init__(self):
        if any(b <= a for a, b in zip(self.t_values, self.t_values[1:])):
            raise ValueError("t values must be strictly increasing")

    def rows(self):
        return [(t, r["d_aw"], r["equivariance"]) for t, r in zip(self.t_values, self.residuals)]


def contraction_sweep(A: GridBody, t_values, tol: float = DEFAULT_TOL) -> HomotopyTrace:
    """Contraction of ``A`` and of ``A°`` along ``t_values`` with per-time residuals.

    ``d_aw`` is the Attouch-Wets distance to ``A``; ``equivariance`` is the
    distance between the polar of the contraction and the contraction of the
    polar (on truncations when unbounded).
    """
    ts = sorted(float(t) for t in t_values)
    trace = HomotopyTrace(ts)
    A_polar = polar(A)
    for t in ts:
        body = equivariant_contraction(A, t, tol)
        other = equivariant_contraction(A_polar, t, tol)
        trace.bodies.append(body)
        trace.residuals.append(
            {"d_aw": attouch_wets(body, A), "equivariance": residual_distance(polar(body), other)}
        )
    return trace


def contraction_suite(A: GridBody, tol: float = DEFAULT_TOL, label: str = "A", tau: float | None = None) -> Report:
    """All contraction checks for one body.

    ``tau`` defaults to the grid tolerance of ``A`` and ``A°``.
    """
    grid = A.grid
    ball = GridBody.ball(grid, 1.0)
    rep = Report(f"contraction[{label}]")
    tau = tau_grid(A, polar(A)) if tau is None else tau

    start = equivariant_contraction(A, 0.0)
    same = np.array_equal(start.support, A.support) and np.array_equal(start.radial, A.radial)
    rep.add("endpoint_start", "contraction(A,0) = A", 0.0 if same else np.inf, 0.0)
    rep.add("endpoint_end", "contraction(A,1) = B", hausdorff(equivariant_contraction(A, 1.0), ball), 0.0)

    trace = contraction_sweep(A, [0.1 * k for k in range(1, 10)], tol)
    worst = max(r["equivariance"] for r in trace.residuals)
    rep.add("equivariance", "contraction(A°,t) = contraction(A,t)°", worst, 20 * tau)

    plateau = 0.0
    for t in (0.62, 0.7, 0.8):
        body = inflate_and_truncate(A, t)
        plateau = max(plateau, hausdorff(body, GridBody.ball(grid, cap_radius(t))))
    rep.add("plateau", "inflate_and_truncate(A,t) = ((1-t)/t) B for t >= golden ratio", plateau, tau)

    incl = -np.inf
    for t in (0.1, 0.2, 0.3, 0.4, 0.45):
        incl = max(incl, inclusion_gap(radial_shrink(A, t), polar(inflate_and_truncate(polar(A), t))))
    rep.add("shrink_inclusion", "radial_shrink(A,t) ⊆ inflate_and_truncate(A°,t)°", incl, tau)

    for t in (0.1, 0.25, 0.4):
        rep.extend(check_outer_bound(A, t, tol, slack=tau))
    for eps in (1.0, 1.0 / 3.0, 0.6):
        rep.extend(check_aw_closeness(A, eps, 5, tol))
    if A.is_bounded:
        r = nu(A)
        dev = max(abs(nu(level_set_homotopy(A, s)) - r) for s in (0, 0.25, 0.5, 0.75, 1))
        rep.add("level_set", "nu((1-s)A + s nu(A) B) = nu(A)", dev, tau)
    return rep
