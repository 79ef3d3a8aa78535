"""Order-reversing involutions ``f(A) = T(A°)`` for symmetric invertible ``T``.

A positive-definite ``T`` factors as ``L L^T``, which makes ``f`` conjugate
to the polar map, so its only fixed body is ``L B``. Any negative eigenvalue instead yields an
infinite family of fixed bodies, built here from a Lorentz cone.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .bodies import GridBody, LinearMap, linear_image, polar, tau_grid
from .contraction import inflate_and_truncate
from .errors import BadIndex, BadParameter, NotPositiveDefinite, PositiveDefinite
from .grid import DirectionGrid
from .mean import DEFAULT_TOL, geometric_mean
from .metrics import hausdorff, inclusion_gap, residual_distance
from .polygon import Polytope2
from .report import Report


class SymmetricDuality:
    """The involution ``A -> T(A°)`` with ``T = U^T D U`` (eigenvalues descending).

    Derived diagonal factors: ``S = sqrt|D|``, ``W = sign(D)`` (so
    ``D = S W S``) and, when ``T`` is positive definite, ``R = sqrt(D)`` and
    the square-root factor ``root = U^T R`` with ``root root^T = T``.
    """

    def __init__(self, T):
        T = T if isinstance(T, LinearMap) else LinearMap(T)
        if T.classification == LinearMap.NOT_SYMMETRIC:
            raise BadParameter("a duality needs a symmetric matrix")
        self.T = T
        self.U = T.U
        self.D = T.eigvals
        self.classification = T.classification
        self.S = np.diag(np.sqrt(np.abs(self.D)))
        self.W = np.diag(np.sign(self.D))
        self.positive_definite = self.classification == LinearMap.POSITIVE_DEFINITE
        self.R = np.diag(np.sqrt(self.D)) if self.positive_definite else None
        self.root = LinearMap(self.U.T @ self.R) if self.positive_definite else None
        self._adjoint = LinearMap(np.linalg.inv(T.transpose))

    @property
    def dimension(self) -> int:
        return self.T.dimension

    @property
    def negative_index(self) -> int:
        """0-based position of the first negative eigenvalue."""
        neg = np.flatnonzero(self.D < 0)
        if neg.size == 0:
            raise PositiveDefinite("a positive-definite duality has a single fixed body")
        return int(neg[0])

    def __call__(self, A: GridBody) -> GridBody:
        return dual_map(self, A)


def dual_map(d: SymmetricDuality, A: GridBody) -> GridBody:
    """``T(A°)``."""
    return linear_image(d.T, polar(A))


def dual_map_adjoint(d: SymmetricDuality, A: GridBody) -> GridBody:
    """``[(T^T)^{-1} A]°``, equal to ``T(A°)``; used as an independent path."""
    return polar(linear_image(d._adjoint, A))


def conjugation_check(d: SymmetricDuality, A: GridBody, factor: float = 20.0, label: str = "A",
                      tau: float | None = None) -> Report:
    """``T(A°) = L (L^-1 A)°`` for positive-definite ``T = L L^T`` (``L = d.root``)."""
    if not d.positive_definite:
        raise NotPositiveDefinite("conjugation to the polar map needs a positive-definite matrix")
    lhs = dual_map(d, A)
    rhs = linear_image(d.root, polar(linear_image(d.root.inv(), A)))
    tau = tau_grid(A, lhs, rhs) if tau is None else tau
    rep = Report("conjugation")
    rep.add(f"conjugation[{label}]", "f = L ∘ polar ∘ L^-1", residual_distance(lhs, rhs), factor * tau)
    return rep


def lorentz_cone(grid: DirectionGrid, j: int) -> GridBody:
    """``{a : a_j >= sqrt(sum_{i != j} a_i^2)}`` for a 1-based axis ``j``."""
    n = grid.dimension
    if int(j) != j or not 1 <= j <= n:
        raise BadIndex(f"axis index must be in 1..{n}, got {j}")
    j = int(j)
    if n == 2:
        return lorentz_cone_exact(j).to_grid(grid)
    inside = grid.directions[:, j - 1] >= np.sqrt(0.5) - 1e-12
    return GridBody.from_radial(grid, np.where(inside, np.inf, 0.0))


def lorentz_cone_exact(j: int) -> Polytope2:
    """Planar Lorentz cone as an exact :class:`Polytope2`."""
    if j not in (1, 2):
        raise BadIndex("planar axis index must be 1 or 2")
    rays = np.zeros((2, 2))
    rays[:, j - 1] = 1.0
    rays[0, 2 - j] = 1.0
    rays[1, 2 - j] = -1.0
    return Polytope2(np.zeros((1, 2)), rays)


@dataclass
class FixedBody:
    """A fixed body ``Y_t = U^T S P_t`` of an indefinite duality with its certificates."""

    t: float
    body: GridBody
    symmetric_body: GridBody  # P_t, which satisfies W(P_t) = P_t°
    residual_polar_W: float
    residual_fixed: float
    tolerance: float
    iterations: int = 0
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.residual_polar_W <= self.tolerance and self.residual_fixed <= self.tolerance


def fixed_body(d: SymmetricDuality, t: float, tol: float = DEFAULT_TOL, grid: DirectionGrid | None = None,
               tau: float | None = None) -> FixedBody:
    """Fixed body of ``f(A) = T(A°)`` indexed by ``t in (0, 1)`` for indefinite ``T``.

    With ``j`` the first negative eigen-axis and ``C`` the Lorentz cone around
    it, the geometric mean ``P_t`` of ``inflate_and_truncate(C, t)`` and the
    polar of ``inflate_and_truncate(C°, t)`` satisfies ``W(P_t) = P_t°``;
    the returned body is ``U^T S P_t``.
    """
    if d.positive_definite:
        raise PositiveDefinite("a positive-definite duality has a single fixed body; use conjugation_check")
    t = float(t)
    if not 0 < t < 1:
        raise BadParameter("t must lie in (0, 1)")
    if grid is None:
        from .grid import make_grid

        grid = make_grid(d.dimension)
    cone = lorentz_cone(grid, d.negative_index + 1)
    outer = inflate_and_truncate(cone, t)
    inner = polar(inflate_and_truncate(polar(cone), t))
    trace = geometric_mean(outer, inner, tol)
    P = trace.final
    Y = linear_image(LinearMap(d.U.T @ d.S), P)
    fY = dual_map(d, Y)
    WP = linear_image(LinearMap(d.W), P)
    tau = tau_grid(Y, fY, P, WP) if tau is None else tau
    lim = 50.0 * tau + 10.0 * tol
    return FixedBody(
        t, Y, P, hausdorff(polar(P), WP), hausdorff(fY, Y), lim, trace.iterations,
        {"tau_grid": tau},
    )


def fixed_family_report(d: SymmetricDuality, t_values=(0.1, 0.2, 0.3, 0.4), tol: float = DEFAULT_TOL, grid=None,
                        label: str = "T", tau: float | None = None) -> Report:
    """Certificates for each ``t`` plus pairwise separation of the bodies."""
    rep = Report(f"fixed_family[{label}]")
    members = [fixed_body(d, t, tol, grid, tau) for t in t_values]
    for m in members:
        rep.add(f"symmetric_core[t={m.t:g}]", "W(P_t) = P_t°", m.residual_polar_W, m.tolerance)
        rep.add(f"fixed[t={m.t:g}]", "f(Y_t) = Y_t", m.residual_fixed, m.tolerance)
    if len(members) > 1:
        # residual is the worst shortfall of a pairwise distance below 10 tau of that pair
        short = [
            10.0 * (tau_grid(a.body, b.body) if tau is None else tau) - hausdorff(a.body, b.body)
            for i, a in enumerate(members)
            for b in members[i + 1:]
        ]
        rep.add("distinct", "fixed bodies differ pairwise", max(short), 0.0)
    return rep


def involution_report(d: SymmetricDuality, corpus: dict, factor: float = 40.0, tau: float | None = None) -> Report:
    """``f(f(A)) = A`` on every body, within ``factor * tau``."""
    rep = Report("involution")
    for name, A in corpus.items():
        back = dual_map(d, dual_map(d, A))
        t_ = tau_grid(A, back) if tau is None else tau
        rep.add(f"involution[{name}]", "f(f(A)) = A", residual_distance(back, A), factor * t_)
    return rep


def order_report(d: SymmetricDuality, pairs, factor: float = 1.0, tau: float | None = None) -> Report:
    """``A ⊆ K`` gives ``f(K) ⊆ f(A)`` for each ``(name, A, K)`` with ``h_A <= h_K``."""
    rep = Report("order")
    for name, A, K in pairs:
        fA, fK = dual_map(d, A), dual_map(d, K)
        t_ = tau_grid(fA, fK) if tau is None else tau
        rep.add(f"order[{name}]", "A ⊆ K gives f(K) ⊆ f(A)", inclusion_gap(fK, fA), factor * t_)
    return rep


def adjoint_report(d: SymmetricDuality, corpus: dict, factor: float = 2.0, tau: float | None = None) -> Report:
    """The two evaluation paths of ``f`` agree within ``factor * tau``."""
    rep = Report("adjoint")
    for name, A in corpus.items():
        a, b = dual_map(d, A), dual_map_adjoint(d, A)
        t_ = tau_grid(a, b) if tau is None else tau
        rep.add(f"adjoint[{name}]", "T(A°) = [(T^T)^-1 A]°", residual_distance(a, b), factor * t_)
    return rep


def polar_preserving_check(U, corpus: dict, factor: float = 20.0, tau: float | None = None) -> Report:
    """Does ``U`` commute with the polar map on the corpus?

    Orthogonal maps pass; for other maps the report records the violation,
    including how far ``U B`` is from ``B``.
    """
    U = U if isinstance(U, LinearMap) else LinearMap(U)
    grid = next(iter(corpus.values())).grid
    ball = GridBody.ball(grid, 1.0)
    worst, auto = 0.0, 0.0
    for A in corpus.values():
        lhs = linear_image(U, polar(A))
        rhs = polar(linear_image(U, A))
        worst = max(worst, residual_distance(lhs, rhs))
        auto = max(auto, tau_grid(A, lhs, rhs))
    tau = auto if tau is None else tau
    rep = Report("polar_preserving", config={"orthogonal": U.is_orthogonal})
    rep.add("commutes_with_polar", "U(A°) = (U A)°", worst, factor * tau)
    rep.add("fixes_ball", "U B = B", hausdorff(linear_image(U, ball), ball), tau)
    return rep


def symmetrize(d: SymmetricDuality, X: GridBody, tol: float = DEFAULT_TOL) -> GridBody:
    """``g(X, f(X))``; every output is a fixed body of ``f`` and fixed bodies are kept."""
    return geometric_mean(X, dual_map(d, X), tol).final


def fixed_point_search(d: SymmetricDuality, starts, tol: float = DEFAULT_TOL, factor: float = 50.0,
                       tau: float | None = None) -> Report:
    """Symmetrize each start and report fixedness and the spread of the results.

    For positive-definite ``T`` every result should be ``L B`` with ``L = d.root``; the
    ``distance_to_Psi_ball`` row records the worst deviation.
    """
    rep = Report("fixed_point_search")
    results = [symmetrize(d, X, tol) for X in starts]
    worst_fixed = max(hausdorff(dual_map(d, Y), Y) for Y in results)
    if tau is None:
        tau = max(tau_grid(Y, dual_map(d, Y)) for Y in results)
    lim = factor * tau + 10.0 * tol
    rep.add("search_fixed", "f(g(X, f(X))) = g(X, f(X))", worst_fixed, lim)
    if d.positive_definite:
        target = linear_image(d.root, GridBody.ball(results[0].grid, 1.0))
        rep.add("unique_fixed", "fixed body is L B", max(hausdorff(Y, target) for Y in results), lim)
    rep.config["starts"] = len(results)
    return rep
