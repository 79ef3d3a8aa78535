"""Property-suite runner: every invariant of every module as one report row."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .bodies import (
    GridBody,
    LinearMap,
    canonicalize,
    hull_union,
    intersect,
    linear_image,
    nu,
    polar,
    scale,
    tau_grid,
    truncate,
)
from .contraction import contraction_suite, interior_homotopy, truncation_homotopy
from .corpus import CROSS, DEFAULT_SEED, SQUARE, TRIANGLE, bounded, bounded_interior, default_corpus, random_polygon
from .dualities import (
    SymmetricDuality,
    adjoint_report,
    conjugation_check,
    fixed_body,
    fixed_family_report,
    fixed_point_search,
    involution_report,
    lorentz_cone,
    order_report,
    polar_preserving_check,
)
from .grid import make_grid
from .mean import DEFAULT_TOL, gamma_suite, geometric_mean
from .metrics import (
    attouch_wets,
    aw_threshold_check,
    hausdorff,
    hausdorff_truncated,
    inclusion_gap,
    residual_distance,
)
from .oracle import PointCloud, body_cloud, brute_hausdorff, brute_polar, polygon_cloud, scalar_ahm
from .polygon import Polytope2, polar_polytope
from .report import Report

POLAR_CALCULUS_TOL = 5e-3
EPS_GRID = (0.9, 0.5, 1.0 / 3.0, 0.2, 0.11)


@dataclass
class VerifyConfig:
    grid_n: int = 1440
    seed: int = DEFAULT_SEED
    tol_grid: float | None = None  # absolute override of the grid tolerance
    mean_tol: float = DEFAULT_TOL
    threshold_pairs: int = 200
    oracle_step: float = 0.01

    def echo(self):
        return {
            "grid_n": self.grid_n,
            "seed": self.seed,
            "tol_grid": "auto" if self.tol_grid is None else self.tol_grid,
            "mean_tol": self.mean_tol,
        }


@dataclass
class Scenario:
    """A named group of checks; rows keep the declaration order of scenarios."""

    name: str
    kind: str
    run: object  # callable(ctx) -> Report
    inputs: dict = field(default_factory=dict)
    seed: int = DEFAULT_SEED


class _Context:
    def __init__(self, corpus: dict, cfg: VerifyConfig):
        self.corpus = corpus
        self.cfg = cfg
        self.grid = next(iter(corpus.values())).grid

    def tau(self, *bodies) -> float:
        return self.cfg.tol_grid if self.cfg.tol_grid is not None else tau_grid(*bodies)

    @property
    def tau_override(self):
        return self.cfg.tol_grid


def ulp_distance(x: np.ndarray, y: np.ndarray) -> int:
    """Largest number of representable doubles between paired nonnegative entries."""
    a = np.ascontiguousarray(x, dtype=np.float64).view(np.int64)
    b = np.ascontiguousarray(y, dtype=np.float64).view(np.int64)
    return int(np.abs(a - b).max()) if a.size else 0


# -- bodies ----------------------------------------------------------------


def _bodies(ctx: _Context) -> Report:
    rep = Report("bodies")
    C = ctx.corpus
    for name, A in C.items():
        back = polar(polar(A))
        rep.add(f"bipolar_aw[{name}]", "A°° = A", attouch_wets(back, A), POLAR_CALCULUS_TOL)
        rep.add(f"bipolar_trunc[{name}]", "A°° = A", residual_distance(back, A), ctx.tau(A, back))
        again = canonicalize(A)
        twice = canonicalize(again).support
        fin = np.isfinite(again.support)
        same_inf = np.array_equal(fin, np.isfinite(twice))
        drift = float(np.abs(twice[fin] - again.support[fin]).max(initial=0.0)) if same_inf else np.inf
        rep.add(
            f"canonical_idempotent[{name}]",
            "canonicalize is idempotent",
            drift,
            1e-12 * max(1.0, float(again.support[fin].max(initial=0.0))),
        )

    # order reversal on every nested pair
    worst = -np.inf
    pairs = 0
    for (na, A), (nk, K) in ((a, k) for a in C.items() for k in C.items()):
        if na != nk and inclusion_gap(A, K) <= 0:
            pairs += 1
            worst = max(worst, inclusion_gap(polar(K), polar(A)))
    rep.add("order_reversal", "A ⊆ K gives K° ⊆ A°", max(worst, 0.0), POLAR_CALCULUS_TOL, f"{pairs} nested pairs")

    union_gap = inter_gap = 0.0
    for (na, A), (nk, K) in combinations(C.items(), 2):
        union_gap = max(union_gap, residual_distance(polar(hull_union(A, K)), intersect(polar(A), polar(K))))
        inter_gap = max(inter_gap, residual_distance(polar(intersect(A, K)), hull_union(polar(A), polar(K))))
    rep.add("polar_of_union", "(A ∨ K)° = A° ∩ K°", union_gap, POLAR_CALCULUS_TOL)
    rep.add("polar_of_intersection", "(A ∩ K)° = A° ∨ K°", inter_gap, POLAR_CALCULUS_TOL)

    ball = GridBody.ball(ctx.grid, 1.0)
    rep.add("ball_self_polar", "B° = B", hausdorff(polar(ball), ball), POLAR_CALCULUS_TOL)
    others = [residual_distance(polar(A), A) for A in C.values() if hausdorff(A, ball) > 0]
    if others:
        rep.add(
            "only_ball_self_polar",
            "A° = A only for A = B",
            ctx.tau(ball) - min(others),
            0.0,
            "residual is tau minus the smallest distance from A° to A",
        )
    origin, plane = GridBody.origin(ctx.grid), GridBody.whole_space(ctx.grid)
    exact = np.array_equal(polar(origin).support, plane.support) and np.array_equal(polar(plane).support, origin.support)
    rep.add("origin_plane_duality", "{0}° = R^n and (R^n)° = {0}", 0.0 if exact else np.inf, 0.0)

    dy = nd = 0
    for A in C.values():
        for r in (2.0, 0.5, 4.0, 0.125):
            lhs, rhs = polar(scale(A, r)), scale(polar(A), 1.0 / r)
            dy = max(dy, ulp_distance(lhs.support, rhs.support), ulp_distance(lhs.radial, rhs.radial))
        for r in (3.0, 0.3, 1.7, 7.1):
            lhs, rhs = polar(scale(A, r)), scale(polar(A), 1.0 / r)
            nd = max(nd, ulp_distance(lhs.support, rhs.support), ulp_distance(lhs.radial, rhs.radial))
    rep.add("scaling_exact", "(rA)° = r^-1 A° (dyadic r), in ulps", dy, 1)
    rep.add("scaling_rounding", "(rA)° = r^-1 A° (non-dyadic r), in ulps", nd, 5, "first-order bound of 5 roundings")
    rb = max(hausdorff(polar(GridBody.ball(ctx.grid, r)), GridBody.ball(ctx.grid, 1.0 / r)) for r in (0.5, 2.0, 3.0))
    rep.add("ball_scaling", "(rB)° = (1/r)B", rb, POLAR_CALCULUS_TOL)

    for name, verts in (("square", SQUARE), ("cross", CROSS), ("triangle", TRIANGLE),
                        ("random_polygon", random_polygon(ctx.cfg.seed).vertices)):
        P = Polytope2(verts)
        grid_polar = polar(P.to_grid(ctx.grid))
        exact = polar_polytope(P).to_grid(ctx.grid)
        rep.add(f"exact_polar[{name}]", "grid polar = exact polar", hausdorff(grid_polar, exact), ctx.tau(grid_polar, exact))

    T1, T2 = LinearMap.rotation(20.0), LinearMap.diag(2.0, 0.5)
    excess = -np.inf
    for A in C.values():
        a = linear_image(T2, linear_image(T1, A))
        b = linear_image(T2 @ T1, A)
        excess = max(excess, residual_distance(a, b) - 2 * ctx.tau(a, b))
    rep.add("image_composition", "T2(T1 A) = (T2 T1) A", excess, 0.0, "residual is excess over 2 tau")
    return rep


# -- metrics ---------------------------------------------------------------


def _metrics(ctx: _Context) -> Report:
    rep = Report("metrics")
    g = ctx.grid
    ball = GridBody.ball(g, 1.0)
    rep.add("aw_balls", "d_AW(2B, B) = 1/2", abs(attouch_wets(GridBody.ball(g, 2.0), ball) - 0.5), 1e-9)
    rep.add(
        "aw_origin_plane",
        "d_AW({0}, R^n) = 1",
        abs(attouch_wets(GridBody.origin(g), GridBody.whole_space(g)) - 1.0),
        1e-9,
    )

    names = list(ctx.corpus)
    bodies = list(ctx.corpus.values())
    n = len(bodies)
    D = np.zeros((n, n))
    sym = 0.0
    for i in range(n):
        for j in range(n):
            D[i, j] = attouch_wets(bodies[i], bodies[j])
    sym = float(np.abs(D - D.T).max())
    rep.add("aw_symmetry", "d(A,K) = d(K,A)", sym, 0.0)
    rep.add("aw_identity", "d(A,A) = 0", float(np.abs(np.diag(D)).max()), 0.0)
    tri = 0.0
    for k in range(n):
        slack = D[:, [k]] + D[[k], :] - D  # d(i,k) + d(k,j) - d(i,j)
        taus = np.array([[2 * ctx.tau(bodies[i], bodies[j]) for j in range(n)] for i in range(n)])
        tri = max(tri, float((-slack - taus).max()))
    rep.add("aw_triangle", "d(A,C) <= d(A,B) + d(B,C)", tri, 0.0, "residual is violation minus 2 tau")

    # truncating first at a larger radius leaves every term unchanged
    trunc = 0.0
    for (ia, A), (ib, B) in combinations(enumerate(bodies), 2):
        for j in range(1, 9):
            d1 = hausdorff_truncated(A, B, j)
            d2 = hausdorff_truncated(truncate(A, 8.0), truncate(B, 8.0), j)
            trunc = max(trunc, abs(d1 - d2))
    rep.add("truncation_invariance", "d(z, A) = d(z, A ∩ rB)", trunc, 1e-12)

    bnd = [(nm, b) for nm, b in ctx.corpus.items() if b.is_bounded]
    topo = 0.0
    for (_, A), (_, B) in combinations(bnd, 2):
        j0 = max(1, int(np.ceil(max(nu(A), nu(B)))))
        dh, da = hausdorff(A, B), attouch_wets(A, B)
        topo = max(topo, da - dh, min(1.0 / j0, dh) - da)
    rep.add("bounded_topology", "min(1/j0, d_H) <= d_AW <= d_H", topo, 1e-12)

    rng = np.random.default_rng(ctx.cfg.seed)
    disagree = 0
    total = 0
    for _ in range(ctx.cfg.threshold_pairs):
        i, j = rng.integers(0, n, 2)
        r1, r2 = rng.uniform(0.5, 2.0, 2)
        A, B = scale(bodies[i], r1), scale(bodies[j], r2)
        for eps in EPS_GRID:
            left, right = aw_threshold_check(A, B, eps)
            disagree += left != right
            total += 1
    rep.add("threshold_agreement", "d_AW < eps iff d_H(j-truncations) < eps", disagree, 0, f"{total} comparisons")
    return rep


# -- mean ------------------------------------------------------------------


def _mean(ctx: _Context) -> Report:
    rep = Report("mean")
    g = ctx.grid
    radii = (0.5, 1.0, 2.0, 3.0)
    err = iters = 0.0
    for r in radii:
        for s in radii:
            tr = geometric_mean(GridBody.ball(g, r), GridBody.ball(g, s), 1e-6)
            err = max(err, abs(nu(tr.final) - np.sqrt(r * s)))
            iters = max(iters, tr.iterations)
    rep.add("ball_radius", "g(rB, sB) = sqrt(rs) B", err, 1e-4)
    rep.add("ball_iterations", "converges within 60 iterations", iters, 60)

    adm = bounded_interior(ctx.corpus)
    names = list(adm)
    pairs = []
    for pick in (("square", "cross"), ("ellipse", "random_polygon"), ("half_ball", "square"), ("double_ball", "cross")):
        if all(p in adm for p in pick):
            pairs.append(pick)
    if not pairs and names:
        pairs = [(names[0], names[-1])]
    maps = (("rot30", LinearMap.rotation(30.0)), ("diag23", LinearMap.diag(2.0, 3.0)))
    for a, k in pairs:
        for mname, T in maps:
            sub = gamma_suite(adm[a], adm[k], T, ctx.cfg.mean_tol, tau=ctx.tau_override)
            rep.extend(sub, prefix=f"{a}|{k}|{mname}:")

    inter = 0.0
    mono = 0.0
    slow = 0
    for a, k in combinations(names, 2):
        A, K = adm[a], adm[k]
        tr = geometric_mean(A, K, ctx.cfg.mean_tol)
        tau = ctx.tau(A, K)
        inter = max(inter, tr.max_interleaving - tau)
        gaps = tr.gaps
        if gaps.size > 1:
            mono = max(mono, float((np.diff(gaps) - tau).max()))
        if max(nu(A), nu(K)) <= 4 and min(A.radial.min(), K.radial.min()) >= 0.25:
            slow = max(slow, tr.iterations)
    if len(names) >= 2:
        rep.add("interleaving", "H_m ⊆ A_m for m >= 1", max(inter, 0.0), 0.0, "residual is excess over tau")
        rep.add("gap_monotone", "gap(m+1) <= gap(m) + tau", max(mono, 0.0), 0.0)
        rep.add("corpus_iterations", "tol 1e-6 within 60 iterations", slow, 60)
    return rep


# -- contraction -----------------------------------------------------------


def _contraction(ctx: _Context) -> Report:
    rep = Report("contraction")
    for name, A in ctx.corpus.items():
        rep.extend(contraction_suite(A, ctx.cfg.mean_tol, name, tau=ctx.tau_override), prefix=f"{name}:")
        z = truncation_homotopy(A, 1.0)
        rep.add(f"{name}:truncation_end", "F(A,1) = {0}", float(z.support.max()), 0.0)
        worst = 0.0
        for t in (0.05, 0.3, 0.7, 1.0):
            b = interior_homotopy(A, t)
            ok = b.is_bounded and b.has_interior
            worst = max(worst, 0.0 if ok else 1.0)
        rep.add(f"{name}:interior_homotopy", "A ∩ ((1-t)/t)B + tB is bounded with interior", worst, 0.0)
    return rep


# -- dualities -------------------------------------------------------------


def _dualities(ctx: _Context) -> Report:
    rep = Report("dualities")
    g = ctx.grid
    C = ctx.corpus
    R = LinearMap.rotation(30.0).matrix
    pd = {"diag49": np.diag([4.0, 9.0]), "rotdiag25": R @ np.diag([2.0, 5.0]) @ R.T}
    indefinite = {"diag1m1": np.diag([1.0, -1.0]), "diag2m3": np.diag([2.0, -3.0]), "minus_id": -np.eye(2)}

    for tname, M in pd.items():
        d = SymmetricDuality(M)
        for name, A in bounded(C).items():
            rep.extend(conjugation_check(d, A, label=name, tau=ctx.tau_override), prefix=f"{tname}:")
    for tname, M in indefinite.items():
        d = SymmetricDuality(M)
        rep.extend(fixed_family_report(d, (0.1, 0.2, 0.3, 0.4), ctx.cfg.mean_tol, g, tname, ctx.tau_override),
                   prefix=f"{tname}:")

    # solutions of X° = -X
    fb = fixed_body(SymmetricDuality(-np.eye(2)), 0.25, ctx.cfg.mean_tol, g, ctx.tau_override)
    minus = linear_image(LinearMap(-np.eye(2)), fb.body)
    rep.add("antipodal_polar", "X° = -X has solutions", hausdorff(polar(fb.body), minus), fb.tolerance)

    nested = [
        (f"{a}⊆{k}", A, K)
        for (a, A) in C.items()
        for (k, K) in C.items()
        if a != k and inclusion_gap(A, K) <= 0
    ]
    for tname, M in {**pd, **indefinite}.items():
        d = SymmetricDuality(M)
        rep.extend(involution_report(d, C, tau=ctx.tau_override), prefix=f"{tname}:")
        rep.extend(order_report(d, nested, tau=ctx.tau_override), prefix=f"{tname}:")
        rep.extend(adjoint_report(d, C, tau=ctx.tau_override), prefix=f"{tname}:")

    d = SymmetricDuality(pd["diag49"])
    starts = [random_polygon(ctx.cfg.seed + k).to_grid(g) for k in range(20)]
    rep.extend(fixed_point_search(d, starts, ctx.cfg.mean_tol, tau=ctx.tau_override), prefix="diag49:")

    W = LinearMap.diag(1.0, -1.0)
    w2 = max(hausdorff(linear_image(W, linear_image(W, A)), A) if A.is_bounded
             else residual_distance(linear_image(W, linear_image(W, A)), A) for A in C.values())
    rep.add("reflection_involution", "W(W(A)) = A", w2, 1e-9)
    cone = lorentz_cone(g, 2)
    rep.add("cone_reflection", "W(A_j) = A_j°", hausdorff(linear_image(W, cone), polar(cone)), 0.0)

    rep.extend(polar_preserving_check(LinearMap.rotation(30.0), C, tau=ctx.tau_override), prefix="rot30:")
    stretch = polar_preserving_check(LinearMap.diag(2.0, 1.0), C, tau=ctx.tau_override)
    rep.add(
        "stretch_detected",
        "non-orthogonal U moves B",
        abs(stretch["fixes_ball"].residual - 1.0),
        1e-9,
        f"commutes_with_polar residual {stretch['commutes_with_polar'].residual:.3g}",
    )
    return rep


# -- oracle ----------------------------------------------------------------


def _oracle(ctx: _Context) -> Report:
    rep = Report("oracle")
    g = ctx.grid
    step = ctx.cfg.oracle_step
    for name, verts in (("square", SQUARE), ("triangle", TRIANGLE),
                        ("random_polygon", random_polygon(ctx.cfg.seed).vertices)):
        P = Polytope2(verts)
        bound = 1.05 * float(np.linalg.norm(polar_polytope(P).vertices, axis=1).max())
        brute = brute_polar(PointCloud(P.vertices), step, bound)
        grid_cloud = body_cloud(polar(P.to_grid(g)), step)
        rep.add(f"brute_polar[{name}]", "sup_a <a,x> <= 1 by lattice", brute_hausdorff(brute, grid_cloud), 3 * step)
    sq, cr = polygon_cloud(SQUARE, step), polygon_cloud(CROSS, step)
    oracle = brute_hausdorff(sq, cr)
    value = hausdorff(Polytope2(SQUARE).to_grid(g), Polytope2(CROSS).to_grid(g))
    rep.add("hausdorff_square_cross", "d_H by support = d_H by clouds", abs(oracle - value), 2 * step,
            f"oracle {oracle:.6f}")
    bip = brute_polar(brute_polar(sq, step, 2.0), step, 2.0)
    rep.add("brute_bipolar[square]", "A°° = A by lattice", brute_hausdorff(bip, sq), 3 * (step + step))
    worst = max(abs(scalar_ahm(r, s, 1e-12) ** 2 - r * s) for r, s in ((1, 1), (1, 4), (2, 3), (0.5, 3)))
    rep.add("scalar_mean", "AHM(r,s)^2 = rs", worst, 10 * 1e-12 * 10)
    return rep


SCENARIOS = (
    ("bodies", "polar", _bodies),
    ("metrics", "metrics", _metrics),
    ("mean", "mean", _mean),
    ("contraction", "contract", _contraction),
    ("dualities", "fixpoints", _dualities),
    ("oracle", "verify", _oracle),
)


def run_verify(corpus: dict | None = None, cfg: VerifyConfig | None = None, timestamp: bool = True,
               only=None) -> Report:
    """Run every property check and collect one row per check.

    ``corpus`` defaults to the twelve built-in bodies on a grid of
    ``cfg.grid_n`` directions; ``only`` restricts to named scenarios.
    """
    cfg = cfg or VerifyConfig()
    if corpus is None:
        corpus = default_corpus(make_grid(2, cfg.grid_n), cfg.seed)
    if not corpus:
        raise ValueError("the verification corpus is empty")
    ctx = _Context(corpus, cfg)
    start = time.perf_counter()
    scenarios = [Scenario(n, k, fn, {"corpus": list(corpus)}, cfg.seed) for n, k, fn in SCENARIOS]
    out = Report("verify", config={**cfg.echo(), "corpus": ",".join(corpus)})
    for sc in scenarios:
        if only and sc.name not in only:
            continue
        out.extend(sc.run(ctx), prefix=f"{sc.name}/")
    out.runtime_ms = round((time.perf_counter() - start) * 1000.0, 3) if timestamp else None
    return out
