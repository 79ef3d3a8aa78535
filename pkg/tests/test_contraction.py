import numpy as np
import pytest

from polarlab import GridBody, equivariant_contraction, hausdorff, inflate_and_truncate, nu, polar, tau_grid
from polarlab.contraction import (
    GOLDEN,
    aw_time_bound,
    ball_addition,
    cap_radius,
    check_aw_closeness,
    check_outer_bound,
    contraction_suite,
    contraction_sweep,
    interior_homotopy,
    level_set_homotopy,
    radial_shrink,
    truncation_homotopy,
)
from polarlab.errors import BadEpsilon, BadParameter
from polarlab.metrics import inclusion_gap, residual_distance


class TestHomotopies:
    def test_cap_radius(self):
        assert np.isinf(cap_radius(0.0))
        assert cap_radius(0.5) == 1.0
        assert cap_radius(1.0) == 0.0

    def test_truncation_endpoints(self, corpus):
        A = corpus["halfplane"]
        assert truncation_homotopy(A, 0.0) is A
        assert nu(truncation_homotopy(A, 1.0)) == 0.0
        assert nu(truncation_homotopy(A, 0.5)) <= 1.0 + 1e-12

    def test_ball_addition(self, corpus):
        assert hausdorff(ball_addition(corpus["ball"], 0.5), GridBody.ball(corpus["ball"].grid, 1.5)) <= 1e-12

    def test_interior_homotopy_regularizes(self, corpus):
        for A in (corpus["cone"], corpus["segment"], corpus["origin"]):
            B = interior_homotopy(A, 0.3)
            assert B.is_bounded and B.has_interior

    def test_out_of_range(self, corpus):
        with pytest.raises(BadParameter):
            truncation_homotopy(corpus["ball"], 1.5)

    def test_golden_plateau(self, corpus):
        for t in (GOLDEN + 1e-9, 0.7, 0.8):
            A = corpus["cone"]
            assert hausdorff(inflate_and_truncate(A, t), GridBody.ball(A.grid, cap_radius(t))) <= tau_grid(A)

    def test_radial_shrink(self, corpus):
        A = corpus["square"]
        for t in (0.1, 0.3):
            inner = radial_shrink(A, t)
            outer = polar(inflate_and_truncate(polar(A), t))
            assert inclusion_gap(inner, outer) <= tau_grid(A, polar(A))

    def test_level_set(self, corpus):
        A = corpus["random_polygon"]
        for s in (0.0, 0.5, 1.0):
            assert nu(level_set_homotopy(A, s)) == pytest.approx(nu(A), abs=1e-9)

    def test_level_set_needs_bounded(self, corpus):
        with pytest.raises(BadParameter):
            level_set_homotopy(corpus["cone"], 0.5)


class TestContraction:
    def test_endpoints(self, corpus):
        A = corpus["cross"]
        assert equivariant_contraction(A, 0.0) is A
        assert hausdorff(equivariant_contraction(A, 1.0), GridBody.ball(A.grid)) == 0.0

    @pytest.mark.parametrize("name", ["square", "cone", "halfplane", "segment", "origin", "plane"])
    def test_equivariance(self, corpus, name):
        A = corpus[name]
        for t in (0.2, 0.5, 0.8):
            lhs = polar(equivariant_contraction(A, t))
            rhs = equivariant_contraction(polar(A), t)
            assert residual_distance(lhs, rhs) <= 20 * tau_grid(A, polar(A))

    def test_ball_stays_fixed(self, corpus):
        B = corpus["ball"]
        for t in (0.25, 0.5):
            assert hausdorff(equivariant_contraction(B, t), B) <= tau_grid(B)

    def test_outer_bound(self, corpus):
        assert check_outer_bound(corpus["ellipse"], 0.25).passed

    def test_outer_bound_range(self, corpus):
        with pytest.raises(BadParameter):
            check_outer_bound(corpus["ellipse"], 0.6)

    def test_aw_closeness(self, corpus):
        assert check_aw_closeness(corpus["cone"], 1 / 3).passed

    @pytest.mark.parametrize("eps, eta", [(1.0, 0.495), (1 / 3, 0.99 / 27), (0.6, 0.99 * 0.375)])
    def test_time_bound(self, eps, eta):
        assert aw_time_bound(eps) == pytest.approx(eta, rel=1e-12)

    def test_time_bound_rejects(self):
        with pytest.raises(BadEpsilon):
            aw_time_bound(2.0)

    def test_sweep_rows(self, corpus):
        tr = contraction_sweep(corpus["square"], [0.0, 0.5, 1.0])
        rows = tr.rows()
        assert rows[0] == (0.0, 0.0, 0.0)
        assert len(rows) == 3

    def test_suite(self, corpus):
        rep = contraction_suite(corpus["halfplane"], label="halfplane")
        assert rep.passed, rep.failures()
