"""Brute-force references and the frozen values they produced.

The frozen numbers below were computed once by the oracle routines and are
also hand-checkable: the square [-1,1]^2 and the cross conv{±e1, ±e2} are at
Hausdorff distance 1/sqrt(2), the polar of conv{(2,0), (0,2), (-1,-1)} is
conv{(1/2,1/2), (-3/2,1/2), (1/2,-3/2)}, and the arithmetic-harmonic iteration
from (1, 4) passes through (5/2, 8/5) and (41/20, 80/41).
"""
import numpy as np
import pytest

from polarlab import GridBody, Polytope2, hausdorff, polar, polar_polytope
from polarlab.corpus import CROSS, SQUARE, TRIANGLE, random_polygon
from polarlab.errors import EmptyCloud, EmptySample
from polarlab.oracle import (
    PointCloud,
    body_cloud,
    brute_hausdorff,
    brute_polar,
    lattice,
    polygon_cloud,
    scalar_ahm,
)

FROZEN_DH_SQUARE_CROSS = 0.7071067811865476
FROZEN_TRIANGLE_POLAR = [[-1.5, 0.5], [0.5, -1.5], [0.5, 0.5]]
FROZEN_AHM_23 = 2.4494897427831788
FROZEN_RANDOM_POLYGON_42 = [
    [-0.582361369735852, 0.235333742995458],
    [-0.308592023512627, -0.898890646282416],
    [0.213947065744804, -1.410632831910324],
    [0.721334481330867, -0.887752205843659],
    [1.307275383490506, -0.201815156176631],
    [1.067401031159285, 0.717367713231916],
]


class TestFrozenValues:
    def test_square_cross_distance(self):
        d = brute_hausdorff(polygon_cloud(SQUARE, 0.01), polygon_cloud(CROSS, 0.01))
        assert d == pytest.approx(FROZEN_DH_SQUARE_CROSS, abs=1e-12)
        assert d == pytest.approx(1 / np.sqrt(2), abs=0.02)

    def test_triangle_polar_vertices(self):
        P = polar_polytope(Polytope2(TRIANGLE))
        np.testing.assert_allclose(P.vertices, FROZEN_TRIANGLE_POLAR, atol=1e-12)

    def test_ahm(self):
        assert scalar_ahm(2, 3) == pytest.approx(FROZEN_AHM_23, abs=1e-12)
        assert scalar_ahm(1, 4) == pytest.approx(2.0, abs=1e-12)

    def test_random_polygon_is_seeded(self):
        np.testing.assert_allclose(random_polygon(42).vertices, FROZEN_RANDOM_POLYGON_42, atol=1e-12)


class TestLattice:
    def test_within_bound(self):
        x = lattice(0.1, 1.0)
        assert np.linalg.norm(x, axis=1).max() <= 1.0 + 1e-12
        assert any(np.allclose(p, 0) for p in x)

    def test_count_grows_with_resolution(self):
        assert len(lattice(0.05, 1.0)) > 3 * len(lattice(0.1, 1.0))

    def test_three_dimensional(self):
        assert lattice(0.5, 1.0, 3).shape[1] == 3


class TestBrutePolar:
    def test_square_polar_is_cross(self):
        P = brute_polar(PointCloud(SQUARE), 0.02, 1.2)
        assert brute_hausdorff(P, polygon_cloud(CROSS, 0.02)) <= 0.06

    def test_empty_sample(self):
        with pytest.raises(EmptySample):
            brute_polar(PointCloud(np.zeros((0, 2)), 1.0))

    def test_discrete_bipolar(self):
        sq = polygon_cloud(SQUARE, 0.02)
        back = brute_polar(brute_polar(sq, 0.02, 2.0), 0.02, 2.0)
        assert brute_hausdorff(back, sq) <= 0.12

    @pytest.mark.parametrize("verts", [SQUARE, TRIANGLE, FROZEN_RANDOM_POLYGON_42])
    def test_grid_agrees(self, grid, verts):
        P = Polytope2(verts)
        bound = 1.05 * np.linalg.norm(polar_polytope(P).vertices, axis=1).max()
        brute = brute_polar(PointCloud(P.vertices), 0.01, bound)
        assert brute_hausdorff(brute, body_cloud(polar(P.to_grid(grid)), 0.01)) <= 0.03


class TestBruteHausdorff:
    def test_symmetric(self):
        a, b = polygon_cloud(SQUARE, 0.05), polygon_cloud(TRIANGLE, 0.05)
        assert brute_hausdorff(a, b) == brute_hausdorff(b, a)

    def test_empty(self):
        with pytest.raises(EmptyCloud):
            brute_hausdorff(PointCloud(np.zeros((0, 2)), 1.0), PointCloud(SQUARE))

    def test_grid_metric_matches(self, grid):
        d = hausdorff(Polytope2(SQUARE).to_grid(grid), Polytope2(CROSS).to_grid(grid))
        assert abs(d - FROZEN_DH_SQUARE_CROSS) <= 0.02


class TestCloud:
    def test_bound_enforced(self):
        with pytest.raises(ValueError):
            PointCloud([[2.0, 0.0]], bound=1.0)

    def test_body_cloud_needs_bound_when_unbounded(self, grid):
        with pytest.raises(ValueError):
            body_cloud(GridBody.whole_space(grid))

    def test_ahm_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            scalar_ahm(0.0, 1.0)
