import numpy as np
import pytest

from polarlab import GridBody, Polytope2, attouch_wets, hausdorff, scale
from polarlab.corpus import CROSS, SQUARE
from polarlab.errors import BadEpsilon
from polarlab.metrics import (
    MetricConfig,
    attouch_wets_sweep,
    aw_threshold_check,
    hausdorff_truncated,
    inclusion_gap,
    residual_distance,
    threshold_index,
)


class TestHausdorff:
    def test_balls(self, grid):
        assert hausdorff(GridBody.ball(grid, 2.0), GridBody.ball(grid, 0.5)) == pytest.approx(1.5)

    def test_square_cross(self, grid):
        d = hausdorff(Polytope2(SQUARE).to_grid(grid), Polytope2(CROSS).to_grid(grid))
        assert d == pytest.approx(1 / np.sqrt(2), abs=1e-9)

    def test_unbounded(self, grid, corpus):
        assert np.isinf(hausdorff(corpus["halfplane"], corpus["ball"]))
        assert hausdorff(corpus["plane"], corpus["plane"]) == 0.0

    def test_truncated(self, corpus):
        d = hausdorff_truncated(corpus["plane"], corpus["ball"], 3.0)
        assert d == pytest.approx(2.0, abs=1e-9)


class TestAttouchWets:
    def test_hand_values(self, grid):
        assert attouch_wets(GridBody.ball(grid, 2.0), GridBody.ball(grid, 1.0)) == pytest.approx(0.5, abs=1e-9)
        assert attouch_wets(GridBody.origin(grid), GridBody.whole_space(grid)) == pytest.approx(1.0, abs=1e-9)

    def test_sweep_terms(self, grid):
        s = attouch_wets_sweep(GridBody.ball(grid, 2.0), GridBody.ball(grid, 1.0))
        d = s.to_dict()
        assert d["sweep"][0] == {"j": 1, "term": 0.0}
        assert d["sweep"][1]["term"] == pytest.approx(0.5)
        assert d["d_aw"] == pytest.approx(0.5)

    def test_bounded_by_one(self, corpus):
        for A in corpus.values():
            for B in corpus.values():
                assert 0.0 <= attouch_wets(A, B) <= 1.0

    def test_symmetric(self, corpus):
        A, B = corpus["cone"], corpus["ellipse"]
        assert attouch_wets(A, B) == attouch_wets(B, A)

    def test_config_validation(self):
        with pytest.raises(ValueError):
            MetricConfig(j_max=0)


class TestThreshold:
    @pytest.mark.parametrize("eps, j", [(1.0, 1), (0.9, 1), (0.5, 2), (1 / 3, 3), (0.2, 5), (0.11, 9)])
    def test_index(self, eps, j):
        assert threshold_index(eps) == j

    @pytest.mark.parametrize("eps", [0.0, -0.1, 1.5])
    def test_rejects(self, eps):
        with pytest.raises(BadEpsilon):
            threshold_index(eps)

    def test_agreement(self, corpus):
        rng = np.random.default_rng(0)
        bodies = list(corpus.values())
        for _ in range(30):
            i, j = rng.integers(0, len(bodies), 2)
            A, B = scale(bodies[i], rng.uniform(0.5, 2)), scale(bodies[j], rng.uniform(0.5, 2))
            for eps in (0.9, 0.5, 1 / 3, 0.2, 0.11):
                left, right = aw_threshold_check(A, B, eps)
                assert left == right


class TestResiduals:
    def test_inclusion_gap_sign(self, corpus):
        assert inclusion_gap(corpus["half_ball"], corpus["ball"]) == pytest.approx(-0.5)
        assert inclusion_gap(corpus["ball"], corpus["half_ball"]) == pytest.approx(0.5)

    def test_residual_distance_unbounded(self, corpus):
        assert residual_distance(corpus["halfplane"], corpus["halfplane"]) == 0.0
        assert np.isfinite(residual_distance(corpus["halfplane"], corpus["plane"]))
