"""Built-in test bodies covering bounded, degenerate and unbounded cases."""
from __future__ import annotations

import numpy as np

from .bodies import GridBody, LinearMap, linear_image
from .grid import DirectionGrid
from .polygon import Polytope2

DEFAULT_SEED = 42

SQUARE = [[1.0, 1.0], [-1.0, 1.0], [-1.0, -1.0], [1.0, -1.0]]
CROSS = [[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]]
TRIANGLE = [[2.0, 0.0], [0.0, 2.0], [-1.0, -1.0]]


def random_polygon(seed: int = DEFAULT_SEED, count: int = 7) -> Polytope2:
    """Seeded polygon whose vertex angles leave no gap of ``0.9 pi`` (0 is interior)."""
    rng = np.random.default_rng(seed)
    while True:
        ang = np.sort(rng.uniform(0.0, 2.0 * np.pi, count))
        gaps = np.diff(np.concatenate([ang, [ang[0] + 2.0 * np.pi]]))
        if gaps.max() < 0.9 * np.pi:
            break
    rad = rng.uniform(0.5, 1.5, count)
    return Polytope2(np.column_stack([rad * np.cos(ang), rad * np.sin(ang)]))


def lorentz_cone_2d() -> Polytope2:
    """``{x : x_2 >= |x_1|}`` as an exact cone."""
    return Polytope2(np.zeros((1, 2)), [[-1.0, 1.0], [1.0, 1.0]])


def default_corpus(grid: DirectionGrid, seed: int = DEFAULT_SEED) -> dict:
    """Name -> body for the twelve built-in planar bodies, in a fixed order."""
    if grid.dimension != 2:
        raise ValueError("the built-in corpus is planar")
    square = Polytope2(SQUARE)
    cross = Polytope2(CROSS)
    poly = random_polygon(seed)
    cone = lorentz_cone_2d()
    halfplane = Polytope2([[0.0, 1.0]], [[1.0, 0.0], [-1.0, 0.0], [0.0, -1.0]])
    return {
        "origin": GridBody.origin(grid),
        "ball": GridBody.ball(grid, 1.0),
        "half_ball": GridBody.ball(grid, 0.5),
        "double_ball": GridBody.ball(grid, 2.0),
        "square": square.to_grid(grid),
        "cross": cross.to_grid(grid),
        "random_polygon": poly.to_grid(grid),
        "segment": GridBody.segment(grid, [1.0, 0.0]),
        "ellipse": linear_image(LinearMap.diag(2.0, 3.0), GridBody.ball(grid, 1.0)),
        "cone": cone.to_grid(grid),
        "halfplane": halfplane.to_grid(grid),
        "plane": GridBody.whole_space(grid),
    }


def bounded_interior(corpus: dict) -> dict:
    """Members that are bounded with 0 in the interior (geometric-mean admissible)."""
    return {k: b for k, b in corpus.items() if b.is_bounded and b.has_interior}


def bounded(corpus: dict) -> dict:
    return {k: b for k, b in corpus.items() if b.is_bounded}
