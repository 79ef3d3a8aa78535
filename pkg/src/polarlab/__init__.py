"""Polar duality, set distances, geometric means and equivariant contractions
for closed convex sets containing the origin, sampled on direction grids."""
from .bodies import (
    GridBody,
    LinearMap,
    canonicalize,
    combine,
    hull_union,
    intersect,
    linear_image,
    minkowski_sum,
    nu,
    polar,
    scale,
    tau_grid,
    truncate,
)
from .contraction import equivariant_contraction, inflate_and_truncate, radial_shrink
from .corpus import default_corpus
from .dualities import SymmetricDuality, dual_map, fixed_body
from .errors import PolarlabError
from .grid import DirectionGrid, make_grid
from .mean import geometric_mean, mean_body
from .metrics import attouch_wets, hausdorff
from .parse import parse_body
from .polygon import Polytope2, polar_polytope
from .report import Check, Report, emit
from .verify import VerifyConfig, run_verify

__version__ = "0.1.0"

__all__ = [
    "Check",
    "DirectionGrid",
    "GridBody",
    "LinearMap",
    "PolarlabError",
    "Polytope2",
    "Report",
    "SymmetricDuality",
    "VerifyConfig",
    "attouch_wets",
    "canonicalize",
    "combine",
    "default_corpus",
    "dual_map",
    "emit",
    "equivariant_contraction",
    "fixed_body",
    "geometric_mean",
    "hausdorff",
    "hull_union",
    "inflate_and_truncate",
    "intersect",
    "linear_image",
    "make_grid",
    "mean_body",
    "minkowski_sum",
    "nu",
    "parse_body",
    "polar",
    "polar_polytope",
    "radial_shrink",
    "run_verify",
    "scale",
    "tau_grid",
    "truncate",
]
