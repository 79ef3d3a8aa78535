"""JSON body descriptions.

Grammar (``inf`` may be written as the string ``"inf"``)::

    {"kind": "ball", "r": 1.0}
    {"kind": "polytope", "vertices": [[x, y], ...], "rays": [[x, y], ...]}   # rays optional
    {"kind": "halfspaces", "normals": [[...], ...], "offsets": [...]}       # offsets >= 0
    {"kind": "cone_j", "j": 2}
    {"kind": "segment", "to": [x, y]}
    {"kind": "origin"} | {"kind": "space"}
    {"kind": "scale", "r": 2.0, "of": {...}}
    {"kind": "image", "matrix": [[...]], "of": {...}}
    {"kind": "samples", "support": [...], "radial": [...]}                 # grid samples, radial optional
"""
from __future__ import annotations

import json
import math
import os

import numpy as np

from .bodies import GridBody, LinearMap, linear_image, scale
from .errors import InvalidBody, ParseError, PolarlabError
from .grid import DirectionGrid
from .polygon import Polytope2

KINDS = ("ball", "polytope", "halfspaces", "cone_j", "segment", "origin", "space", "scale", "image", "samples")


def _number(v, path):
    if isinstance(v, str) and v in ("inf", "+inf", "Infinity"):
        return math.inf
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ParseError("expected a number", path)
    if math.isnan(v):
        raise ParseError("NaN is not allowed", path)
    return float(v)


def _vector(v, path, dim=None):
    if not isinstance(v, list) or not v:
        raise ParseError("expected a nonempty list of numbers", path)
    out = [_number(x, f"{path}[{i}]") for i, x in enumerate(v)]
    if dim is not None and len(out) != dim:
        raise ParseError(f"expected {dim} coordinates, got {len(out)}", path)
    return out


def _matrix(v, path, dim=None):
    if not isinstance(v, list) or not v:
        raise ParseError("expected a nonempty list of rows", path)
    rows = [_vector(r, f"{path}[{i}]", dim) for i, r in enumerate(v)]
    width = len(rows[0])
    for i, r in enumerate(rows):
        if len(r) != width:
            raise ParseError("rows have different lengths", f"{path}[{i}]")
    return np.array(rows)


def _field(node, key, path):
    if key not in node:
        raise ParseError(f"missing field {key!r}", path)
    return node[key]


def _origin_in_hull(verts: np.ndarray, rays) -> bool:
    from scipy.optimize import linprog

    gens = verts if rays is None else np.vstack([verts, rays])
    nv = len(verts)
    a_eq = np.vstack([gens.T, np.r_[np.ones(nv), np.zeros(len(gens) - nv)]])
    b_eq = np.r_[np.zeros(verts.shape[1]), 1.0]
    res = linprog(np.zeros(len(gens)), A_eq=a_eq, b_eq=b_eq, bounds=(0, None), method="highs")
    return res.status == 0


def _build(node, grid: DirectionGrid, path: str) -> GridBody:
    if not isinstance(node, dict):
        raise ParseError("expected an object", path)
    kind = node.get("kind")
    if kind not in KINDS:
        raise ParseError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}", f"{path}.kind")
    n = grid.dimension

    if kind == "ball":
        r = _number(_field(node, "r", path), f"{path}.r")
        if r < 0:
            raise InvalidBody(f"{path}.r: a ball radius must be nonnegative")
        return GridBody.ball(grid, r)
    if kind == "origin":
        return GridBody.origin(grid)
    if kind == "space":
        return GridBody.whole_space(grid)
    if kind == "segment":
        return GridBody.segment(grid, _vector(_field(node, "to", path), f"{path}.to", n))
    if kind == "polytope":
        verts = _matrix(_field(node, "vertices", path), f"{path}.vertices", n)
        rays = _matrix(node["rays"], f"{path}.rays", n) if node.get("rays") else None
        if n == 2:
            try:
                exact = Polytope2(verts, rays)
            except InvalidBody as err:
                raise InvalidBody(f"{path}: {err}") from None
            return exact.to_grid(grid)
        if not _origin_in_hull(verts, rays):
            raise InvalidBody(f"{path}: the origin does not belong to the polytope")
        return GridBody.from_points(grid, verts, rays)
    if kind == "halfspaces":
        normals = _matrix(_field(node, "normals", path), f"{path}.normals", n)
        offsets = _vector(_field(node, "offsets", path), f"{path}.offsets")
        if len(offsets) != len(normals):
            raise ParseError("one offset per normal is required", f"{path}.offsets")
        bad = [i for i, b in enumerate(offsets) if b < 0]
        if bad:
            raise InvalidBody(
                f"{path}.offsets[{bad[0]}] = {offsets[bad[0]]}: a negative offset excludes the origin"
            )
        return GridBody.from_halfspaces(grid, normals, offsets)
    if kind == "cone_j":
        from .dualities import lorentz_cone

        j = _field(node, "j", path)
        if not isinstance(j, int) or isinstance(j, bool):
            raise ParseError("expected an integer axis index", f"{path}.j")
        return lorentz_cone(grid, j)
    if kind == "scale":
        r = _number(_field(node, "r", path), f"{path}.r")
        inner = _build(_field(node, "of", path), grid, f"{path}.of")
        if not (0 < r < math.inf):
            raise InvalidBody(f"{path}.r: scale factor must be positive and finite")
        return scale(inner, r)
    if kind == "image":
        m = _matrix(_field(node, "matrix", path), f"{path}.matrix", n)
        if m.shape != (n, n):
            raise ParseError(f"expected a {n}x{n} matrix", f"{path}.matrix")
        inner = _build(_field(node, "of", path), grid, f"{path}.of")
        try:
            return linear_image(LinearMap(m), inner)
        except PolarlabError as err:
            raise InvalidBody(f"{path}.matrix: {err}") from None
    # samples
    h = _vector(_field(node, "support", path), f"{path}.support")
    if len(h) != grid.size:
        raise ParseError(f"expected {grid.size} support samples, got {len(h)}", f"{path}.support")
    if min(h) < 0:
        raise InvalidBody(f"{path}.support: negative support values exclude the origin")
    exact = None
    if node.get("exact") is not None and n == 2:
        e = node["exact"]
        rays = e.get("rays") or None
        exact = Polytope2(_matrix(e["vertices"], f"{path}.exact.vertices", 2),
                          None if rays is None else _matrix(rays, f"{path}.exact.rays", 2))
    if "radial" not in node:
        return GridBody.from_support(grid, np.array(h), exact)
    # an emitted pair is already canonical; keep it bit for bit
    rho = _vector(node["radial"], f"{path}.radial")
    if len(rho) != grid.size or min(rho) < 0:
        raise ParseError(f"expected {grid.size} nonnegative radial samples", f"{path}.radial")
    return GridBody(grid, np.array(h), np.array(rho), exact)


def parse_body(node, grid: DirectionGrid) -> GridBody:
    """Build a canonical :class:`GridBody` from JSON text or an already decoded object.

    Planar polytopes keep their exact form in ``body.exact``.
    """
    if isinstance(node, (str, bytes)):
        try:
            node = json.loads(node)
        except json.JSONDecodeError as err:
            raise ParseError(f"invalid JSON: {err.msg} (line {err.lineno}, column {err.colno})") from None
    return _build(node, grid, "$")


def load_body(arg: str, grid: DirectionGrid) -> GridBody:
    """``arg`` is a path to a UTF-8 JSON file or inline JSON text."""
    if os.path.exists(arg):
        with open(arg, encoding="utf-8") as fh:
            return parse_body(fh.read(), grid)
    return parse_body(arg, grid)


def _enc(x: float):
    return "inf" if math.isinf(x) else float(x)


def body_to_json(A: GridBody) -> dict:
    """Sample form accepted back by :func:`parse_body` (``kind: samples``)."""
    out = {
        "kind": "samples",
        "grid_n": A.grid.size,
        "support": [_enc(x) for x in A.support],
        "radial": [_enc(x) for x in A.radial],
    }
    if isinstance(A.exact, Polytope2):
        out["exact"] = {"vertices": A.exact.vertices.tolist(), "rays": A.exact.rays.tolist()}
    return out
