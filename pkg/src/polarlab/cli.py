"""``polarlab`` command line."""
from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .bodies import LinearMap, polar
from .contraction import contraction_sweep
from .corpus import DEFAULT_SEED, bounded, default_corpus
from .dualities import (
    SymmetricDuality,
    conjugation_check,
    fixed_body,
    involution_report,
    order_report,
)
from .errors import ParseError, PolarlabError
from .grid import make_grid
from .mean import DEFAULT_MAX_ITER, DEFAULT_TOL, geometric_mean
from .metrics import attouch_wets_sweep, hausdorff, inclusion_gap
from .parse import body_to_json, load_body
from .report import Report, emit, trace_csv
from .verify import VerifyConfig, run_verify

EXIT_FAIL = 1
EXIT_ERROR = 2


def _default_seed() -> int:
    raw = os.environ.get("POLARLAB_SEED")
    if raw is None:
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f"polarlab: POLARLAB_SEED must be an integer, got {raw!r}")


def _num(x):
    return "inf" if isinstance(x, float) and np.isinf(x) else x


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def _t_grid(text: str):
    try:
        parts = [float(p) for p in text.split(":")]
    except ValueError:
        raise ParseError(f"--t-grid expects start:stop:step, got {text!r}") from None
    if len(parts) != 3 or parts[2] <= 0 or parts[1] < parts[0]:
        raise ParseError(f"--t-grid expects start:stop:step with step > 0, got {text!r}")
    lo, hi, step = parts
    count = int(np.floor((hi - lo) / step + 1e-9)) + 1
    return [round(lo + k * step, 12) for k in range(count)]


def _t_list(text: str):
    try:
        return [float(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise ParseError(f"--t expects a comma-separated list, got {text!r}") from None


def _matrix(text: str) -> np.ndarray:
    try:
        m = np.array(json.loads(text), dtype=float)
    except (json.JSONDecodeError, ValueError, TypeError):
        raise ParseError(f"--matrix expects a JSON list of rows, got {text!r}") from None
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ParseError("--matrix must be square")
    return m


# -- subcommands -----------------------------------------------------------


def cmd_polar(args, grid):
    A = load_body(args.a, grid)
    return _dump(body_to_json(polar(A))), 0


def cmd_metrics(args, grid):
    A, B = load_body(args.a, grid), load_body(args.b, grid)
    sweep = attouch_wets_sweep(A, B)
    out = {"d_h": _num(hausdorff(A, B)), **sweep.to_dict()}
    out["d_aw"] = _num(out["d_aw"])
    if args.eps is not None:
        out["eps"] = args.eps
        out["aw_below_eps"] = bool(sweep.value < args.eps)
    if args.format == "human":
        lines = [f"d_h  {out['d_h']}", f"d_aw {out['d_aw']}"]
        lines += [f"j={r['j']} term={r['term']}" for r in out["sweep"]]
        return "\n".join(lines) + "\n", 0
    return _dump(out), 0


def cmd_mean(args, grid):
    A, B = load_body(args.a, grid), load_body(args.b, grid)
    tr = geometric_mean(A, B, args.tol, args.max_iter)
    if args.body_out:
        with open(args.body_out, "w", encoding="utf-8") as fh:
            fh.write(_dump(body_to_json(tr.final)))
    rows = [(m, float(gap)) for m, gap in tr.iterates]
    if args.format == "json":
        return _dump({"trace": [{"m": m, "gap": g} for m, g in rows], "converged": tr.converged,
                      "body": body_to_json(tr.final)}), 0
    return trace_csv(("m", "gap"), rows), 0


def cmd_contract(args, grid):
    A = load_body(args.a, grid)
    trace = contraction_sweep(A, _t_grid(args.t_grid), args.tol)
    if args.bodies_out:
        with open(args.bodies_out, "w", encoding="utf-8") as fh:
            fh.write(_dump([{"t": t, "body": body_to_json(b)} for t, b in zip(trace.t_values, trace.bodies)]))
    rows = [(float(t), float(d), float(e)) for t, d, e in trace.rows()]
    if args.format == "json":
        return _dump([{"t": t, "d_aw": _num(d), "equiv": _num(e)} for t, d, e in rows]), 0
    return trace_csv(("t", "d_aw", "equiv"), rows), 0


def cmd_fixpoints(args, grid):
    d = SymmetricDuality(_matrix(args.matrix))
    out = []
    for t in _t_list(args.t):
        fb = fixed_body(d, t, args.tol, grid)
        out.append({
            "t": t,
            "body": body_to_json(fb.body),
            "residual_polar_W": fb.residual_polar_W,
            "residual_fixed": fb.residual_fixed,
            "tolerance": fb.tolerance,
            "passed": fb.passed,
        })
    return _dump(out), 0 if all(o["passed"] for o in out) else EXIT_FAIL


def cmd_duality(args, grid):
    d = SymmetricDuality(_matrix(args.matrix))
    corpus = default_corpus(grid, args.seed)
    if args.check == "conj":
        rep = Report("conjugation")
        for name, A in bounded(corpus).items():
            rep.extend(conjugation_check(d, A, label=name))
    elif args.check == "involution":
        rep = involution_report(d, corpus)
    else:
        pairs = [(f"{a}⊆{k}", A, K) for a, A in corpus.items() for k, K in corpus.items()
                 if a != k and inclusion_gap(A, K) <= 0]
        rep = order_report(d, pairs)
    rep.config.update({"matrix": d.T.matrix.tolist(), "classification": d.classification})
    return emit(rep, args.format or "json"), 0 if rep.passed else EXIT_FAIL


def cmd_verify(args, grid):
    cfg = VerifyConfig(grid_n=args.grid_n, seed=args.seed, tol_grid=args.tol_grid)
    rep = run_verify(default_corpus(grid, args.seed), cfg, timestamp=not args.no_timestamp)
    return emit(rep, args.format or "json"), 0 if rep.passed else EXIT_FAIL


# -- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--grid-n", type=int, default=1440, help="number of grid directions (>= 8)")
    common.add_argument("--seed", type=int, default=_default_seed(), help="seed; POLARLAB_SEED sets the default")
    common.add_argument("--tol-grid", type=float, default=None, help="absolute grid tolerance for verify")
    common.add_argument("--format", choices=("json", "csv", "human"), default=None)
    common.add_argument("--no-timestamp", action="store_true", help="omit runtime from reports")

    p = argparse.ArgumentParser(prog="polarlab", description="Polar duality toolkit on direction grids.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("polar", parents=[common], help="polar of a body")
    s.add_argument("--a", required=True, help="body JSON file or inline JSON")
    s.set_defaults(func=cmd_polar)

    s = sub.add_parser("metrics", parents=[common], help="Hausdorff and Attouch-Wets distances")
    s.add_argument("--a", required=True)
    s.add_argument("--b", required=True)
    s.add_argument("--eps", type=float)
    s.set_defaults(func=cmd_metrics)

    s = sub.add_parser("mean", parents=[common], help="geometric mean trace as CSV (m,gap)")
    s.add_argument("--a", required=True)
    s.add_argument("--b", required=True)
    s.add_argument("--tol", type=float, default=DEFAULT_TOL)
    s.add_argument("--max-iter", type=int, default=DEFAULT_MAX_ITER)
    s.add_argument("--body-out", help="write the final body as JSON samples to this file")
    s.set_defaults(func=cmd_mean)

    s = sub.add_parser("contract", parents=[common], help="contraction sweep as CSV (t,d_aw,equiv)")
    s.add_argument("--a", required=True)
    s.add_argument("--t-grid", default="0:1:0.05", help="start:stop:step")
    s.add_argument("--tol", type=float, default=DEFAULT_TOL)
    s.add_argument("--bodies-out", help="write the bodies along the sweep as JSON to this file")
    s.set_defaults(func=cmd_contract)

    s = sub.add_parser("fixpoints", parents=[common], help="fixed bodies of A -> T(A°) for indefinite T")
    s.add_argument("--matrix", required=True, help="symmetric matrix as JSON rows")
    s.add_argument("--t", default="0.1,0.2,0.3,0.4", help="comma-separated values in (0,1)")
    s.add_argument("--tol", type=float, default=DEFAULT_TOL)
    s.set_defaults(func=cmd_fixpoints)

    s = sub.add_parser("duality", parents=[common], help="duality report on the built-in corpus")
    s.add_argument("--matrix", required=True)
    s.add_argument("--check", choices=("conj", "involution", "order"), required=True)
    s.set_defaults(func=cmd_duality)

    s = sub.add_parser("verify", parents=[common], help="run every property check")
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        grid = make_grid(2, args.grid_n)
        text, code = args.func(args, grid)
    except (PolarlabError, ValueError, OSError) as err:
        print(f"polarlab: {type(err).__name__}: {err}", file=sys.stderr)
        return EXIT_ERROR
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
