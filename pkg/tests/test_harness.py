import json
import math
import subprocess
import sys

import numpy as np
import pytest

from polarlab import GridBody, Polytope2, hausdorff, nu, parse_body
from polarlab.cli import _t_grid, main
from polarlab.errors import InvalidBody, ParseError
from polarlab.parse import body_to_json, load_body
from polarlab.report import Check, Report, emit, from_json, to_json, trace_csv
from polarlab.verify import VerifyConfig, run_verify, ulp_distance


class TestParse:
    def test_ball(self, grid):
        assert hausdorff(parse_body('{"kind":"ball","r":2}', grid), GridBody.ball(grid, 2.0)) == 0.0

    def test_origin(self, grid):
        assert nu(parse_body({"kind": "origin"}, grid)) == 0.0

    def test_negative_offset(self, grid):
        with pytest.raises(InvalidBody, match="offsets"):
            parse_body('{"kind":"halfspaces","normals":[[1,0]],"offsets":[-1]}', grid)

    def test_polytope_keeps_exact(self, grid):
        A = parse_body({"kind": "polytope", "vertices": [[1, 1], [-1, 1], [-1, -1], [1, -1]]}, grid)
        assert isinstance(A.exact, Polytope2)

    def test_polytope_without_origin(self, grid):
        with pytest.raises(InvalidBody):
            parse_body({"kind": "polytope", "vertices": [[1, 1], [2, 1], [1, 2]]}, grid)

    def test_nested_path(self, grid):
        with pytest.raises(ParseError) as info:
            parse_body({"kind": "scale", "r": 2, "of": {"kind": "image", "matrix": [[1, 0], [0, 1]],
                                                         "of": {"kind": "ball", "r": "x"}}}, grid)
        assert info.value.path == "$.of.of.r"

    def test_unknown_kind(self, grid):
        with pytest.raises(ParseError):
            parse_body({"kind": "blob"}, grid)

    def test_bad_json(self, grid):
        with pytest.raises(ParseError):
            parse_body("{not json", grid)

    def test_singular_image(self, grid):
        with pytest.raises(InvalidBody):
            parse_body({"kind": "image", "matrix": [[1, 2], [2, 4]], "of": {"kind": "ball", "r": 1}}, grid)

    def test_cone_and_segment(self, grid, corpus):
        assert hausdorff(parse_body({"kind": "cone_j", "j": 2}, grid), corpus["cone"]) == 0.0
        assert hausdorff(parse_body({"kind": "segment", "to": [1, 0]}, grid), corpus["segment"]) == 0.0

    def test_samples_round_trip(self, grid, corpus):
        for name in ("square", "halfplane", "cone"):
            A = corpus[name]
            back = parse_body(json.dumps(body_to_json(A)), grid)
            np.testing.assert_array_equal(back.support, A.support)

    def test_load_from_file(self, tmp_path, grid):
        p = tmp_path / "b.json"
        p.write_text('{"kind":"ball","r":3}', encoding="utf-8")
        assert nu(load_body(str(p), grid)) == 3.0


class TestReport:
    def test_pass_rule(self):
        assert Check("a", "x", 1.0, 1.0).passed
        assert not Check("a", "x", 1.0 + 1e-15, 1.0).passed
        assert not Check("a", "x", math.inf, 1.0).passed

    def test_json_round_trip(self):
        r = Report("demo", config={"seed": 1})
        r.add("a", "anchor", 0.5, 1.0)
        r.add("b", "anchor", math.inf, 0.0, "detail")
        assert from_json(to_json(r)) == r

    def test_human(self):
        r = Report("demo")
        r.add("a", "anchor", 0.5, 1.0)
        text = emit(r, "human")
        assert text.count("\n") == 2 and text.endswith("demo: 1/1 checks passed\n")

    def test_csv_headers(self):
        assert trace_csv(("m", "gap"), [(0, 1.0)]).splitlines() == ["m,gap", "0,1.0"]
        assert trace_csv(("t", "d_aw", "equiv"), []).strip() == "t,d_aw,equiv"

    def test_unknown_format(self):
        with pytest.raises(ValueError):
            emit(Report("x"), "yaml")


class TestVerify:
    def test_ball_only(self, grid):
        rep = run_verify({"ball": GridBody.ball(grid, 1.0)}, timestamp=False, only=("bodies", "mean"))
        assert rep.passed
        zero = [c for c in rep.checks if c.check_id.startswith("bodies/bipolar")]
        assert zero and all(c.residual == 0.0 for c in zero)

    def test_empty_corpus(self):
        with pytest.raises(ValueError):
            run_verify({}, VerifyConfig())

    def test_ulp_distance(self):
        x = np.array([1.0, np.inf])
        assert ulp_distance(x, x) == 0
        assert ulp_distance(np.array([1.0]), np.array([np.nextafter(1.0, 2.0)])) == 1


class TestCli:
    def test_t_grid(self):
        assert _t_grid("0:1:0.25") == [0.0, 0.25, 0.5, 0.75, 1.0]
        with pytest.raises(ParseError):
            _t_grid("0:1")

    def test_metrics(self, capsys):
        assert main(["metrics", "--a", '{"kind":"ball","r":2}', "--b", '{"kind":"ball","r":1}']) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["d_h"] == 1.0 and out["d_aw"] == 0.5 and out["sweep"][1]["j"] == 2

    def test_mean_csv(self, capsys, tmp_path):
        body = tmp_path / "g.json"
        assert main(["mean", "--a", '{"kind":"ball","r":1}', "--b", '{"kind":"ball","r":4}',
                     "--body-out", str(body)]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "m,gap" and lines[1] == "0,3.0"
        assert json.loads(body.read_text(encoding="utf-8"))["kind"] == "samples"

    def test_contract_csv(self, capsys):
        assert main(["contract", "--a", '{"kind":"ball","r":2}', "--t-grid", "0:1:0.5"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "t,d_aw,equiv" and len(lines) == 4

    def test_fixpoints(self, capsys):
        assert main(["fixpoints", "--matrix", "[[1,0],[0,-1]]", "--t", "0.2"]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out[0]["t"] == 0.2 and out[0]["passed"]

    def test_duality_order(self, capsys):
        assert main(["duality", "--matrix", "[[4,0],[0,9]]", "--check", "order", "--format", "human"]) == 0
        assert "checks passed" in capsys.readouterr().out

    def test_invalid_body_exit_code(self, capsys):
        code = main(["polar", "--a", '{"kind":"halfspaces","normals":[[1,0]],"offsets":[-1]}'])
        assert code == 2
        assert "InvalidBody" in capsys.readouterr().err

    def test_seed_env(self, monkeypatch):
        from polarlab.cli import build_parser

        monkeypatch.setenv("POLARLAB_SEED", "7")
        assert build_parser().parse_args(["verify"]).seed == 7

    def test_module_entry(self):
        res = subprocess.run([sys.executable, "-m", "polarlab.cli", "polar", "--a", '{"kind":"ball","r":2}'],
                             capture_output=True, text=True, check=True)
        assert json.loads(res.stdout)["support"][0] == 0.5
