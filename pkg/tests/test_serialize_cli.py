import json
import math

import pytest
from hypothesis import given, strategies as st

from flatmink.circles import NEG, POS, Curve, Line
from flatmink.cli import main
from flatmink.planes import classical, hartmann, mixed
from flatmink.serialize import (circle_from_json, circle_to_json, dumps, load_json,
                                plane_from_json, plane_to_json, point_from_json, point_to_json)
from flatmink.torus import TorusPoint

coord = st.one_of(st.just(math.inf), st.floats(-1e6, 1e6, allow_nan=False))
finite = st.floats(-1e6, 1e6, allow_nan=False)
positive = st.floats(1e-6, 1e6)
half = st.sampled_from([NEG, POS])


@given(coord, coord)
def test_point_round_trip(x, y):
    p = TorusPoint(x, y)
    text = dumps(point_to_json(p))
    assert point_from_json(json.loads(text)) == p


@given(positive, finite, finite, half)
def test_curve_round_trip(a, b, c, h):
    C = Curve(a, b, c, h)
    assert circle_from_json(json.loads(dumps(circle_to_json(C)))) == C


@given(positive, finite, half)
def test_line_round_trip(s, t, h):
    C = Line(s if h == POS else -s, t, h)
    assert circle_from_json(json.loads(dumps(circle_to_json(C)))) == C


@pytest.mark.parametrize("make", [classical, lambda: hartmann(2.0), mixed])
def test_plane_round_trip(make):
    plane = make()
    back = plane_from_json(json.loads(dumps(plane_to_json(plane))))
    for f, g in zip(plane.functions, back.functions):
        for x in (0.1, 1.0, 7.5):
            assert float(g(x)) == pytest.approx(float(f(x)), rel=1e-15)


def test_bad_json_shapes():
    from flatmink.errors import BadParam
    with pytest.raises(BadParam):
        point_from_json({"x": 1})
    with pytest.raises(BadParam):
        circle_from_json({"kind": "curve", "a": 1})
    with pytest.raises(BadParam):
        circle_from_json({"kind": "blob"})


def test_load_json_from_file(tmp_path):
    f = tmp_path / "p.json"
    f.write_text('{"x": 1, "y": "inf"}')
    assert point_from_json(load_json(str(f))) == TorusPoint(1.0, math.inf)


# ------------------------------------------------------------ command line

def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cli_join_classical(capsys):
    code, out, _ = run(capsys, "join", "--plane", "classical",
                       "--points", "[[0, 1], [1, 0], [2, -1]]")
    assert code == 0
    assert json.loads(out)["circle"]["kind"] == "line"


def test_cli_join_curve(capsys):
    code, out, _ = run(capsys, "join", "--plane", "classical",
                       "--points", '[[1, 1], [2, 0.5], [4, 0.25]]')
    d = json.loads(out)["circle"]
    assert code == 0 and d["kind"] == "curve"
    assert (d["a"], d["b"], d["c"]) == pytest.approx((1.0, 0.0, 0.0), abs=1e-12)


def test_cli_parallel_points_is_usage_error(capsys):
    code, _, err = run(capsys, "join", "--plane", "classical",
                       "--points", "[[0, 1], [0, 2], [3, 4]]")
    assert code == 2 and "ParallelPoints" in err


def test_cli_unknown_plane_is_usage_error(capsys):
    code, _, err = run(capsys, "classify", "--plane", "nosuch")
    assert code == 2


def test_cli_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["roots", "--plane", "classical", "--params", "1,2,3"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["fuzz", "--plane", "classical", "--trials", "-1"])
    assert exc.value.code == 2


def test_cli_check_fn_pass_and_fail(capsys):
    code, out, _ = run(capsys, "check-fn", "--spec", '{"kind": "reciprocal_power", "i": 2}')
    assert code == 0 and json.loads(out)["overall"] == "pass"
    code, out, _ = run(capsys, "check-fn", "--spec", '{"kind": "reciprocal_sinh"}')
    assert code == 1 and json.loads(out)["overall"] != "pass"


def test_cli_roots(capsys):
    code, out, _ = run(capsys, "roots", "--plane", "classical", "--params", "2,0,0,1,0,1")
    d = json.loads(out)
    assert code == 0
    assert [r["x"] for r in d["check"]["roots"]] == pytest.approx([1.0])


def test_cli_intersect_and_touch(capsys):
    c1 = json.dumps({"kind": "curve", "a": 1, "b": 0, "c": 0})
    c2 = json.dumps({"kind": "line", "s": -1, "t": 2})
    code, out, _ = run(capsys, "intersect", "--plane", "classical", "--c1", c1, "--c2", c2)
    assert code == 0
    pts = json.loads(out)["points"]
    assert len(pts) == 1 and pts[0]["x"] == pytest.approx(1.0, abs=1e-6)
    code, out, _ = run(capsys, "touch", "--plane", "classical", "--circle", c1,
                       "--p", "[1, 1]", "--q", "[3, 0]")
    assert code == 0 and json.loads(out)["verified"]


def test_cli_classify_and_isomorphic(capsys):
    code, out, _ = run(capsys, "classify", "--plane", "classical")
    assert code == 0 and json.loads(out)["group_dimension"] == 6
    code, out, _ = run(capsys, "classify", "--plane", "mixed")  # normalised on the way in
    assert code == 0 and json.loads(out)["group_dimension"] == 3
    code, out, _ = run(capsys, "isomorphic", "--plane-f", "classical", "--plane-g", "mixed")
    assert code == 0 and json.loads(out)["isomorphic"] is False


def test_cli_seed_env_override(capsys, monkeypatch):
    args = ("fuzz", "--plane", "classical", "--trials", "3")
    monkeypatch.setenv("MINK_SEED", "7")
    _, a, _ = run(capsys, *args, "--seed", "1")
    _, b, _ = run(capsys, *args, "--seed", "2")
    assert a == b and json.loads(a)["seed"] == 7
    monkeypatch.delenv("MINK_SEED")
    _, c, _ = run(capsys, *args, "--seed", "1")
    assert json.loads(c)["seed"] == 1


def test_cli_render_to_file(capsys, tmp_path):
    out = tmp_path / "c.svg"
    code, _, _ = run(capsys, "render", "--plane", "classical",
                     "--circles", '[{"kind": "curve", "a": 1, "b": 0, "c": 0}]',
                     "--points", "[[1, 1]]", "--out", str(out))
    assert code == 0 and out.read_text().startswith("<svg")


def test_cli_accept_only(capsys):
    code, out, err = run(capsys, "accept", "--only", "7")
    d = json.loads(out)
    assert code == 0 and d["passed"] and [c["criterion"] for c in d["criteria"]] == [7]
    assert "[PASS] criterion 7" in err


def test_cli_accept_unknown_criterion(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["accept", "--only", "12"])
    assert exc.value.code == 2
