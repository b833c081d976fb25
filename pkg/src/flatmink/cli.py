"""Command-line front end: ``flatmink <command> ...``.

Every command prints JSON (``render`` prints SVG). Exit codes: 0 success,
1 numerical failure or failed check (with a JSON diagnostic), 2 bad usage
or bad input. ``MINK_SEED`` in the environment overrides ``--seed``.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import fields
from pathlib import Path

from . import errors
from .circles import NEG, POS, PlaneSpec
from .functions import CheckerConfig, check_strongly_hyperbolic, function_from_spec
from .planes import NAMED, named_plane
from .rng import DEFAULT_SEED, resolve_seed
from .serialize import circle_from_json, circle_to_json, dumps, load_json, point_from_json

# bad input, as opposed to a numerical failure
USAGE_ERRORS = (errors.BadParam, errors.UnknownName, errors.InvalidParams,
                errors.DegenerateTriple, errors.ParallelPoints, errors.PointNotOnCircle,
                errors.PointOnCircle, errors.IdenticalCircles, errors.NotNormalised,
                json.JSONDecodeError, FileNotFoundError)


class UsageError(Exception):
    pass


def _plane(arg: str) -> PlaneSpec:
    """A named plane, a JSON literal or a JSON file."""
    if arg in NAMED:
        return named_plane(arg)
    data = load_json(arg)
    if not isinstance(data, dict):
        raise errors.BadParam("a plane spec must be a JSON object")
    return PlaneSpec.from_dict(data)


def _plane_checker(arg: str) -> dict:
    if arg in NAMED:
        return {}
    data = load_json(arg)
    return data.get("checker", {}) if isinstance(data, dict) else {}


def _floats(text: str, n: int) -> list:
    try:
        vals = [float(v) for v in text.split(",")]
    except ValueError:
        raise UsageError(f"expected {n} comma-separated numbers, got {text!r}") from None
    if len(vals) != n:
        raise UsageError(f"expected {n} comma-separated numbers, got {len(vals)}")
    return vals


def _half(text: str) -> int:
    return NEG if text == "neg" else POS


def _emit(obj) -> None:
    print(dumps(obj))


def _checker_config(args, overrides: dict) -> CheckerConfig:
    known = {f.name for f in fields(CheckerConfig)}
    unknown = set(overrides) - known
    if unknown:
        raise errors.BadParam(f"unknown checker settings {sorted(unknown)}")
    cfg = dict(overrides)
    for flag, key in (("grid_min", "grid_min"), ("grid_max", "grid_max"),
                      ("points", "grid_points"), ("tol", "tolerance"),
                      ("horizon", "limit_horizon")):
        v = getattr(args, flag)
        if v is not None:
            cfg[key] = v
    if args.b is not None:
        cfg["limit_b_values"] = tuple(float(v) for v in args.b.split(","))
    return CheckerConfig(**cfg)


# ------------------------------------------------------------ commands

def cmd_check_fn(args) -> int:
    if (args.spec is None) == (args.plane is None):
        raise UsageError("give exactly one of --spec or --plane")
    if args.spec is not None:
        cfg = _checker_config(args, {})
        reports = [check_strongly_hyperbolic(function_from_spec(load_json(args.spec)), cfg)]
    else:
        cfg = _checker_config(args, _plane_checker(args.plane))
        reports = [check_strongly_hyperbolic(f, cfg) for f in _plane(args.plane).functions]
    out = [r.to_dict() for r in reports]
    _emit(out[0] if len(out) == 1 else out)
    return 0 if all(r.passed for r in reports) else 1


def cmd_join(args) -> int:
    from .incidence import join
    pts = load_json(args.points)
    if not isinstance(pts, list) or len(pts) != 3:
        raise UsageError("--points must be a JSON list of three points")
    _emit(join(_plane(args.plane), *(point_from_json(p) for p in pts)).to_dict())
    return 0


def cmd_touch(args) -> int:
    from .incidence import touch_solve
    plane = _plane(args.plane)
    C = circle_from_json(load_json(args.circle), plane)
    sol = touch_solve(plane, C, point_from_json(load_json(args.p)),
                      point_from_json(load_json(args.q)))
    _emit({"circle": circle_to_json(sol.circle), "case": sol.case, "verified": sol.verified})
    return 0 if sol.verified else 1


def cmd_intersect(args) -> int:
    from .incidence import intersect
    plane = _plane(args.plane)
    C = circle_from_json(load_json(args.c1), plane)
    D = circle_from_json(load_json(args.c2), plane)
    _emit(intersect(C, D).to_dict())
    return 0


def cmd_roots(args) -> int:
    from .rootcraft import analyze_roots, diff_pair
    plane = _plane(args.plane)
    a1, b1, c1, a2, b2, c2 = _floats(args.params, 6)
    f1, f2 = plane.gens(_half(args.half))
    _emit({d.kind: analyze_roots(d).to_dict()
           for d in diff_pair(a1, b1, c1, a2, b2, c2, f1, f2)})
    return 0


def cmd_verify_case_table(args) -> int:
    from .rootcraft import verify_case_table
    f1, f2 = _plane(args.plane).gens(_half(args.half))
    rep = verify_case_table(f1, f2, args.trials, resolve_seed(args.seed),
                            oracle_points=args.oracle_points)
    _emit(rep.to_dict())
    return 0 if rep.passed else 1


def cmd_fuzz(args) -> int:
    from .incidence import fuzz_axioms
    rep = fuzz_axioms(_plane(args.plane), args.trials, resolve_seed(args.seed))
    _emit(rep.to_dict())
    return 0 if rep.passed else 1


def cmd_classify(args) -> int:
    from .classify import classify_plane, normalise
    _emit(classify_plane(normalise(_plane(args.plane))).to_dict())
    return 0


def cmd_isomorphic(args) -> int:
    from .classify import isomorphism_search, normalise
    # normalising only relabels circles, so it cannot change the verdict
    _emit(isomorphism_search(normalise(_plane(args.plane_f)),
                             normalise(_plane(args.plane_g))).to_dict())
    return 0


def cmd_render(args) -> int:
    from .render import render_svg
    plane = _plane(args.plane)
    circles = load_json(args.circles)
    if isinstance(circles, dict):
        circles = [circles]
    cs = [circle_from_json(c, plane) for c in circles]
    pts = [point_from_json(p) for p in load_json(args.points)] if args.points else []
    svg = render_svg(cs, pts, title=args.title or plane.name)
    if args.out:
        Path(args.out).write_text(svg + "\n", encoding="utf-8")
    else:
        print(svg)
    return 0


def cmd_accept(args) -> int:
    from .acceptance import CRITERIA, run
    only = sorted(CRITERIA) if not args.only else [int(v) for v in args.only.split(",")]
    bad = [n for n in only if n not in CRITERIA]
    if bad:
        raise UsageError(f"no criteria {bad}; choose from {sorted(CRITERIA)}")
    results = run(only, resolve_seed(args.seed), echo=lambda line: print(line, file=sys.stderr))
    _emit({"passed": all(r.passed for r in results), "criteria": [r.to_dict() for r in results]})
    return 0 if all(r.passed for r in results) else 1


# ------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="flatmink", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    plane_help = f"plane: one of {sorted(NAMED)}, a JSON object, or a JSON file"

    def cmd(name, fn, help_):
        s = sub.add_parser(name, help=help_)
        s.set_defaults(func=fn)
        return s

    s = cmd("check-fn", cmd_check_fn, "check the strongly hyperbolic conditions")
    s.add_argument("--spec", help="function spec (JSON or file)")
    s.add_argument("--plane", help=plane_help + "; checks all four functions")
    s.add_argument("--grid-min", type=float)
    s.add_argument("--grid-max", type=float)
    s.add_argument("--points", type=int)
    s.add_argument("--tol", type=float)
    s.add_argument("--horizon", type=float, help="x at which limit conditions are evaluated")
    s.add_argument("--b", help="comma-separated translation offsets")

    s = cmd("join", cmd_join, "circle through three points")
    s.add_argument("--plane", required=True, help=plane_help)
    s.add_argument("--points", required=True, help="JSON list of three points")

    s = cmd("touch", cmd_touch, "circle touching C at p through q")
    s.add_argument("--plane", required=True, help=plane_help)
    s.add_argument("--circle", required=True)
    s.add_argument("--p", required=True)
    s.add_argument("--q", required=True)

    s = cmd("intersect", cmd_intersect, "common points of two circles")
    s.add_argument("--plane", required=True, help=plane_help)
    s.add_argument("--c1", required=True)
    s.add_argument("--c2", required=True)

    s = cmd("roots", cmd_roots, "roots of the two branch-difference functions")
    s.add_argument("--plane", required=True, help=plane_help)
    s.add_argument("--params", required=True, help="a1,b1,c1,a2,b2,c2")
    s.add_argument("--half", choices=("neg", "pos"), default="neg")

    s = cmd("verify-case-table", cmd_verify_case_table, "randomized root-count check")
    s.add_argument("--plane", default="classical", help=plane_help)
    s.add_argument("--half", choices=("neg", "pos"), default="neg")
    s.add_argument("--trials", type=int, default=1000)
    s.add_argument("--seed", type=int, default=DEFAULT_SEED)
    s.add_argument("--oracle-points", type=int, default=20000)

    s = cmd("fuzz", cmd_fuzz, "randomized joining/touching axiom checks")
    s.add_argument("--plane", required=True, help=plane_help)
    s.add_argument("--trials", type=int, default=1000)
    s.add_argument("--seed", type=int, default=DEFAULT_SEED)

    s = cmd("classify", cmd_classify, "group dimension and Klein-Kroll type (normalises first)")
    s.add_argument("--plane", required=True, help=plane_help)

    s = cmd("isomorphic", cmd_isomorphic, "isomorphism search between two planes")
    s.add_argument("--plane-f", required=True, help=plane_help)
    s.add_argument("--plane-g", required=True, help=plane_help)

    s = cmd("render", cmd_render, "SVG of circles in the torus chart")
    s.add_argument("--plane", required=True, help=plane_help)
    s.add_argument("--circles", required=True, help="JSON circle or list of circles")
    s.add_argument("--points", help="JSON list of points to mark")
    s.add_argument("--title")
    s.add_argument("--out", help="write to this file instead of stdout")

    s = cmd("accept", cmd_accept, "run the acceptance suite")
    s.add_argument("--only", help="comma-separated criterion numbers")
    s.add_argument("--seed", type=int, default=DEFAULT_SEED)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "trials", 0) is not None and getattr(args, "trials", 0) < 0:
        parser.error("--trials must be non-negative")
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except USAGE_ERRORS as exc:
        print(f"{parser.prog}: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except errors.FlatMinkError as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)})
        return 1


if __name__ == "__main__":
    sys.exit(main())
