"""JSON forms of points, circles and planes."""

from __future__ import annotations

import json
import math
from pathlib import Path

from .circles import NEG, POS, Curve, Line, PlaneSpec
from .errors import BadParam
from .torus import TorusPoint, ext


def _num(v: float):
    return "inf" if math.isinf(v) else v


def point_to_json(p: TorusPoint) -> dict:
    return {"x": _num(p.x), "y": _num(p.y)}


def point_from_json(d) -> TorusPoint:
    if isinstance(d, (list, tuple)):
        return TorusPoint(ext(d[0]), ext(d[1]))
    try:
        return TorusPoint(ext(d["x"]), ext(d["y"]))
    except (KeyError, TypeError):
        raise BadParam(f"not a point: {d!r}") from None


def circle_to_json(C) -> dict:
    half = "neg" if C.half == NEG else "pos"
    if isinstance(C, Curve):
        d = {"half": half, "kind": "curve", "a": C.a, "b": C.b, "c": C.c}
        if C.b_lo:
            d["b_lo"] = C.b_lo
        return d
    return {"half": half, "kind": "line", "s": C.s, "t": C.t}


def circle_from_json(d: dict, plane: PlaneSpec | None = None):
    try:
        half = {"neg": NEG, "pos": POS}[d.get("half", "neg")]
        if d["kind"] == "curve":
            C = Curve(d["a"], d["b"], d["c"], half, b_lo=d.get("b_lo", 0.0))
        elif d["kind"] == "line":
            C = Line(d["s"], d["t"], half)
        else:
            raise BadParam(f"unknown circle kind {d['kind']!r}")
    except KeyError as exc:
        raise BadParam(f"circle spec lacks {exc.args[0]}") from None
    except (TypeError, ValueError) as exc:
        raise BadParam(f"bad circle spec {d!r}: {exc}") from None
    return plane.attach(C) if plane is not None else C


def plane_to_json(plane: PlaneSpec) -> dict:
    return plane.to_dict()


def plane_from_json(d: dict) -> PlaneSpec:
    return PlaneSpec.from_dict(d)


def load_json(arg: str):
    """Parse a JSON literal, or read it from a file path."""
    text = arg.strip()
    if text[:1] in "[{":
        return json.loads(text)
    return json.loads(Path(arg).read_text(encoding="utf-8"))


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False, default=_default)


def _default(o):
    if hasattr(o, "to_dict"):
        return o.to_dict()
    if isinstance(o, TorusPoint):
        return point_to_json(o)
    if isinstance(o, (Curve, Line)):
        return circle_to_json(o)
    if hasattr(o, "item"):
        return o.item()
    raise TypeError(f"cannot serialise {type(o).__name__}")
