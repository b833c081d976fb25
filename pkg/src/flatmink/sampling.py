"""Random points, triples and circles for property tests and fuzzing."""

from __future__ import annotations

import math

from .circles import NEG, POS, Curve, PlaneSpec
from .torus import INF, TorusPoint, parallel

COORD = 5.0


def _coord(rng) -> float:
    # mostly moderate values, sometimes close to zero or far out
    u = rng.random()
    if u < 0.8:
        return float(rng.uniform(-COORD, COORD))
    mag = float(10 ** rng.uniform(-2, 1.5))
    return mag if rng.random() < 0.5 else -mag


def log_uniform(rng, lo, hi) -> float:
    return float(math.exp(rng.uniform(math.log(lo), math.log(hi))))


def pairwise_nonparallel(pts) -> bool:
    return all(not parallel(pts[i], pts[j]) for i in range(len(pts)) for j in range(i + 1, len(pts)))


TEMPLATES = {
    1: ("inf-inf", "finite", "finite"),
    2: ("finite", "inf-x", "inf-y"),
    3: ("finite", "finite", "inf-y"),
    4: ("finite", "finite", "inf-x"),
    5: ("finite", "finite", "finite"),
}


def _template_point(rng, role):
    if role == "inf-inf":
        return TorusPoint(INF, INF)
    if role == "inf-x":
        return TorusPoint(INF, _coord(rng))
    if role == "inf-y":
        return TorusPoint(_coord(rng), INF)
    return TorusPoint(_coord(rng), _coord(rng))


def random_triple(rng, typ: int, shuffle: bool = True) -> tuple:
    """Pairwise nonparallel points fitting the coordinate template of ``typ``."""
    while True:
        pts = [_template_point(rng, role) for role in TEMPLATES[typ]]
        if pairwise_nonparallel(pts):
            break
    if shuffle:
        pts = [pts[i] for i in rng.permutation(3)]
    return tuple(pts)


def random_params(rng, special: bool = True) -> tuple:
    """(a1, b1, c1, a2, b2, c2); with ``special`` some draws share a, b or c."""
    a1, a2 = log_uniform(rng, 0.1, 10), log_uniform(rng, 0.1, 10)
    b1, b2 = float(rng.uniform(-3, 3)), float(rng.uniform(-3, 3))
    c1, c2 = float(rng.uniform(-3, 3)), float(rng.uniform(-3, 3))
    if special:
        u = rng.random()
        if u < 0.15:
            b2 = b1
        elif u < 0.30:
            c2 = c1
        elif u < 0.38:
            a2 = a1
        elif u < 0.44:
            a2, b2 = a1, b1
        elif u < 0.50:
            a2, c2 = a1, c1
    if (a1, b1, c1) == (a2, b2, c2):
        c2 += 1.0
    return (a1, b1, c1, a2, b2, c2)


def random_circle(rng, plane: PlaneSpec, half: int | None = None, kind: str | None = None):
    if half is None:
        half = NEG if rng.random() < 0.5 else POS
    if kind is None:
        kind = "line" if rng.random() < 0.2 else "curve"
    if kind == "line":
        s = log_uniform(rng, 0.1, 10) * half
        return plane.line(s, float(rng.uniform(-3, 3)), half)
    return plane.curve(log_uniform(rng, 0.2, 5), float(rng.uniform(-3, 3)),
                       float(rng.uniform(-3, 3)), half)


def random_point_on(rng, C) -> TorusPoint:
    """A finite point of C, at a log-uniform distance from its branch point."""
    centre = C.branch_x() if isinstance(C, Curve) else float(rng.uniform(-3, 3))
    d = log_uniform(rng, 0.02, 20)
    x = centre + (d if rng.random() < 0.5 else -d)
    return TorusPoint(x, C.eval(x))


def random_point_off(rng, C, avoid=()) -> TorusPoint:
    """A point not on C and not parallel to any point of ``avoid``."""
    from .circles import contains
    while True:
        u = rng.random()
        if u < 0.15:
            q = TorusPoint(INF, _coord(rng))
        elif u < 0.3:
            q = TorusPoint(_coord(rng), INF)
        else:
            q = TorusPoint(_coord(rng), _coord(rng))
        if not contains(C, q, 1e-6) and all(not parallel(q, p) for p in avoid):
            return q


def random_touch_config(rng, plane: PlaneSpec, family: str):
    """(C, p, q) with p on C; ``family`` picks where p sits:
    "inf-inf", "vertical" (p = (-b0, inf)), "horizontal" (p = (inf, c0)) or "finite"."""
    if family == "inf-inf":
        C = random_circle(rng, plane, kind="line")
        p = TorusPoint(INF, INF)
    else:
        C = random_circle(rng, plane, kind="curve" if family != "finite" else None)
        if family == "vertical":
            p = C.infinite_points()[0]
        elif family == "horizontal":
            p = C.infinite_points()[1]
        else:
            p = random_point_on(rng, C)
    q = random_point_off(rng, C, avoid=(p,))
    return C, p, q


def params_close(C, D, tol: float) -> bool:
    if type(C) is not type(D) or C.half != D.half:
        return False
    return all(abs(u - v) <= tol * (1 + abs(u)) for u, v in zip(C.params, D.params))

