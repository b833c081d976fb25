"""Joining, intersecting and touching circles.

All solvers work on the negative half with generators (F, G) = (f1, f2).
Positive-half requests are mirrored by x -> -x and solved over (f3, f4).
Configurations are first moved to a standard position (translation, and
the point reflection (x, y) -> (-x, -y) which swaps F and G), which leaves
a single scalar equation with a unique root and known end signs.
"""

from __future__ import annotations

import math
import sys
import warnings
from dataclasses import dataclass, field

from ._numeric import sign, solve_near_zero, solve_offset, solve_two_sided, two_sum
from .circles import NEG, POS, Curve, Line, PlaneSpec, contains, residual
from .errors import (ConditioningWarning, IdenticalCircles, NotAdmissibleForEitherHalf,
                     ParallelPoints, PointNotOnCircle, PointOnCircle)
from .functions import invert
from .rootcraft import TANGENCY_RTOL, analyze_roots, diff_pair
from .torus import INF, TorusPoint, is_inf, joining_half, parallel, position_type

RESIDUAL_TOL = 1e-6


def _pt(p) -> TorusPoint:
    if isinstance(p, TorusPoint):
        return p
    if isinstance(p, dict):
        return TorusPoint(p["x"], p["y"])
    return TorusPoint(*p)


def _reflect_params(res):
    kind, params = res
    if kind == "curve":
        a, (hi, lo), c = params
        return ("curve", (a, (-hi, -lo), -c))
    s, t = params
    return ("line", (s, -t))


def _sum(u, v, lo=0.0):
    """Branch offset u + v (+ lo) as a (hi, lo) pair."""
    hi, e = two_sum(u, v)
    return (hi, e + lo)


def _build(plane: PlaneSpec, half: int, res) -> "Curve | Line":
    kind, params = res
    if kind == "curve":
        a, (b, b_lo), c = params
        return Curve(a, b, c, half, plane.gens(half), b_lo)
    s, t = params
    return plane.line(s if half == NEG else -s, t, half=half)


# ------------------------------------------------------------ join

@dataclass
class JoinSolution:
    circle: object
    residuals: tuple
    case_trace: dict = field(default_factory=dict)
    ill_conditioned: bool = False

    def to_dict(self) -> dict:
        from .serialize import circle_to_json
        return {"circle": circle_to_json(self.circle), "residuals": list(self.residuals),
                "case_trace": self.case_trace, "ill_conditioned": self.ill_conditioned}


def _line_through(p, q):
    s = (q.y - p.y) / (q.x - p.x)
    return ("line", (s, p.y - s * p.x))


def _branch_value(F, G, u):
    """Value of the unit curve (1, 0, 0) at u (u != 0)."""
    return F(u) if u > 0 else -G(-u)


def _join_type2(p1, p2, p3, F, G):
    b, c = -p3.x, p2.y
    a = (p1.y - c) / _branch_value(F, G, p1.x - p3.x)
    if not a > 0:
        raise NotAdmissibleForEitherHalf("type 2 triple is not orientation reversing")
    return ("curve", (a, (b, 0.0), c)), "type2"


def _join_type3(p1, p2, p3, F, G):
    g1 = _branch_value(F, G, p1.x - p3.x)
    g2 = _branch_value(F, G, p2.x - p3.x)
    a = (p1.y - p2.y) / (g1 - g2)
    if not a > 0:
        raise NotAdmissibleForEitherHalf("type 3 triple is not orientation reversing")
    return ("curve", (a, (-p3.x, 0.0), p1.y - a * g1)), "type3"


def _join_type4(p1, p2, p3, F, G, depth=0):
    c = p3.y
    e1, e2 = p1.y - c, p2.y - c
    if e1 < 0 and e2 < 0:
        if depth:
            raise NotAdmissibleForEitherHalf("type 4 standard position not reached")
        res, case = _join_type4(p1.reflected(), p2.reflected(), p3.reflected(), G, F, depth + 1)
        return _reflect_params(res), case + "-reflected"
    if e1 > 0 and e2 > 0:
        if p1.x > p2.x:
            p1, p2, e1, e2 = p2, p1, e2, e1
        if not e1 > e2:
            raise NotAdmissibleForEitherHalf("type 4 triple is not orientation reversing")
        w = p2.x - p1.x
        target = math.log(e1 / e2)
        # ln F(beta) - ln F(beta + w) falls from +inf to 0
        phi = lambda beta: math.log(F(beta)) - math.log(F(beta + w)) - target
        beta = solve_offset(phi, math.inf, 1, -1)
        return ("curve", (e1 / F(beta), _sum(beta, -p1.x), c)), "type4/convex"
    # one point on each branch, the concave one left of the branch point
    lo, hi = (p1, p2) if e1 < 0 else (p2, p1)
    el, eh = lo.y - c, hi.y - c
    if not lo.x < hi.x:
        raise NotAdmissibleForEitherHalf("type 4 triple is not orientation reversing")
    target = math.log(-eh / el)
    # distances tl, tr from the branch point to lo and hi
    fn = lambda tl, tr: math.log(F(tr)) - math.log(G(tl)) - target
    tl, tr = solve_two_sided(fn, hi.x - lo.x, -1, 1, clamp=True)
    b = _sum(-lo.x, -tl) if tl <= tr else _sum(-hi.x, tr)
    # tr = 0 means F(tr) overflowed; G(tl) carries the scale instead
    a = eh / F(tr) if tr > 0 else -el / G(tl)
    return ("curve", (a, b, c)), "type4/mixed"


# points within this many units of rounding of a common line are joined by it
COLLINEAR_ULPS = 8


def _collinear(q1, q2, q3) -> bool:
    """q2 lies on the chord q1 q3 up to the rounding of the coordinates
    (q1.x < q2.x < q3.x)."""
    X2, X3 = q2.x - q1.x, q3.x - q1.x
    dev = (q2.y - q1.y) - (q3.y - q1.y) * (X2 / X3)
    slope = abs((q3.y - q1.y) / X3)
    noise = sum(abs(q.y) + slope * abs(q.x) for q in (q1, q2, q3))
    return abs(dev) <= COLLINEAR_ULPS * sys.float_info.epsilon * noise


def _join_type5(p1, p2, p3, F, G, depth=0):
    q1, q2, q3 = sorted((p1, p2, p3), key=lambda p: p.x)
    X2, X3 = q2.x - q1.x, q3.x - q1.x
    Y2, Y3 = q2.y - q1.y, q3.y - q1.y

    def reflected(label):
        if depth:
            raise NotAdmissibleForEitherHalf("type 5 standard position not reached")
        res, _ = _join_type5(p1.reflected(), p2.reflected(), p3.reflected(), G, F, depth + 1)
        return _reflect_params(res), label

    if _collinear(q1, q2, q3):
        return _line_through(q1, q3), "type5/collinear"
    if Y2 < 0 and Y3 < Y2:
        if Y2 > Y3 * X2 / X3:
            return reflected("type5/case4")
        # all three on the convex branch, branch point at distance beta left of q1
        target = (Y3 - Y2) / Y2
        phi = lambda b: (F(X3 + b) - F(X2 + b)) / (F(X2 + b) - F(b)) - target
        beta = solve_near_zero(phi, math.inf, -1, 1)
        # beta = 0 means F(beta) overflowed; recover its value from phi = 0
        f0 = F(beta) if beta > 0 else F(X2) - (F(X3) - F(X2)) / target
        a = Y2 / (F(X2 + beta) - f0)
        return ("curve", (a, _sum(beta, -q1.x), q1.y - a * f0)), "type5/case1"
    if Y2 > 0 and 0 < Y3 < Y2:
        # q1 on the concave branch; branch point at distance tl right of q1
        ratio = Y3 / Y2
        X32 = q3.x - q2.x
        fn = lambda tl, tr: (F(X32 + tr) + G(tl)) / (F(tr) + G(tl)) - ratio
        tl, tr = solve_two_sided(fn, X2, 1, -1, clamp=True)
        if tl > 0:
            g = G(tl)
        else:  # G(tl) is past overflow; recover its value from fn = 0
            g = (ratio * F(tr) - F(X32 + tr)) / (1.0 - ratio)
        a = Y2 / (F(tr) + g) if tr > 0 else Y3 / (F(X32) + g)
        b = _sum(-tl, -q1.x) if tl <= tr else _sum(tr, -q2.x)
        return ("curve", (a, b, q1.y + a * g)), "type5/case2"
    if Y2 < 0 < Y3:
        return reflected("type5/case3")
    raise NotAdmissibleForEitherHalf("type 5 triple is not orientation reversing")


def _join_negative(typ, pts, F, G):
    p1, p2, p3 = pts
    if typ == 1:
        return _line_through(p2, p3), "type1"
    if typ == 2:
        return _join_type2(p1, p2, p3, F, G)
    if typ == 3:
        return _join_type3(p1, p2, p3, F, G)
    if typ == 4:
        return _join_type4(p1, p2, p3, F, G)
    return _join_type5(p1, p2, p3, F, G)


def join(plane: PlaneSpec, p1, p2, p3) -> JoinSolution:
    """The unique circle through three pairwise nonparallel points."""
    pts = tuple(_pt(p) for p in (p1, p2, p3))
    half = joining_half(*pts)
    adm = position_type(pts)
    arranged = adm.arrange(pts)
    if half == POS:
        arranged = tuple(p.mirrored() for p in arranged)
    F, G = plane.gens(half)
    res, case = _join_negative(adm.type, arranged, F, G)
    circle = _build(plane, half, res)
    res_vals = tuple(residual(circle, p) for p in pts)
    bad = max(res_vals) > RESIDUAL_TOL
    if bad:
        warnings.warn(f"join residual {max(res_vals):.3g} exceeds {RESIDUAL_TOL}", ConditioningWarning)
    trace = {"half": "neg" if half == NEG else "pos", "type": adm.type,
             "case": case, "perm": list(adm.perm)}
    return JoinSolution(circle, res_vals, trace, bad)


# ------------------------------------------------------------ intersect

@dataclass
class IntersectionSet:
    points: list
    tangential: bool

    @property
    def size(self) -> int:
        return len(self.points)

    def to_dict(self) -> dict:
        from .serialize import point_to_json
        return {"points": [point_to_json(p) for p in self.points], "size": self.size,
                "tangential": self.tangential}


def _bowl_roots(m, dm, width, scale):
    """Roots of a strictly convex m on (0, width) that blows up at both ends.

    Returns a list of (t, tangential).
    """
    tm = solve_offset(dm, width, -1, 1)
    v = m(tm)
    if abs(v) <= TANGENCY_RTOL * scale(tm):
        return [(tm, True)]
    if v > 0:
        return []
    left = solve_offset(m, tm, 1, -1)
    right = tm + solve_offset(lambda u: m(tm + u), width - tm, -1, 1)
    return [(left, False), (right, False)]


def _curve_curve(C1, C2):
    F, G = C1.gens
    a1, b1, c1 = C1.params
    a2, b2, c2 = C2.params
    pts, tangent = [], []
    if b1 == b2:
        pts.append(TorusPoint(-b1, INF))
        tangent.append(True)
    if c1 == c2:
        pts.append(TorusPoint(INF, c1))
        tangent.append(True)
    for d in diff_pair(a1, b1, c1, a2, b2, c2, F, G):
        for r in analyze_roots(d).roots:
            # y from the offset: the root may be closer to an asymptote than x resolves
            pts.append(TorusPoint(r.location, d.first_value(r.offset)))
            tangent.append(r.derivative_zero)
    if b1 != b2:
        # convex branch of one curve against the concave branch of the other
        (A, B, Cc), (A2, B2, Cc2) = ((a1, b1, c1), (a2, b2, c2)) if b1 > b2 else \
            ((a2, b2, c2), (a1, b1, c1))
        W = B - B2
        m = lambda t: A * F(t) + A2 * G(W - t) + Cc - Cc2
        dm = lambda t: A * F.deriv(t) - A2 * G.deriv(W - t)
        sc = lambda t: max(A * F(t), A2 * G(W - t), abs(Cc), abs(Cc2))
        for t, tan in _bowl_roots(m, dm, W, sc):
            pts.append(TorusPoint(-B + t, A * F(t) + Cc))
            tangent.append(tan)
    return pts, tangent


def _line_curve(L, C):
    F, G = C.gens
    a, b, c = C.params
    s, t0 = L.params
    pts, tangent = [], []
    branches = ((F, c + s * b - t0, lambda u: u - b, lambda u: a * F(u) + c),
                (G, t0 - s * b - c, lambda u: -u - b, lambda u: c - a * G(u)))
    for H, K, to_x, y_at in branches:
        m = lambda u, H=H, K=K: a * H(u) - s * u + K
        dm = lambda u, H=H: a * H.deriv(u) - s
        size = max(abs(c), abs(s * b), abs(t0))
        sc = lambda u, H=H, K=K: max(a * H(u), abs(s * u), abs(K), size)
        for u, tan in _bowl_roots(m, dm, math.inf, sc):
            pts.append(TorusPoint(to_x(u), y_at(u)))
            tangent.append(tan)
    return pts, tangent


def _line_line(L1, L2):
    pts, tangent = [TorusPoint(INF, INF)], [True]
    if L1.s != L2.s:
        x = (L2.t - L1.t) / (L1.s - L2.s)
        pts.append(TorusPoint(x, L1.eval(x)))
        tangent = [False, False]
    return pts, tangent


def _cross_half(N, P):
    """N negative, P positive: N - P decreases between consecutive asymptotes.

    Points are located by offsets from the exact asymptotes, since roots can
    sit closer to an asymptote than doubles near it resolve.
    """
    pts = []
    cuts = sorted({C.asymptote() for C in (N, P) if isinstance(C, Curve)})
    if not cuts:
        x = (P.t - N.t) / (N.s - P.s)
        return [TorusPoint(INF, INF), TorusPoint(x, N.eval(x))]
    diff = lambda cut, t: N.eval_offset(*cut, t) - P.eval_offset(*cut, t)
    point = lambda cut, t: TorusPoint(cut[0] + (cut[1] + t), N.eval_offset(*cut, t))
    shared = set(N.infinite_points()) & set(P.infinite_points())
    pts.extend(sorted(shared, key=lambda p: (p.x, p.y)))
    both_curves = isinstance(N, Curve) and isinstance(P, Curve)
    if both_curves and N.c == P.c:
        s_left, s_right = -1, 1
    elif both_curves:
        s_left = s_right = sign(N.c - P.c)
    else:
        s_left, s_right = 1, -1
    if s_left > 0:
        t = solve_offset(lambda t: diff(cuts[0], -t), math.inf, -1, 1)
        pts.append(point(cuts[0], -t))
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        width = (hi[0] - lo[0]) + (hi[1] - lo[1])
        fn2 = lambda tl, tr, lo=lo, hi=hi: diff(lo, tl) if tl <= tr else diff(hi, -tr)
        tl, tr = solve_two_sided(fn2, width, 1, -1)
        pts.append(point(lo, tl) if tl <= tr else point(hi, -tr))
    if s_right < 0:
        t = solve_offset(lambda t: diff(cuts[-1], t), math.inf, 1, -1)
        pts.append(point(cuts[-1], t))
    return pts


def _sort_key(p):
    return (p.x, p.y)


def intersect(C, D) -> IntersectionSet:
    """Common points of two circles of one plane."""
    if type(C) is type(D) and C.half == D.half and C.params == D.params:
        raise IdenticalCircles(f"{C} and {D} coincide")
    if C.half != D.half:
        N, P = (C, D) if C.half == NEG else (D, C)
        pts = _cross_half(N, P)
        return IntersectionSet(sorted(pts, key=_sort_key), False)
    flip = C.half == POS
    A, B = (C.mirrored(), D.mirrored()) if flip else (C, D)
    if isinstance(A, Line) and isinstance(B, Line):
        pts, tan = _line_line(A, B)
    elif isinstance(A, Line):
        pts, tan = _line_curve(A, B)
    elif isinstance(B, Line):
        pts, tan = _line_curve(B, A)
    else:
        pts, tan = _curve_curve(A, B)
    if flip:
        pts = [p.mirrored() for p in pts]
    tangential = len(pts) == 1 and tan[0]
    return IntersectionSet(sorted(pts, key=_sort_key), tangential)


# ------------------------------------------------------------ touch

def _touch_finite(s, p, q, F, G, depth=0):
    """Negative circle through the finite point p with slope s there, and through q.

    q has at least one finite coordinate and is not parallel to p. The
    configuration is read relative to p; cases that put p on the concave
    branch are reflected through the origin.
    """
    def reflected():
        if depth:
            raise NotAdmissibleForEitherHalf("touch standard position not reached")
        res, case = _touch_finite(s, p.reflected(), q.reflected(), G, F, depth + 1)
        return _reflect_params(res), case + "-reflected"

    def through_p(beta, b):
        a = s / F.deriv(beta)
        return ("curve", (a, b, p.y - a * F(beta)))

    if is_inf(q.y):  # branch point at q.x, left of p
        if q.x > p.x:
            return reflected()
        return through_p(p.x - q.x, (-q.x, 0.0)), "finite/q-vertical"
    Yq = q.y - p.y
    if is_inf(q.x):  # c = q.y, below p
        if Yq > 0:
            return reflected()
        target = -s / Yq
        phi = lambda b: F.deriv(b) / F(b) - target
        beta = solve_offset(phi, math.inf, -1, 1)
        return ("curve", (-Yq / F(beta), _sum(beta, -p.x), q.y)), "finite/q-horizontal"
    Xq = q.x - p.x
    if Yq == s * Xq:
        return ("line", (s, p.y - s * p.x)), "finite/on-tangent-line"
    if Xq < 0 and Yq < 0:
        # q on the concave branch; tl, tr = distances of the branch point to p, q
        target = -Yq / s
        fn = lambda tl, tr: (G(tr) + F(tl)) / F.deriv(tl) - target
        tl, tr = solve_two_sided(fn, -Xq, 1, -1)
        b = _sum(tl, -p.x) if tl <= tr else _sum(-q.x, -tr)
        return through_p(tl, b), "finite/opposite-branches"
    if (Xq > 0 and Yq > 0) or Yq < s * Xq:
        return reflected()
    # q above the tangent line in a mixed-sign quadrant: same branch as p,
    # branch point at distance tau beyond the nearer of p, q
    target = Yq / s
    near_q = Xq < 0
    dq, dp = (0.0, -Xq) if near_q else (Xq, 0.0)
    phi = lambda tau: (F(dq + tau) - F(dp + tau)) / F.deriv(dp + tau) - target
    tau = solve_offset(phi, math.inf, -1, 1)
    b = _sum(tau, -q.x) if near_q else _sum(tau, -p.x)
    return through_p(dp + tau, b), "finite/same-branch"


def _touch_negative(C, p, q, F, G):
    if is_inf(p.x) and is_inf(p.y):
        s = C.s
        return ("line", (s, q.y - s * q.x)), "at-infinity-infinity"
    if is_inf(p.y):  # p = (-b0, inf)
        a0, b0, _ = C.params
        if is_inf(q.x):
            c = q.y
        else:
            u = C._offset(q.x)
            c = q.y - a0 * (F(u) if u > 0 else -G(-u))
        return ("curve", (a0, (b0, C.b_lo), c)), "at-vertical-asymptote"
    if is_inf(p.x):  # p = (inf, c0)
        a0, _, c0 = C.params
        if is_inf(q.y):
            b = (-q.x, 0.0)
        elif q.y > c0:
            b = _sum(invert(F, (q.y - c0) / a0), -q.x)
        else:
            b = _sum(-q.x, -invert(G, (c0 - q.y) / a0))
        return ("curve", (a0, b, c0)), "at-horizontal-asymptote"
    return _touch_finite(C.slope(p.x), p, q, F, G)


@dataclass
class TouchSolution:
    circle: object
    case: str
    verified: bool


def touch_solve(plane: PlaneSpec, C, p, q) -> TouchSolution:
    p, q = _pt(p), _pt(q)
    C = plane.attach(C)
    if not contains(C, p):
        raise PointNotOnCircle(f"{p} is not on {C}")
    if contains(C, q):
        raise PointOnCircle(f"{q} is already on {C}")
    if parallel(p, q):
        raise ParallelPoints(f"{p} and {q} are parallel")
    half = C.half
    F, G = plane.gens(half)
    if half == POS:
        res, case = _touch_negative(C.mirrored(), p.mirrored(), q.mirrored(), F, G)
    else:
        res, case = _touch_negative(C, p, q, F, G)
    D = _build(plane, half, res)
    ok = _touch_verified(C, D, p)
    if not ok:
        warnings.warn(f"touching circle {D} does not meet {C} only at {p}", ConditioningWarning)
    return TouchSolution(D, case, ok)


def _close(p, q, tol=1e-7):
    if is_inf(p.x) != is_inf(q.x) or is_inf(p.y) != is_inf(q.y):
        return False
    return all(is_inf(u) or abs(u - v) <= tol * (1 + abs(u)) for u, v in zip(p, q))


def _touch_verified(C, D, p) -> bool:
    try:
        inter = intersect(C, D)
    except IdenticalCircles:
        return False
    return inter.size == 1 and _close(inter.points[0], p)


def touch(plane: PlaneSpec, C, p, q):
    """The circle through p and q that meets C only at p."""
    return touch_solve(plane, C, p, q).circle


# ------------------------------------------------------------ randomized axiom checks

# joins of two overlapping triples of concircular points must agree this closely
UNIQUE_RTOL = 1e-8
TOUCH_FAMILIES = ("inf-inf", "vertical", "horizontal", "finite")
AXIOMS = ("J-exist", "J-unique", "T-exist", "T-unique", "Cap")


@dataclass
class FuzzReport:
    trials: int
    seed: int
    violations: list = field(default_factory=list)
    checks: dict = field(default_factory=lambda: {k: 0 for k in AXIOMS})

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {"trials": self.trials, "seed": self.seed, "passed": self.passed,
                "checks": self.checks, "violations": self.violations}


def concircular_points(rng, D, n=4) -> list:
    """n pairwise nonparallel points of D, sometimes including infinite ones."""
    from .sampling import random_point_on
    pool = list(D.infinite_points()) if rng.random() < 0.3 else []
    pts = []
    for p in pool[: int(rng.integers(0, len(pool) + 1))]:
        pts.append(p)
    while len(pts) < n:
        q = random_point_on(rng, D)
        if all(not parallel(q, p) for p in pts):
            pts.append(q)
    return [pts[i] for i in rng.permutation(n)]


def _quiet(fn, *args):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ConditioningWarning)
        return fn(*args)


def fuzz_axioms(plane: PlaneSpec, trials: int, seed: int = 42, stream: int = 0) -> FuzzReport:
    """Randomized check of joining and touching existence and uniqueness,
    and of the two-point intersection cap for same-half pairs."""
    from .rng import make_rng
    from .sampling import (params_close, random_circle, random_point_on,
                           random_touch_config, random_triple)

    rng = make_rng(seed, stream)
    rep = FuzzReport(int(trials), seed)

    def check(axiom, k, fn):
        rep.checks[axiom] += 1
        try:
            detail = fn()
        except Exception as exc:  # the report carries every failure
            detail = f"{type(exc).__name__}: {exc}"
        if detail:
            rep.violations.append({"axiom": axiom, "trial": k, "detail": detail})

    for k in range(int(trials)):
        def j_exist():
            pts = random_triple(rng, int(rng.integers(1, 6)))
            sol = _quiet(join, plane, *pts)
            if max(sol.residuals) > RESIDUAL_TOL:
                return f"residual {max(sol.residuals):.3g} joining {pts}"

        def j_unique():
            D = random_circle(rng, plane)
            p1, p2, p3, p4 = concircular_points(rng, D)
            E1 = _quiet(join, plane, p1, p2, p3).circle
            E2 = _quiet(join, plane, p1, p2, p4).circle
            if not params_close(E1, E2, UNIQUE_RTOL):
                return f"{E1} and {E2} both pass through points of {D}"

        def t_exist_unique():
            C, p, q = random_touch_config(rng, plane, TOUCH_FAMILIES[k % 4])
            sol = _quiet(touch_solve, plane, C, p, q)
            if not sol.verified:
                return f"touch({C}, {p}, {q}) gave {sol.circle}, not tangent", None
            D = sol.circle
            for _ in range(50):
                q2 = random_point_on(rng, D)
                if not parallel(q2, p) and not contains(C, q2, 1e-6):
                    break
            else:
                return None, None
            return None, (C, p, q2, D)

        check("J-exist", k, j_exist)
        check("J-unique", k, j_unique)
        resolve = []

        def t_exist():
            detail, again = t_exist_unique()
            resolve.append(again)
            return detail

        check("T-exist", k, t_exist)
        if resolve and resolve[0] is not None:
            C, p, q2, D = resolve[0]

            def t_unique():
                D2 = _quiet(touch_solve, plane, C, p, q2).circle
                if not params_close(D, D2, UNIQUE_RTOL):
                    return f"{D} and {D2} both touch {C} at {p}"

            check("T-unique", k, t_unique)

        def cap():
            half = NEG if rng.random() < 0.5 else POS
            C, D = random_circle(rng, plane, half), random_circle(rng, plane, half)
            if C == D:
                return None
            n = intersect(C, D).size
            if n > 2:
                return f"{C} and {D} meet in {n} points"

        check("Cap", k, cap)
    return rep
