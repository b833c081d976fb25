"""Brute-force references used to cross-check the structured solvers.

Nothing here shares code with :mod:`rootcraft` or :mod:`incidence`: values
are recomputed from the defining formulas on dense grids, and root counts
come from sign changes plus refinement of near-zero local extrema.
"""

from __future__ import annotations

import math

import numpy as np

from .torus import INF

_GOLD = (math.sqrt(5) - 1) / 2


def _extremum(fn, lo, hi, want_min, iters=120):
    """Golden-section search for a local min (or max) of fn on [lo, hi]."""
    a, b = lo, hi
    x1 = b - _GOLD * (b - a)
    x2 = a + _GOLD * (b - a)
    f1, f2 = fn(x1), fn(x2)
    s = 1.0 if want_min else -1.0
    for _ in range(iters):
        if s * f1 < s * f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - _GOLD * (b - a)
            f1 = fn(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + _GOLD * (b - a)
            f2 = fn(x2)
        if not a < x1 < x2 < b:
            break
    return min(f1, f2) if want_min else max(f1, f2)


def count_sign_roots(fn_vec, ts, band=1e-13, scale_vec=None):
    """Roots of a function sampled at increasing ``ts``.

    Returns (crossings, tangencies). Non-finite samples are dropped. Local
    extrema that stay on one side are refined; if the refined extremum
    crosses zero it adds two crossings, if it lies within the relative
    ``band`` it counts as a tangency.
    """
    ts = np.asarray(ts, dtype=float)
    with np.errstate(all="ignore"):
        v = np.asarray(fn_vec(ts), dtype=float)
        sc = np.abs(v) if scale_vec is None else np.asarray(scale_vec(ts), dtype=float)
    keep = np.isfinite(v)
    ts, v, sc = ts[keep], v[keep], sc[keep]
    if v.size < 3:
        return 0, 0
    s = np.sign(v)
    nz = s != 0
    crossings = int(np.count_nonzero(s[nz][1:] != s[nz][:-1]))
    tangents = 0
    mid = v[1:-1]
    is_min = (mid < v[:-2]) & (mid <= v[2:]) & (mid > 0)
    is_max = (mid > v[:-2]) & (mid >= v[2:]) & (mid < 0)
    # a locally quadratic dip that reaches zero has its sampled extremum no
    # larger than about a third of the bigger neighbour difference
    dip = np.maximum(np.abs(v[:-2] - mid), np.abs(v[2:] - mid))
    # dips at the rounding level of the terms are noise, not extrema
    noise = 64 * np.finfo(float).eps * sc[1:-1]
    worth = (np.abs(mid) <= 2 * dip + band * sc[1:-1]) & (dip > noise)
    scalar = lambda t: float(fn_vec(np.array([t]))[0])
    for k in np.flatnonzero((is_min | is_max) & worth) + 1:
        want_min = bool(v[k] > 0)
        ext = _extremum(scalar, ts[k - 1], ts[k + 1], want_min)
        if abs(ext) <= band * sc[k]:
            tangents += 1
        elif (ext < 0) == want_min:
            crossings += 2
    return crossings, tangents


def dense_diff_roots(d, n=20000, span=(1e-300, 1e15)):
    """Count roots of a Check/Hat difference function on its domain.

    Samples log-spaced offsets t from the finite end of the domain; each
    shifted argument is formed as (end + b) + t so that t stays exact.
    """
    lo, hi = d.domain
    end = lo if d.kind == "check" else hi
    t = np.geomspace(span[0], span[1], n)
    f1, f2 = d.f1, d.f2
    if d.kind == "check":
        u1, u2 = end + d.b1, end + d.b2
        terms = lambda t: (d.a1 * f1(u1 + t), d.a2 * f1(u2 + t))
        vec = lambda t: (lambda p, q: (p - q) + (d.c1 - d.c2))(*terms(t))
    else:
        u1, u2 = -end - d.b1, -end - d.b2
        terms = lambda t: (d.a1 * f2(u1 + t), d.a2 * f2(u2 + t))
        vec = lambda t: (lambda p, q: (q - p) + (d.c1 - d.c2))(*terms(t))

    def scale(t):
        p, q = terms(t)
        return np.maximum(np.maximum(np.abs(p), np.abs(q)), max(abs(d.c1), abs(d.c2)))

    cross, tang = count_sign_roots(vec, t, scale_vec=scale)
    # the end t -> 0+ itself: f(0+) = +inf, so the term whose argument
    # vanishes dominates; a root nearer the end than span[0] shows up as a
    # sign step between this limit and the nearest sample
    with np.errstate(all="ignore"):
        v = np.asarray(vec(t[:256]), dtype=float)
    v = v[np.isfinite(v) & (v != 0)]
    limit = _end_limit_sign(d, u1, u2)
    if v.size and limit and limit != np.sign(v[0]):
        cross += 1
    return cross, tang


def _end_limit_sign(d, u1, u2):
    """Sign of the difference as the offset from the finite end goes to 0+."""
    if u1 == 0 and u2 == 0:
        if d.a1 == d.a2:  # the difference is the constant c1 - c2
            return np.sign(d.c1 - d.c2)
        first = np.sign(d.a1 - d.a2)
    else:
        first = 1.0 if u1 == 0 else -1.0
    return first if d.kind == "check" else -first


# ------------------------------------------------------------ circles

def circle_vec(C, x):
    """Vectorised evaluation of a circle at finite x (branch point -> nan)."""
    return circle_vec_at(C, 0.0, 0.0, np.asarray(x, dtype=float))


def circle_vec_at(C, anchor, lo, t):
    """Evaluate C at x = anchor + lo + t, keeping the offset t exact.

    (anchor, lo) is an unevaluated sum, so t may be far below the spacing
    of doubles near ``anchor``.
    """
    t = np.asarray(t, dtype=float)
    if C.kind == "line":
        return C.s * anchor + (C.s * (lo + t) + C.t)
    f, g = C.gens
    if C.half < 0:
        u = (anchor + C.b) + (lo + C.b_lo) + t
    else:
        u = (C.b - anchor) + (C.b_lo - lo) - t
    with np.errstate(all="ignore"):
        pos = C.a * f(np.where(u > 0, u, 1.0)) + C.c
        neg = -C.a * g(np.where(u < 0, -u, 1.0)) + C.c
    return np.where(u > 0, pos, np.where(u < 0, neg, np.nan))


def _asymptote(C):
    """Exact asymptote as an (anchor, lo) pair, or None for lines."""
    if C.kind == "line":
        return None
    return (-C.b + 0.0, -C.b_lo + 0.0) if C.half < 0 else (C.b, C.b_lo)


def _infinite(C):
    if C.kind == "line":
        return {(INF, INF)}
    return {(_asymptote(C)[0], INF), (INF, C.c)}


# offsets from an asymptote are sampled down to this size
_NEAREST = 1e-300


def _interval_sampler(left, right, per):
    """(params, where) for an interval with at least one infinite end.

    ``where`` maps a log-offset parameter to (anchor, offset).
    """
    if left is None and right is None:
        sig = np.linspace(-28.0, 28.0, 2 * per)
        return sig, lambda s: ((0.0, 0.0), np.sinh(s))
    if right is None:
        sig = np.linspace(math.log(_NEAREST), math.log(1e12) + 3, 2 * per)
        return sig, lambda s: (left, np.exp(s))
    sig = np.linspace(-math.log(1e12) - 3, -math.log(_NEAREST), 2 * per)
    return sig, lambda s: (right, -np.exp(-s))


def dense_intersection_count(C, D, n=100000):
    """Number of intersection points of two circles by dense sampling.

    Each open interval between asymptotes is sampled on a log scale from
    both ends, with offsets taken relative to the exact asymptotes; shared
    infinite points are added by exact comparison.
    """
    shared = len(_infinite(C) & _infinite(D))
    cuts = sorted({u for u in (_asymptote(C), _asymptote(D)) if u is not None},
                  key=lambda e: (e[0], e[1]))
    edges = [None] + cuts + [None]
    per = max(64, n // (2 * (len(edges) - 1)))
    total = 0
    for left, right in zip(edges[:-1], edges[1:]):
        fn, scale, sig = _interval_functions(C, D, left, right, per)
        cross, tang = count_sign_roots(fn, sig, scale_vec=scale)
        total += cross + tang
    return total + shared


def _interval_functions(C, D, left, right, per):
    if left is None or right is None:
        sig, where = _interval_sampler(left, right, per)
    else:
        half = 0.5 * ((right[0] - left[0]) + (right[1] - left[1]))
        top = math.log(half)
        span = top - math.log(_NEAREST)
        sig = np.concatenate([np.linspace(-span, 0.0, per), np.linspace(0.0, span, per)[1:]])

        def where(s):
            s = np.asarray(s, dtype=float)
            # s < 0: offset exp(top + s) from the left end, else from the right
            off_l = np.exp(top + np.minimum(s, 0.0))
            off_r = -np.exp(top - np.maximum(s, 0.0))
            return s < 0, off_l, off_r

        def pair(s):
            side, off_l, off_r = where(s)
            cl, dl = circle_vec_at(C, *left, off_l), circle_vec_at(D, *left, off_l)
            cr, dr = circle_vec_at(C, *right, off_r), circle_vec_at(D, *right, off_r)
            return np.where(side, cl, cr), np.where(side, dl, dr)

        return _diff_and_scale(pair) + (sig,)

    def pair(s):
        anchor, off = where(np.asarray(s, dtype=float))
        return circle_vec_at(C, *anchor, off), circle_vec_at(D, *anchor, off)

    return _diff_and_scale(pair) + (sig,)


def _diff_and_scale(pair):
    def diff(s):
        u, v = pair(s)
        return u - v

    def scale(s):
        u, v = pair(s)
        return np.maximum(np.abs(u), np.abs(v)) + 1.0

    return diff, scale


# ------------------------------------------------------------ classical plane

def classical_join(p1, p2, p3):
    """Circle of the all-1/x plane through three finite points.

    Solves (x - beta)(y - gamma) = k, linear in (gamma, beta, k - beta*gamma).
    Returns ("neg", a, b, c) for k > 0 (negative curve with a = k, b = -beta,
    c = gamma), ("pos", a, b, c) for k < 0, or ("line", s, t) when the three
    points are collinear.
    """
    pts = [(p.x, p.y) for p in (p1, p2, p3)]
    A = np.array([[x, y, 1.0] for x, y in pts])
    rhs = np.array([x * y for x, y in pts])
    (x1, y1), (x2, y2), (x3, y3) = pts
    area = (x2 - x1) * (y3 - y1) - (x3 - x1) * (y2 - y1)
    if area == 0:
        s = (y2 - y1) / (x2 - x1)
        return ("line", s, y1 - s * x1)
    gamma, beta, m = np.linalg.solve(A, rhs)
    k = m + beta * gamma
    if k > 0:
        return ("neg", k, -beta, gamma)
    return ("pos", -k, beta, gamma)


def classical_point_on(params, x):
    kind = params[0]
    if kind == "line":
        return params[1] * x + params[2]
    _, a, b, c = params
    if kind == "neg":
        return a / (x + b) + c
    return a / (b - x) + c

