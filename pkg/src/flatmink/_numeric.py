"""Bracketed bisection on open intervals.

Every scalar equation in the package is solved here. Domains are expressed
as offsets ``t`` in ``(0, width)`` from an open end, so arguments close to a
singular end keep full relative precision. Endpoints are never evaluated:
their signs come from known limits.
"""

import math

from .errors import NoConvergence

# geometric probe toward an open end: start at distance 1, multiply by 4
PROBE_FACTOR = 4.0
PROBE_STEPS_OUT = 64
# toward infinity the probe keeps going while values stay representable
HUGE = 1e300
# toward 0 we continue into the subnormal range
TINY = 1e-320


def sign(v):
    if v > 0:
        return 1
    if v < 0:
        return -1
    if v == 0:
        return 0
    raise NoConvergence(f"non-finite value {v!r} during root search")


def midpoint(lo, hi):
    if lo > 0 and hi > PROBE_FACTOR * lo:
        return math.sqrt(lo) * math.sqrt(hi)
    if hi < 0 and lo < PROBE_FACTOR * hi:
        return -math.sqrt(-lo) * math.sqrt(-hi)
    return lo + 0.5 * (hi - lo)


def bisect(fn, lo, hi, sign_lo, max_iter=4000):
    """Bisect ``fn`` on ``(lo, hi)`` where ``fn`` has sign ``sign_lo`` near lo
    and the opposite sign near hi. Runs to floating-point resolution."""
    for _ in range(max_iter):
        mid = midpoint(lo, hi)
        if not lo < mid < hi:
            return mid
        v = fn(mid)
        s = sign(v)
        if s == 0:
            return mid
        if s == sign_lo:
            lo = mid
        else:
            hi = mid
    raise NoConvergence("bisection iteration cap reached")


def probe_down(fn, start, want):
    """Shrink t = start, start/4, ... until sign(fn(t)) == want."""
    t = start
    while t > TINY:
        if sign(fn(t)) == want:
            return t
        t /= PROBE_FACTOR
    raise NoConvergence("no sign change found toward the open end at 0")


def probe_up(fn, start, want):
    t = start
    while t < HUGE:
        if sign(fn(t)) == want:
            return t
        t *= PROBE_FACTOR
    raise NoConvergence("no sign change found toward +infinity")


def probe_toward(fn, start, width, want):
    """Move from ``start`` toward the finite end ``width`` geometrically."""
    gap = width - start
    while True:
        t = width - gap
        if not start <= t < width:
            break
        if sign(fn(t)) == want:
            return t
        gap /= PROBE_FACTOR
        if gap <= 0:
            break
    raise NoConvergence("no sign change found toward the finite open end")


def solve_offset(fn, width, sign0, sign_end):
    """Unique sign change of ``fn`` on ``(0, width)``; width may be ``inf``.

    ``sign0``/``sign_end`` are the signs of the limits at the two open ends.
    Raises NoConvergence if they agree.
    """
    if sign0 == sign_end or sign0 == 0 or sign_end == 0:
        raise NoConvergence("end signs do not bracket a root")
    start = 1.0 if math.isinf(width) else 0.5 * width
    s = sign(fn(start))
    if s == 0:
        return start
    if s == sign0:
        lo = start
        if math.isinf(width):
            hi = probe_up(fn, start * PROBE_FACTOR, sign_end)
        else:
            hi = probe_toward(fn, start, width, sign_end)
    else:
        hi = start
        lo = probe_down(fn, start / PROBE_FACTOR, sign0)
    return bisect(fn, lo, hi, sign0)


def solve_interval(fn, lo, hi, sign_lo):
    """Bisect on a finite open interval whose end signs are known limits."""
    width = hi - lo
    t = solve_offset(lambda u: fn(lo + u), width, sign_lo, -sign_lo)
    return lo + t


def two_sum(a, b):
    """s + e == a + b exactly, with s = fl(a + b)."""
    s = a + b
    bb = s - a
    e = (a - (s - bb)) + (b - bb)
    return s, e


def solve_two_sided(fn2, width, sign_left, sign_right, clamp=False):
    """Unique sign change on (0, width) of a function given in terms of the
    distances (tl, tr) to both ends, tl + tr = width.

    The root is located with whichever distance is smaller as the unknown,
    so roots very close to either end keep full relative precision. With
    ``clamp`` a root closer to an end than the smallest positive double is
    returned with that distance set to 0. Returns (tl, tr).
    """
    half = 0.5 * width
    s = sign(fn2(half, width - half))
    if s == 0:
        return half, width - half
    if s == sign_left:
        fn = lambda r: fn2(width - r, r)
        r = solve_near_zero(fn, half, sign_right, s, clamp)
        return width - r, r
    fn = lambda t: fn2(t, width - t)
    t = solve_near_zero(fn, half, sign_left, s, clamp)
    return t, width - t


def solve_near_zero(fn, width, sign0, sign_end, clamp=True):
    """:func:`solve_offset`, but with ``clamp`` a root below the smallest
    positive double (fn still short of its limiting sign there) is returned as 0."""
    try:
        return solve_offset(fn, width, sign0, sign_end)
    except NoConvergence:
        if clamp:
            v = fn(TINY)
            if math.isnan(v) or sign(v) != sign0:
                return 0.0
        raise
