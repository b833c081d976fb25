"""Root structure of the difference of two circle branches.

For two negative curves (a1, b1, c1), (a2, b2, c2):

    Check(x) = a1*f1(x+b1) + c1 - a2*f1(x+b2) - c2      on (max(-b1,-b2), inf)
    Hat(x)   = -a1*f2(-x-b1) + c1 + a2*f2(-x-b2) - c2   on (-inf, min(-b1,-b2))

Both reduce to g(t) = A1*F(t+d1) - A2*F(t+d2) + C on t in (0, inf), with
min(d1, d2) = 0 (Check: t = x - left end; Hat: t = right end - x and g = -Hat).
The derivative of g vanishes where h(t) = ln|F'(t+d1)| + ln(A1/A2) - ln|F'(t+d2)|
does, and h is strictly monotone, so g has at most one critical point and at
most two roots. Roots are located by bisection on the monotone pieces.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ._numeric import TINY, sign, solve_offset
from .errors import InvalidParams, NoConvergence
from .functions import ShFunction

CHECK, HAT = "check", "hat"
# |g(t*)| below this multiple of the term magnitudes counts as a double root
TANGENCY_RTOL = 1e-13
# offsets closer than this fraction of the argument are differenced by quadrature
CLOSE_OFFSETS = 1e-3
_GAUSS = 0.5 / math.sqrt(3.0)


def _log(u):
    return math.log(u) if 0 < u < math.inf else (-math.inf if u == 0 else math.inf)


@dataclass(frozen=True)
class OffsetDiff:
    """g(t) = A1*F(t+d1) - A2*F(t+d2) + C for t > 0."""

    A1: float
    d1: float
    A2: float
    d2: float
    C: float
    F: ShFunction
    # magnitude of the constants C was formed from; sets the rounding level
    c_size: float = 0.0

    def __call__(self, t):
        delta = self.d2 - self.d1
        if (isinstance(t, float) and delta != 0 and self.F.analytic_deriv
                and abs(delta) <= CLOSE_OFFSETS * (t + min(self.d1, self.d2))):
            # F(t+d1) - F(t+d2) cancels; integrate F' across the gap instead
            m = t + 0.5 * (self.d1 + self.d2)
            gap = -0.5 * delta * (self.F.deriv(m - _GAUSS * delta)
                                  + self.F.deriv(m + _GAUSS * delta))
            if math.isfinite(gap):
                return self.A1 * gap + (self.A1 - self.A2) * self.F(t + self.d2) + self.C
        return self.A1 * self.F(t + self.d1) - self.A2 * self.F(t + self.d2) + self.C

    def deriv(self, t):
        return self.A1 * self.F.deriv(t + self.d1) - self.A2 * self.F.deriv(t + self.d2)

    def h(self, t):
        """Positive exactly where g is decreasing."""
        u1, u2 = -self.F.deriv(t + self.d1), -self.F.deriv(t + self.d2)
        if math.isinf(u1) and math.isinf(u2):  # both past the overflow point
            return self.h_start_sign() * math.inf
        if u1 == 0 and u2 == 0:  # both underflowed
            return self.h_end_sign() * math.inf
        return _log(u1) + math.log(self.A1 / self.A2) - _log(u2)

    def scale(self, t) -> float:
        return max(abs(self.A1 * self.F(t + self.d1)), abs(self.A2 * self.F(t + self.d2)),
                   abs(self.C), self.c_size)

    def h_end_sign(self) -> int:
        """Sign of h for large t."""
        if self.A1 != self.A2:
            return 1 if self.A1 > self.A2 else -1
        return sign(self.d2 - self.d1)

    def h_start_sign(self) -> int:
        if self.d1 != self.d2:
            return 1 if self.d1 < self.d2 else -1
        return self.h_end_sign()

    def start_sign(self) -> int:
        """Sign of g as t -> 0+."""
        if self.d1 < self.d2:
            return 1
        if self.d1 > self.d2:
            return -1
        if self.A1 != self.A2:
            return 1 if self.A1 > self.A2 else -1
        return sign(self.C)

    def end_sign(self) -> int:
        """Sign of g as t -> inf (the limit is C)."""
        if self.C != 0:
            return sign(self.C)
        # g -> 0 monotonically on the last piece, from the side opposite to g'
        return self.h_end_sign()

    def critical_offset(self) -> Optional[float]:
        s0, s1 = self.h_start_sign(), self.h_end_sign()
        if self.d1 == self.d2 or s0 == s1:
            return None
        return solve_offset(self.h, math.inf, s0, s1)

    def log_ratio(self, t):
        """ln(A1*F(t+d1)) - ln(A2*F(t+d2)), which has the sign of g when C = 0.

        Unlike g it keeps full relative precision when A1 and A2 nearly agree.
        """
        la = math.log1p((self.A1 - self.A2) / self.A2)
        delta = self.d2 - self.d1
        if (delta != 0 and self.F.analytic_deriv
                and abs(delta) <= CLOSE_OFFSETS * (t + min(self.d1, self.d2))):
            m = t + 0.5 * (self.d1 + self.d2)
            lo, hi = m - _GAUSS * delta, m + _GAUSS * delta
            gap = 0.5 * delta * (self.F.deriv(lo) / self.F(lo) + self.F.deriv(hi) / self.F(hi))
            if math.isfinite(gap):
                return la - gap
        return la + _log(self.F(t + self.d1)) - _log(self.F(t + self.d2))

    def _signed(self):
        """A function with the sign of g, and its tangency band at t."""
        if self.C == 0:
            la = abs(math.log1p((self.A1 - self.A2) / self.A2))
            return self.log_ratio, lambda t: TANGENCY_RTOL * la
        return self, lambda t: TANGENCY_RTOL * self.scale(t)

    def _first_root(self, fn, width, s0, s1, clamp):
        try:
            return solve_offset(fn, width, s0, s1)
        except NoConvergence:
            # g has not reached its limiting sign at the smallest offset: the
            # root sits closer to t = 0 than float64 resolves
            if clamp and self.below_resolution():
                return 0.0
            raise

    def below_resolution(self) -> bool:
        """True when g at the smallest offset has not reached its limiting
        sign, or overflows there, so a root next to t = 0 is unresolvable."""
        v = self._signed()[0](TINY)
        return math.isnan(v) or sign(v) != self.start_sign()

    def roots(self, critical: Optional[float] = None, clamp: bool = False) -> list:
        """List of (t, sign_change, derivative_zero).

        With ``clamp`` a root below offset resolution is reported at t = 0.
        """
        s0, s_end = self.start_sign(), self.end_sign()
        if s0 == 0:
            return []  # g is identically zero; excluded by the caller
        fn, band = self._signed()
        if critical is None:
            if s0 == s_end:
                return []
            return [(self._first_root(fn, math.inf, s0, s_end, clamp), True, False)]
        tc = critical
        v = fn(tc)
        if abs(v) <= band(tc):
            return [(tc, False, True)]
        sv = sign(v)
        out = []
        if s0 != sv:
            out.append((self._first_root(fn, tc, s0, sv, clamp), True, False))
        if sv != s_end:
            u = solve_offset(lambda u: fn(tc + u), math.inf, sv, s_end)
            out.append((tc + u, True, False))
        return out


@dataclass(frozen=True)
class DiffFunction:
    kind: str
    a1: float
    b1: float
    c1: float
    a2: float
    b2: float
    c2: float
    f1: ShFunction
    f2: ShFunction

    def __post_init__(self):
        if self.kind not in (CHECK, HAT):
            raise InvalidParams(f"kind must be {CHECK!r} or {HAT!r}")
        if not (self.a1 > 0 and self.a2 > 0):
            raise InvalidParams("a1 and a2 must be positive")
        if (self.a1, self.b1, self.c1) == (self.a2, self.b2, self.c2):
            raise InvalidParams("the two parameter triples coincide")

    @property
    def domain(self) -> tuple:
        if self.kind == CHECK:
            return (max(-self.b1, -self.b2), math.inf)
        return (-math.inf, min(-self.b1, -self.b2))

    def __call__(self, x):
        if self.kind == CHECK:
            return (self.a1 * self.f1(x + self.b1) + self.c1
                    - self.a2 * self.f1(x + self.b2) - self.c2)
        return (-self.a1 * self.f2(-x - self.b1) + self.c1
                + self.a2 * self.f2(-x - self.b2) - self.c2)

    def offset_form(self) -> OffsetDiff:
        size = max(abs(self.c1), abs(self.c2))
        if self.kind == CHECK:
            m = min(self.b1, self.b2)
            return OffsetDiff(self.a1, self.b1 - m, self.a2, self.b2 - m, self.c1 - self.c2,
                              self.f1, size)
        m = max(self.b1, self.b2)
        return OffsetDiff(self.a1, m - self.b1, self.a2, m - self.b2, self.c2 - self.c1,
                          self.f2, size)

    def first_value(self, t: float) -> float:
        """Value of the first curve at offset t, without rounding t into x."""
        g = self.offset_form()
        if self.kind == CHECK:
            return self.a1 * self.f1(t + g.d1) + self.c1
        return -self.a1 * self.f2(t + g.d1) + self.c1

    def to_x(self, t: float) -> float:
        lo, hi = self.domain
        return lo + t if self.kind == CHECK else hi - t

    def reduced(self) -> tuple:
        """(a, b, c) of the single-function form a*f(x+b) + c - f(x)."""
        a, b, c = self.a1 / self.a2, self.b1 - self.b2, (self.c1 - self.c2) / self.a2
        if self.kind == HAT:
            b, c = -b, -c
        return (a, b + 0.0, c + 0.0)


@dataclass
class Root:
    location: float
    sign_change: bool
    derivative_zero: bool
    offset: float = field(default=math.nan, repr=False)


@dataclass
class RootReport:
    kind: str
    roots: list
    case_label: str
    reduced: tuple
    critical: Optional[float] = None

    @property
    def count(self) -> int:
        return len(self.roots)

    @property
    def crossings(self) -> int:
        return sum(r.sign_change for r in self.roots)

    @property
    def tangential(self) -> bool:
        return any(r.derivative_zero for r in self.roots)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "count": self.count, "case_label": self.case_label,
                "reduced": {"a": self.reduced[0], "b": self.reduced[1], "c": self.reduced[2]},
                "critical_point": self.critical,
                "roots": [{"x": r.location, "sign_change": r.sign_change,
                           "derivative_zero": r.derivative_zero} for r in self.roots]}


def critical_point(d: DiffFunction) -> Optional[float]:
    """Unique zero of d' on the domain, if any."""
    g = d.offset_form()
    t = g.critical_offset()
    return None if t is None else d.to_x(t)


def _cmp(v, ref):
    return ">" if v > ref else "<" if v < ref else "="


def case_label(reduced: tuple, roots: list) -> str:
    a, b, c = reduced
    n = len(roots)
    if n == 0:
        what = "no roots"
    elif n == 2:
        what = "two crossing roots"
    elif roots[0].derivative_zero:
        what = "one tangential root"
    else:
        what = "one crossing root"
    family = "one of b, c zero" if (b == 0 or c == 0) else "b, c nonzero"
    return f"{what} [{family}]: a{_cmp(a, 1)}1, b{_cmp(b, 0)}0, c{_cmp(c, 0)}0"


def analyze_roots(d: DiffFunction) -> RootReport:
    g = d.offset_form()
    tc = g.critical_offset()
    roots = [Root(d.to_x(t), sc, dz, t) for t, sc, dz in g.roots(tc, clamp=True)]
    roots.sort(key=lambda r: r.location)
    red = d.reduced()
    return RootReport(d.kind, roots, case_label(red, roots), red,
                      None if tc is None else d.to_x(tc))


def diff_pair(a1, b1, c1, a2, b2, c2, f1, f2) -> tuple:
    return (DiffFunction(CHECK, a1, b1, c1, a2, b2, c2, f1, f2),
            DiffFunction(HAT, a1, b1, c1, a2, b2, c2, f1, f2))


# ------------------------------------------------------------ case table

def single_form_violations(reduced: tuple, rep: RootReport) -> list:
    """Side conditions for a*f(x+b) + c - f(x)."""
    a, b, c = reduced
    n, cross = rep.count, rep.crossings
    bad = []
    if n > 2:
        bad.append("more than two roots")
    if n == 2 and cross != 2:
        bad.append("two roots but not both sign-changing")
    if b == 0 and c == 0:
        if n:
            bad.append("a*f - f has a root")
    elif b == 0 or c == 0:
        expect = (a > 1 and b > 0) or (a > 1 and c < 0) or (a < 1 and b < 0) or (a < 1 and c > 0)
        if n > 1:
            bad.append("more than one root with b or c zero")
        if (n == 1) != expect or (n == 1 and cross != 1):
            bad.append("root existence disagrees with the one-zero clause")
    else:
        if b * c > 0 and not (n == 1 and cross == 1):
            bad.append("bc > 0 without exactly one crossing root")
        if b * c < 0:
            if n == 1 and cross == 1:
                bad.append("bc < 0 with a single crossing root")
            if n and not ((a < 1 and b < 0 and c > 0) or (a > 1 and b > 0 and c < 0)):
                bad.append("roots outside the two-root sign pattern")
    return bad


def joint_violations(params: tuple, check: RootReport, hat: RootReport) -> list:
    """Conditions linking the convex and concave overlaps."""
    a1, b1, c1, a2, b2, c2 = params
    bad = []
    if check.count + hat.count > 2:
        bad.append("check and hat together have more than two roots")
    if (b1 != b2) != (c1 != c2):  # exactly one of b, c differs
        if a1 == a2:
            if check.count or hat.count:
                bad.append("equal a with one shared parameter, yet roots exist")
        elif sorted((check.crossings, hat.crossings)) != [0, 1] or check.tangential or hat.tangential:
            bad.append("expected exactly one crossing in exactly one of check/hat")
    elif b1 != b2 and c1 != c2:
        for one, other in ((check, hat), (hat, check)):
            if one.count == 2 or one.tangential:
                if other.count:
                    bad.append(f"{one.kind} has a double/two roots but {other.kind} has roots")
            elif one.count == 1 and other.count != 1:
                bad.append(f"{one.kind} has one crossing but {other.kind} does not")
    return bad


# ------------------------------------------------------------ randomized verification

@dataclass
class CaseTableReport:
    trials: int
    seed: int
    violations: list = field(default_factory=list)
    oracle_disagreements: list = field(default_factory=list)
    label_counts: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.violations and not self.oracle_disagreements

    def to_dict(self) -> dict:
        return {"trials": self.trials, "seed": self.seed, "passed": self.passed,
                "violations": self.violations,
                "oracle_disagreements": self.oracle_disagreements,
                "label_counts": dict(sorted(self.label_counts.items()))}


# re-evaluated roots must satisfy |g| <= ROOT_ATOL * (1 + |c1 - c2|)
ROOT_ATOL = 1e-9


def verify_case_table(f1: ShFunction, f2: ShFunction, trials: int, seed: int = 42,
                      oracle_points: int = 20000, stream: int = 0) -> CaseTableReport:
    """Random parameter draws checked against the root-count case table and
    against a dense sign-scan oracle."""
    from .oracles import dense_diff_roots
    from .rng import make_rng
    from .sampling import random_params

    rng = make_rng(seed, stream)
    rep = CaseTableReport(int(trials), seed)
    for k in range(int(trials)):
        params = random_params(rng)
        reports = {}
        for d in diff_pair(*params, f1, f2):
            try:
                r = analyze_roots(d)
            except Exception as exc:  # the report carries every failure
                rep.violations.append({"trial": k, "params": params, "kind": d.kind,
                                       "issue": f"{type(exc).__name__}: {exc}"})
                continue
            reports[d.kind] = r
            rep.label_counts[r.case_label] = rep.label_counts.get(r.case_label, 0) + 1
            issues = single_form_violations(r.reduced, r)
            g = d.offset_form()
            tol = ROOT_ATOL * (1 + abs(d.c1 - d.c2))
            for x in r.roots:
                if x.offset == 0.0:  # below resolution: check the bracket instead
                    if not g.below_resolution():
                        issues.append(f"unbracketed root at the asymptote {x.location}")
                elif abs(g(x.offset)) > tol:
                    issues.append(f"residual {g(x.offset):.3g} at root {x.location}")
            rep.violations.extend({"trial": k, "params": params, "kind": d.kind, "issue": m}
                                  for m in issues)
            cross, tang = dense_diff_roots(d, oracle_points)
            if cross + tang != r.count:
                rep.oracle_disagreements.append({"trial": k, "params": params, "kind": d.kind,
                                                 "solver": r.count, "oracle": cross + tang})
        if len(reports) == 2:
            rep.violations.extend({"trial": k, "params": params, "kind": "joint", "issue": m}
                                  for m in joint_violations(params, reports[CHECK], reports[HAT]))
    return rep
