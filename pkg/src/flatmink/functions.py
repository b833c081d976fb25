"""Strongly hyperbolic functions: catalog, numerical checker, inversion.

A strongly hyperbolic function f: R+ -> R+ blows up at 0, vanishes at
infinity, is strictly convex and differentiable, satisfies
f(x+b)/f(x) -> 1 for every b, and has ln|f'| strictly convex.
Only the last four of these can be probed on a finite grid, and the two
limit conditions only as trends; the checker reports residuals, not proofs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import BadParam, DomainError, NoConvergence, UnknownName

_EPS = np.finfo(float).eps
# values below this are treated as underflowed and skipped by the checker
_RESOLVED = 1e-280


def _dual(math_fn, np_fn):
    """Use ``math`` on scalars (fast) and numpy on arrays."""
    def fn(x):
        if isinstance(x, (float, int)):
            return math_fn(x)
        return np_fn(np.asarray(x, dtype=float))
    return fn


@dataclass(eq=False)
class ShFunction:
    """A candidate strongly hyperbolic function.

    ``f`` and ``df`` must accept floats and numpy arrays. ``inv`` is optional;
    without it :meth:`inverse` falls back to bisection.
    """

    name: str
    f: Callable
    df: Optional[Callable] = None
    inv: Optional[Callable] = None
    params: dict = field(default_factory=dict)
    spec: Optional[dict] = None

    def __call__(self, x):
        try:
            return self.f(x)
        except (OverflowError, ZeroDivisionError):
            return math.inf  # f blows up at 0+

    def __repr__(self):
        inner = ", ".join(f"{k}={v}" for k, v in self.params.items())
        return f"ShFunction({self.name}{', ' if inner else ''}{inner})"

    @property
    def analytic_deriv(self) -> bool:
        return self.df is not None

    def deriv(self, x):
        if self.df is None:
            return numeric_deriv(self.f, x)
        try:
            return self.df(x)
        except (OverflowError, ZeroDivisionError):
            return -math.inf

    def inverse(self, y):
        if self.inv is not None:
            return self.inv(y)
        if isinstance(y, (float, int)):
            return float(_bisect_inverse(self.f, np.array([float(y)]))[0])
        return _bisect_inverse(self.f, np.asarray(y, dtype=float))

    def rescaled(self, x_scale: float = 1.0, y_scale: float = 1.0) -> "ShFunction":
        """x -> y_scale * f(x / x_scale)."""
        if x_scale == 1.0 and y_scale == 1.0:
            return self
        base = self
        r, k = float(x_scale), float(y_scale)
        f = lambda x: k * base.f(x / r)
        df = lambda x: (k / r) * base.deriv(x / r)
        inv = lambda y: r * base.inverse(y / k)
        spec = None if self.spec is None else \
            {"kind": "rescaled", "base": self.to_spec(), "x_scale": r, "y_scale": k}
        return ShFunction(f"{self.name}~", f, df, inv, dict(self.params), spec)

    def scaled(self, k: float) -> "ShFunction":
        return self.rescaled(1.0, k)

    def inverted(self) -> "ShFunction":
        """The inverse function f^{-1} (not necessarily strongly hyperbolic)."""
        base = self
        df = lambda y: 1.0 / base.deriv(base.inverse(y))
        spec = None if self.spec is None else {"kind": "inverse", "base": self.to_spec()}
        return ShFunction(f"{self.name}^-1", base.inverse, df, base.f, dict(self.params), spec)

    def to_spec(self) -> dict:
        if self.spec is None:
            raise ValueError(f"{self.name} was built from a callable and has no JSON form")
        return dict(self.spec)


def numeric_deriv(f, x, rel_step: float = 1e-6):
    """Symmetric difference with step h = x * rel_step."""
    h = np.asarray(x, dtype=float) * rel_step if not isinstance(x, (float, int)) else x * rel_step
    return (f(x + h) - f(x - h)) / (2 * h)


def from_callable(name: str, fn: Callable, inverse: Optional[Callable] = None) -> ShFunction:
    """Wrap a black-box function; its derivative is numerical."""
    return ShFunction(name, fn, None, inverse, {}, None)


def _bisect_inverse(f, y, max_iter=3000):
    """Vectorised bisection for f(x) = y with f a decreasing bijection of R+."""
    y = np.asarray(y, dtype=float)
    if np.any(~(y > 0)) or np.any(~np.isfinite(y)):
        raise DomainError("inverse needs finite y > 0")
    lo = np.ones_like(y)
    hi = np.ones_like(y)
    with np.errstate(all="ignore"):
        for _ in range(2100):
            m = f(lo) <= y
            if not m.any():
                break
            lo[m] *= 0.5
        else:
            raise NoConvergence("could not bracket the inverse toward 0")
        for _ in range(2100):
            m = f(hi) >= y
            if not m.any():
                break
            hi[m] *= 2.0
        else:
            raise NoConvergence("could not bracket the inverse toward infinity")
        for _ in range(max_iter):
            geo = hi > 4 * lo
            mid = np.where(geo, np.sqrt(lo) * np.sqrt(hi), lo + 0.5 * (hi - lo))
            active = (mid > lo) & (mid < hi)
            if not active.any():
                break
            above = f(mid) > y
            lo = np.where(active & above, mid, lo)
            hi = np.where(active & ~above, mid, hi)
        x = np.where(np.abs(f(lo) - y) <= np.abs(f(hi) - y), lo, hi)
    return x


def invert(f: ShFunction, y: float, rtol: float = 1e-12) -> float:
    """x > 0 with f(x) = y; analytic inverse when known, bisection otherwise."""
    if not y > 0:
        raise DomainError(f"invert needs y > 0, got {y}")
    x = float(f.inverse(float(y)))
    if not (x > 0 and abs(float(f(x)) - y) <= rtol * max(1.0, y)):
        # analytic inverses can lose digits; polish once by bisection
        x = float(_bisect_inverse(f.f, np.array([float(y)]))[0])
        if abs(float(f(x)) - y) > rtol * max(1.0, y):
            raise NoConvergence(f"inverse of {f.name} at {y} did not converge")
    return x


# ---------------------------------------------------------------- catalog

def _positive_int(name, v):
    if isinstance(v, bool) or not float(v).is_integer() or int(v) < 1:
        raise BadParam(f"{name} must be a positive integer, got {v!r}")
    return int(v)


def _neg_power(p, k=1.0):
    """x -> k * x**-p, infinite instead of raising where it overflows."""
    def scalar(x):
        try:
            return k * x ** -p
        except (OverflowError, ZeroDivisionError):
            return math.copysign(math.inf, k)

    def array(x):
        with np.errstate(over="ignore", divide="ignore"):
            return k * np.power(x, -p)
    return _dual(scalar, array)


def reciprocal_power(i=1) -> ShFunction:
    i = _positive_int("i", i)
    return ShFunction(
        "reciprocal_power",
        _neg_power(float(i)),
        _neg_power(float(i + 1), -i),
        lambda y: y ** (-1.0 / i),
        {"i": i},
        {"kind": "reciprocal_power", "i": i},
    )


def hartmann_power(r=1.0) -> ShFunction:
    r = float(r)
    if not r > 0 or math.isinf(r):
        raise BadParam(f"r must be a positive real, got {r!r}")
    return ShFunction(
        "hartmann_power",
        _neg_power(r),
        _neg_power(r + 1.0, -r),
        lambda y: y ** (-1.0 / r),
        {"r": r},
        {"kind": "hartmann_power", "r": r},
    )


def reciprocal_power_sum(n=1) -> ShFunction:
    n = _positive_int("n", n)

    def f(x):
        u = 1.0 / x
        acc = 1.0
        for _ in range(n - 1):
            acc = 1.0 + u * acc
        return u * acc

    def df(x):
        u = 1.0 / x
        acc = float(n)
        for k in range(n - 1, 0, -1):
            acc = k + u * acc
        return -acc * u * u

    return ShFunction("reciprocal_power_sum", f, df, None, {"n": n},
                      {"kind": "reciprocal_power_sum", "n": n})


def reciprocal_x_plus_arctan() -> ShFunction:
    atan = _dual(math.atan, np.arctan)

    def f(x):
        return 1.0 / (x + atan(x))

    def df(x):
        s = x + atan(x)
        return -(1.0 + 1.0 / (1.0 + x * x)) / (s * s)

    return ShFunction("reciprocal_x_plus_arctan", f, df, None, {},
                      {"kind": "reciprocal_x_plus_arctan"})


# below this asinh(1/x) = ln(2/x) to full precision, and 1/x may overflow
_ASINH_SMALL = 1e-300


def _asinh_recip_scalar(x):
    return _LN2 - math.log(x) if x < _ASINH_SMALL else math.asinh(1.0 / x)


def _asinh_recip_array(x):
    small = x < _ASINH_SMALL
    with np.errstate(divide="ignore"):
        return np.where(small, _LN2 - np.log(np.where(small, x, 1.0)),
                        np.arcsinh(1.0 / np.where(small, 1.0, x)))


_LN2 = math.log(2.0)


def arcsinh_reciprocal() -> ShFunction:
    hypot1 = _dual(lambda x: math.hypot(x, 1.0), lambda x: np.hypot(x, 1.0))
    return ShFunction(
        "arcsinh_reciprocal",
        _dual(_asinh_recip_scalar, _asinh_recip_array),
        lambda x: -1.0 / (x * hypot1(x)),
        _inv_sinh,
        {},
        {"kind": "arcsinh_reciprocal"},
    )


def _exp(x):
    return math.exp(x) if isinstance(x, (float, int)) else np.exp(x)


def _expm1(x):
    return math.expm1(x) if isinstance(x, (float, int)) else np.expm1(x)


def _inv_sinh(x):
    # 1/sinh(x) = 2 e^{-x} / (1 - e^{-2x}), overflow-free for large x
    return 2.0 * _exp(-x) / -_expm1(-2.0 * x)


def reciprocal_sinh() -> ShFunction:
    tanh = _dual(math.tanh, np.tanh)
    return ShFunction(
        "reciprocal_sinh",
        _inv_sinh,
        lambda x: -_inv_sinh(x) / tanh(x),
        _dual(_asinh_recip_scalar, _asinh_recip_array),
        {},
        {"kind": "reciprocal_sinh"},
    )


def _expression(expr: str) -> ShFunction:
    names = {k: getattr(np, k) for k in ("sqrt", "exp", "log", "arctan", "arcsinh", "sinh",
                                         "cosh", "tanh", "pi", "e")}
    code = compile(expr, "<expr>", "eval")
    f = lambda x: eval(code, {"__builtins__": {}}, dict(names, x=x))
    return ShFunction("expr", f, None, None, {"expr": expr}, {"kind": "expr", "expr": expr})


CATALOG = {
    "reciprocal_power": reciprocal_power,
    "reciprocal_power_sum": reciprocal_power_sum,
    "reciprocal_x_plus_arctan": reciprocal_x_plus_arctan,
    "arcsinh_reciprocal": arcsinh_reciprocal,
    "reciprocal_sinh": reciprocal_sinh,
    "hartmann_power": hartmann_power,
}


def catalog(name: str, **params) -> ShFunction:
    try:
        build = CATALOG[name]
    except KeyError:
        raise UnknownName(f"no catalog function named {name!r}") from None
    try:
        return build(**params)
    except TypeError as exc:
        raise BadParam(str(exc)) from None


def function_from_spec(spec: dict) -> ShFunction:
    """Build a function from its JSON form, e.g. {"kind": "reciprocal_power", "i": 2}.

    An optional "scale" multiplies the function.
    """
    spec = dict(spec)
    kind = spec.pop("kind", None)
    scale = spec.pop("scale", None)
    if kind == "rescaled":
        fn = function_from_spec(spec["base"]).rescaled(spec.get("x_scale", 1.0),
                                                       spec.get("y_scale", 1.0))
    elif kind == "inverse":
        fn = function_from_spec(spec["base"]).inverted()
    elif kind == "expr":
        fn = _expression(spec["expr"])
    elif kind is None:
        raise UnknownName("function spec lacks 'kind'")
    else:
        fn = catalog(kind, **spec)
    if scale is not None:
        fn = fn.scaled(float(scale))
    return fn


# ---------------------------------------------------------------- checker

@dataclass
class CheckerConfig:
    grid_min: float = 1e-4
    grid_max: float = 1e8
    grid_points: int = 512
    limit_b_values: tuple = (0.5, 1.0, 3.0)
    tolerance: float = 1e-3
    deriv_rtol: float = 1e-6
    # X at which limit conditions are evaluated; defaults to grid_max
    limit_horizon: Optional[float] = None
    limit_offsets: tuple = (2.0, 1.0)

    def __post_init__(self):
        if not (self.grid_min > 0 and self.grid_max > self.grid_min):
            raise BadParam("need 0 < grid_min < grid_max")
        if self.grid_points < 16:
            raise BadParam("grid_points must be at least 16")
        if not self.tolerance > 0:
            raise BadParam("tolerance must be positive")
        self.limit_b_values = tuple(float(b) for b in self.limit_b_values)

    @property
    def horizon(self) -> float:
        return self.grid_max if self.limit_horizon is None else float(self.limit_horizon)

    def grid(self) -> np.ndarray:
        return np.geomspace(self.grid_min, self.grid_max, self.grid_points)


@dataclass
class ConditionResult:
    passed: bool
    residual: float
    witness: Optional[float] = None
    detail: dict = field(default_factory=dict)


@dataclass
class CheckReport:
    function: str
    conditions: dict

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.conditions.values())

    def failed(self) -> list:
        return [k for k, c in self.conditions.items() if not c.passed]

    def to_dict(self) -> dict:
        return {
            "function": self.function,
            "overall": "pass" if self.passed else "fail",
            "conditions": {
                str(k): {"verdict": "pass" if c.passed else "fail", "residual": _jsonable(c.residual),
                         "witness": _jsonable(c.witness),
                         **{k2: _jsonable(v) for k2, v in c.detail.items()}}
                for k, c in sorted(self.conditions.items())
            },
        }


def _jsonable(v):
    if isinstance(v, (list, tuple)):
        return [_jsonable(u) for u in v]
    if v is None or isinstance(v, (str, bool, int)):
        return v
    v = float(v)
    if math.isnan(v):
        return "nan"
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return v


def _strictly_convex(x, v):
    """Worst normalised second divided difference and its location.

    A triple fails when the divided difference is not clearly above the
    rounding noise of its three values; underflowed triples are skipped.
    """
    x1, x2, x3 = x[:-2], x[1:-1], x[2:]
    v1, v2, v3 = v[:-2], v[1:-1], v[2:]
    s1 = (v2 - v1) / (x2 - x1)
    s2 = (v3 - v2) / (x3 - x2)
    dd = 2.0 * (s2 - s1) / (x3 - x1)
    mag = np.maximum(np.maximum(np.abs(v1), np.abs(v2)), np.abs(v3))
    h = np.minimum(x2 - x1, x3 - x2)
    noise = 16 * _EPS * mag / (h * h)
    resolved = np.isfinite(dd) & (mag > _RESOLVED)
    score = np.where(resolved, dd / np.where(noise > 0, noise, 1.0), np.inf)
    k = int(np.argmin(score))
    return float(score[k]), float(x2[k]), bool(np.all(score > 1.0))


def check_strongly_hyperbolic(f: ShFunction, cfg: Optional[CheckerConfig] = None) -> CheckReport:
    cfg = cfg or CheckerConfig()
    tol = cfg.tolerance
    x = cfg.grid()
    X = cfg.horizon
    for b in cfg.limit_b_values:
        if X + b <= 0:
            raise DomainError(f"horizon {X} + b={b} leaves the domain")
    conds = {}
    with np.errstate(all="ignore"):
        v = np.asarray(f(x), dtype=float)
        d = np.asarray(f.deriv(x), dtype=float)

        # 1: blow-up at 0 and decay at infinity. Slow divergence (logarithmic)
        # is accepted when the growth per decade does not shrink; slow decay
        # when the last decade still removes a fixed fraction of the value.
        lo, hi = float(f(cfg.grid_min)), float(f(cfg.grid_max))
        f1, f2 = float(f(10 * cfg.grid_min)), float(f(100 * cfg.grid_min))
        step_lo, step_prev = lo - f1, f1 - f2
        grows = lo > 1.0 / tol or (step_lo > 0 and step_lo >= (1 - tol) * step_prev)
        drop = float(f(cfg.grid_max / 10)) - hi
        decays = 0 <= hi < tol or (hi > 0 and drop >= tol * hi)
        conds[1] = ConditionResult(grows and decays, hi, cfg.grid_max,
                                   {"f_at_grid_min": lo, "f_at_grid_max": hi,
                                    "decade_growth_ratio": step_lo / step_prev if step_prev else math.inf,
                                    "decade_drop_ratio": drop / hi if hi else math.inf})

        # 2: strict convexity
        score, where, ok = _strictly_convex(x, v)
        conds[2] = ConditionResult(ok and bool(np.all(v[np.isfinite(v)] >= 0)), score, where)

        # 3: translation ratio tends to 1
        ratios = []
        for b in cfg.limit_b_values:
            fx = float(f(X))
            ratios.append(float(f(X + b)) / fx if fx > 0 else math.nan)
        res3 = max((abs(r - 1.0) if math.isfinite(r) else math.inf) for r in ratios)
        conds[3] = ConditionResult(res3 <= tol, res3, X, {"b_values": list(cfg.limit_b_values),
                                                          "ratios": ratios})

        # 4: supplied derivative agrees with symmetric differences
        num = np.asarray(numeric_deriv(f.f, x), dtype=float)
        ref = d if f.analytic_deriv else np.asarray(numeric_deriv(f.f, x, 1e-5), dtype=float)
        ok_mask = (np.abs(v) > _RESOLVED) & np.isfinite(ref) & (ref != 0)
        rel = np.where(ok_mask, np.abs(num - ref) / np.where(ref != 0, np.abs(ref), 1.0), 0.0)
        rtol = cfg.deriv_rtol if f.analytic_deriv else max(cfg.deriv_rtol, 1e-4)
        k = int(np.argmax(rel))
        conds[4] = ConditionResult(bool(rel[k] <= rtol), float(rel[k]), float(x[k]))

        # 5: f' < 0 and ln|f'| strictly convex
        resolved = np.abs(d) > _RESOLVED
        neg = bool(np.all(d[resolved] < 0))
        lg = np.log(np.abs(d))
        keep = resolved & np.isfinite(lg)
        score5, where5, ok5 = _strictly_convex(x[keep], lg[keep]) if keep.sum() >= 3 else (math.nan, None, False)
        conds[5] = ConditionResult(neg and ok5, score5, where5, {"derivative_negative": neg})
    return CheckReport(f.name, conds)


def check_limit_lemma(f: ShFunction, cfg: Optional[CheckerConfig] = None) -> dict:
    """Numerical witnesses for the asymptotic consequences of the definition."""
    cfg = cfg or CheckerConfig()
    tol = cfg.tolerance
    X = cfg.horizon
    s, t = cfg.limit_offsets
    for off in (*cfg.limit_b_values, s, t):
        if X + off <= 0:
            raise DomainError(f"horizon {X} + {off} leaves the domain")
    fX, dX = float(f(X)), float(f.deriv(X))
    parts = {}
    r1 = [dX / float(f.deriv(X + b)) for b in cfg.limit_b_values]
    parts[1] = {"values": r1, "target": 1.0, "passed": all(abs(r - 1) <= tol for r in r1)}
    r2 = dX / fX
    parts[2] = {"value": r2, "target": 0.0, "passed": abs(r2) <= tol}
    r3 = (float(f(X + s)) - fX) / dX
    parts[3] = {"value": r3, "target": s, "passed": abs(r3 - s) <= tol * max(1.0, abs(s))}
    r4 = (float(f(X + s)) - fX) / (float(f(X + t)) - fX)
    parts[4] = {"value": r4, "target": s / t, "passed": abs(r4 - s / t) <= tol * max(1.0, abs(s / t))}
    xs = np.geomspace(cfg.grid_min, 10 * cfg.grid_min, 32)
    with np.errstate(all="ignore"):
        q = np.asarray(f.deriv(xs), dtype=float) / np.asarray(f(xs), dtype=float)
    parts[5] = {"value": float(np.min(q)), "target": "-inf", "passed": bool(np.min(q) < -1.0 / tol)}
    return {"function": f.name, "horizon": X, "parts": parts,
            "overall": "pass" if all(p["passed"] for p in parts.values()) else "fail"}
