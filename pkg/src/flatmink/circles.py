"""Circles of M(f1, f2; f3, f4) and the plane specification.

A negative curve (a, b, c) is the graph of

    x > -b:  a*f1(x + b) + c      (convex branch)
    x < -b: -a*f2(-x - b) + c     (concave branch)

plus the points (-b, inf) and (inf, c). A negative line (s, t), s < 0, is
y = s*x + t plus (inf, inf). Positive circles are mirror images under
x -> -x of negative ones built from (f3, f4); they store the parameters of
that negative preimage, so mirroring is a relabelling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Optional, Union

import numpy as np

from ._numeric import two_sum
from .errors import BadParam, DomainError, InvalidParams, NoConvergence, NotNormalised
from .functions import ShFunction, catalog, function_from_spec
from .torus import INF, TorusPoint, is_inf

NEG, POS = -1, 1


class BranchPoint(ValueError):
    """Raised when a slope is requested at the branch point x = -b."""


def _check_half(half):
    if half not in (NEG, POS):
        raise InvalidParams(f"half must be -1 or +1, got {half!r}")


@dataclass(frozen=True)
class Curve:
    a: float
    b: float
    c: float
    half: int = NEG
    gens: Optional[tuple] = field(default=None, compare=False, repr=False)
    # low-order part of b: the branch point may sit closer to a sample point
    # than the spacing of doubles near it
    b_lo: float = field(default=0.0, repr=False)

    def __post_init__(self):
        _check_half(self.half)
        for name in ("a", "b", "c", "b_lo"):
            v = float(getattr(self, name)) + 0.0
            if not math.isfinite(v):
                raise InvalidParams(f"{name} must be finite, got {v}")
            object.__setattr__(self, name, v)
        if not self.a > 0:
            raise InvalidParams(f"a must be positive, got {self.a}")
        hi, lo = two_sum(self.b, self.b_lo)
        object.__setattr__(self, "b", hi + 0.0)
        object.__setattr__(self, "b_lo", lo + 0.0)

    kind = "curve"

    @property
    def params(self) -> tuple:
        return (self.a, self.b, self.c)

    def _gens(self):
        if self.gens is None:
            raise ValueError("curve has no generator functions attached; build it via PlaneSpec")
        return self.gens

    def _offset(self, x):
        """x + b, including the low-order part of b."""
        s, e = two_sum(x, self.b)
        return s + (e + self.b_lo)

    def _neg_eval(self, x):
        f, g = self._gens()
        u = self._offset(x)
        if u > 0:
            return self.a * f(u) + self.c
        if u < 0:
            return -self.a * g(-u) + self.c
        return INF

    def _neg_slope(self, x):
        f, g = self._gens()
        u = self._offset(x)
        if u > 0:
            return self.a * f.deriv(u)
        if u < 0:
            return self.a * g.deriv(-u)
        raise BranchPoint(f"x = {x} is the branch point of {self}")

    def eval(self, x: float) -> float:
        if is_inf(x):
            return self.c
        return self._neg_eval(x if self.half == NEG else -x)

    def eval_offset(self, anchor: float, lo: float, t: float) -> float:
        """Value at x = anchor + lo + t with the sum left unevaluated, so t
        may be far below the spacing of doubles near ``anchor``."""
        f, g = self._gens()
        if self.half == NEG:
            u = (anchor + self.b) + (lo + self.b_lo) + t
        else:
            u = (self.b - anchor) + (self.b_lo - lo) - t
        if u > 0:
            return self.a * f(u) + self.c
        if u < 0:
            return -self.a * g(-u) + self.c
        return INF

    def asymptote(self) -> tuple:
        """Exact vertical asymptote as a pair (hi, lo) with x = hi + lo."""
        if self.half == NEG:
            return (-self.b + 0.0, -self.b_lo + 0.0)
        return (self.b, self.b_lo)

    def slope(self, x: float) -> float:
        if is_inf(x):
            raise BranchPoint("no slope at infinity")
        if self.half == NEG:
            return self._neg_slope(x)
        return -self._neg_slope(-x)

    def infinite_points(self) -> tuple:
        u = -self.b if self.half == NEG else self.b
        return (TorusPoint(u + 0.0, INF), TorusPoint(INF, self.c))

    def branch_x(self) -> float:
        """x-coordinate of the vertical asymptote."""
        return -self.b if self.half == NEG else self.b

    def mirrored(self) -> "Curve":
        return replace(self, half=-self.half)

    def reflected(self) -> "Curve":
        """Image under (x, y) -> (-x, -y); the generators swap roles."""
        gens = None if self.gens is None else (self.gens[1], self.gens[0])
        return Curve(self.a, -self.b, -self.c, self.half, gens, -self.b_lo)

    def moved(self, a: float, b: float, c: float) -> "Curve":
        """Image under (x, y) -> (x + b, a*y + c)."""
        hi, lo = two_sum(self.b, -b if self.half == NEG else b)
        return Curve(a * self.a, hi, a * self.c + c, self.half, self.gens, lo + self.b_lo)


@dataclass(frozen=True)
class Line:
    s: float
    t: float
    half: int = NEG
    gens: Optional[tuple] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        _check_half(self.half)
        for name in ("s", "t"):
            v = float(getattr(self, name)) + 0.0
            if not math.isfinite(v):
                raise InvalidParams(f"{name} must be finite, got {v}")
            object.__setattr__(self, name, v)
        if not self.s * self.half > 0:
            want = "negative" if self.half == NEG else "positive"
            raise InvalidParams(f"slope must be {want} for this half, got {self.s}")

    kind = "line"

    @property
    def params(self) -> tuple:
        return (self.s, self.t)

    def eval(self, x: float) -> float:
        if is_inf(x):
            return INF
        return self.s * x + self.t

    def eval_offset(self, anchor: float, lo: float, t: float) -> float:
        return self.s * anchor + (self.s * (lo + t) + self.t)

    def slope(self, x: float) -> float:
        if is_inf(x):
            raise BranchPoint("no slope at infinity")
        return self.s

    def infinite_points(self) -> tuple:
        return (TorusPoint(INF, INF),)

    def mirrored(self) -> "Line":
        return Line(-self.s, self.t, -self.half, self.gens)

    def reflected(self) -> "Line":
        gens = None if self.gens is None else (self.gens[1], self.gens[0])
        return Line(self.s, -self.t + 0.0, self.half, gens)

    def moved(self, a: float, b: float, c: float) -> "Line":
        return Line(a * self.s, a * (self.t - self.s * b) + c, self.half, self.gens)


Circle = Union[Curve, Line]


def eval_circle(C: Circle, x: float) -> float:
    return C.eval(x)


def tangent_slope(C: Circle, x: float) -> float:
    return C.slope(x)


def apply_phi_infinity(C: Circle, a: float, b: float, c: float) -> Circle:
    """Image of C under the map (x, y) -> (x + b, a*y + c), a > 0."""
    if not a > 0:
        raise InvalidParams(f"a must be positive, got {a}")
    return C.moved(a, b, c)


def contains(C: Circle, p: TorusPoint, tol: float = 1e-9) -> bool:
    if p in C.infinite_points():
        return True
    if is_inf(p.y):
        return False
    v = C.eval(p.x)
    return not is_inf(v) and abs(v - p.y) <= tol * (1 + abs(p.y))


def residual(C: Circle, p: TorusPoint) -> float:
    """Relative membership residual; 0 for matching infinite points.

    C is the graph of a bijection, so the gap is measured vertically and, for
    curves, also horizontally; the smaller one counts. Near the asymptote
    only the horizontal gap is well conditioned.
    """
    if p in C.infinite_points():
        return 0.0
    if is_inf(p.y) or is_inf(p.x):
        return INF
    v = C.eval(p.x)
    vert = INF if is_inf(v) else abs(v - p.y) / (1 + abs(p.y))
    if vert <= 1e-12 or not isinstance(C, Curve) or p.y == C.c:
        return vert
    try:
        x = _curve_x_at(C, p.y)
    except (DomainError, NoConvergence):
        return vert
    return min(vert, abs(x - p.x) / (1 + abs(p.x)))


def _curve_x_at(C: Curve, y: float) -> float:
    """The x with C(x) = y, for finite y != c."""
    f, g = C._gens()
    if y > C.c:
        u = f.inverse((y - C.c) / C.a)
    else:
        u = -g.inverse((C.c - y) / C.a)
    x = (-C.b) + (u - C.b_lo)
    return x if C.half == NEG else -x


def sample_points(C: Circle, offsets=(0.05, 0.3, 1.0, 2.5, 7.0)) -> list:
    """Finite points of C at the given distances on both sides of its branch point
    (or of 0 for lines)."""
    centre = C.branch_x() if isinstance(C, Curve) else 0.0
    pts = []
    for d in offsets:
        for x in (centre - d, centre + d):
            pts.append(TorusPoint(x, C.eval(x)))
    return pts


@dataclass(eq=False)
class PlaneSpec:
    """The quadruple (f1, f2; f3, f4): (f1, f2) generate the negative half,
    (f3, f4) the positive one."""

    f1: ShFunction
    f2: ShFunction
    f3: ShFunction
    f4: ShFunction
    name: str = ""

    @property
    def functions(self) -> tuple:
        return (self.f1, self.f2, self.f3, self.f4)

    @property
    def normalised(self) -> bool:
        return abs(float(self.f1(1.0)) - 1) <= 1e-12 and abs(float(self.f3(1.0)) - 1) <= 1e-12

    def require_normalised(self):
        if not self.normalised:
            raise NotNormalised("plane must satisfy f1(1) = f3(1) = 1")

    def gens(self, half: int) -> tuple:
        _check_half(half)
        return (self.f1, self.f2) if half == NEG else (self.f3, self.f4)

    def curve(self, a, b, c, half: int = NEG) -> Curve:
        return Curve(a, b, c, half, self.gens(half))

    def line(self, s, t, half: int = NEG) -> Line:
        return Line(s, t, half, self.gens(half))

    def attach(self, C: Circle) -> Circle:
        """Return C with this plane's generators attached."""
        return replace(C, gens=self.gens(C.half))

    @classmethod
    def uniform(cls, f: ShFunction, name: str = "") -> "PlaneSpec":
        return cls(f, f, f, f, name)

    @classmethod
    def classical(cls) -> "PlaneSpec":
        return cls.uniform(catalog("reciprocal_power", i=1), "classical")

    def to_dict(self) -> dict:
        return {"name": self.name, "f1": self.f1.to_spec(), "f2": self.f2.to_spec(),
                "f3": self.f3.to_spec(), "f4": self.f4.to_spec()}

    @classmethod
    def from_dict(cls, d: dict) -> "PlaneSpec":
        try:
            fs = [function_from_spec(d[k]) for k in ("f1", "f2", "f3", "f4")]
        except KeyError as exc:
            raise BadParam(f"plane spec lacks {exc.args[0]}") from None
        plane = cls(*fs, name=d.get("name", ""))
        if d.get("normalise"):
            from .classify import normalise
            plane = normalise(plane)
        return plane


def branch_samples(C: Circle, n: int = 64, span: float = 1e3) -> tuple:
    """Arrays (x, y) sampling C densely on each side of its branch point."""
    centre = C.branch_x() if isinstance(C, Curve) else 0.0
    d = np.geomspace(1e-3, span, n)
    xs = np.concatenate([centre - d[::-1], centre + d])
    return xs, np.array([C.eval(float(x)) for x in xs])
