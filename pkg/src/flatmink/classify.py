"""Normalisation, power-law detection, classification and isomorphism search.

A plane (f1, f2; f3, f4) is normalised when f1(1) = f3(1) = 1. Up to the
coordinate changes below, two normalised planes f, g are isomorphic exactly
when some r > 0 rescales one into the other:

    g1(x) = f1(x/r) / f1(1/r)      g2(x) = f2(x/r) / f1(1/r)
    g3(x) = f3(x/r) / f3(1/r)      g4(x) = f4(x/r) / f3(1/r)

The coordinate changes are (x, y) -> (±x, ±y) ("A1".."A4") and their
compositions with the swap (x, y) -> (y, x) ("flip*A1".."flip*A4").
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .circles import PlaneSpec
from .errors import BadParam, FlatMinkError, NotNormalised
from .functions import ShFunction, invert

# identity tests between functions use this relative threshold
IDENTITY_RTOL = 1e-8
POWER_GRID = (1e-4, 1e4, 257)
# isomorphism witnesses must satisfy the rescaling equations this closely
ISO_RTOL = 1e-6
ISO_GRID = (2.0**-10, 2.0**10, 64)
R_SWEEP = (-40, 40)
_UNDERFLOW = 1e-290

CLASSICAL_TYPE = "VII.F.23"
HARTMANN_TYPE = "III.C.19"
GENERIC_TYPE = "III.C.1"


def _geom(lo, hi, n):
    return np.geomspace(lo, hi, n)


def _values(f: ShFunction, xs) -> np.ndarray:
    return np.asarray(f(np.asarray(xs, dtype=float)), dtype=float)


# ------------------------------------------------------------ normalisation

def normalise(plane: PlaneSpec) -> PlaneSpec:
    """Rescale (f1, f2) by 1/f1(1) and (f3, f4) by 1/f3(1).

    The circle set is unchanged: the factor is absorbed into each circle's a.
    """
    k1, k3 = float(plane.f1(1.0)), float(plane.f3(1.0))
    if k1 == 1.0 and k3 == 1.0:
        return plane
    fs = [f if k == 1.0 else f.scaled(1.0 / k)
          for f, k in zip(plane.functions, (k1, k1, k3, k3))]
    return PlaneSpec(*fs, name=plane.name)


def rescale_plane(plane: PlaneSpec, r: float) -> PlaneSpec:
    """Image of a normalised plane under (x, y) -> (r x, y), normalised again."""
    if not r > 0:
        raise BadParam(f"r must be positive, got {r}")
    f1, f2, f3, f4 = plane.functions
    k1, k3 = float(f1(1.0 / r)), float(f3(1.0 / r))
    fs = (f1.rescaled(r, 1 / k1), f2.rescaled(r, 1 / k1),
          f3.rescaled(r, 1 / k3), f4.rescaled(r, 1 / k3))
    return PlaneSpec(*fs, name=f"{plane.name}@r={r:g}" if plane.name else "")


# ------------------------------------------------------------ power laws

@dataclass
class PowerFit:
    exponent: float
    scale: float  # f(1)
    residual: float  # max |ln(f/f(1)) + r ln x| on the grid

    @property
    def is_power(self) -> bool:
        return self.residual < IDENTITY_RTOL


def fit_power(f: ShFunction, grid=POWER_GRID) -> PowerFit:
    """Least-squares fit of ln(f(x)/f(1)) = -r ln x through the origin."""
    xs = _geom(*grid)
    k = float(f(1.0))
    with np.errstate(all="ignore"):
        ly = np.log(_values(f, xs) / k)
    lx = np.log(xs)
    if not np.all(np.isfinite(ly)):
        return PowerFit(math.nan, k, math.inf)
    r = -float(np.dot(lx, ly) / np.dot(lx, lx))
    return PowerFit(r, k, float(np.max(np.abs(ly + r * lx))))


def detect_power(f: ShFunction) -> Optional[float]:
    """r if f is a positive multiple of x^(-r) on [1e-4, 1e4], else None."""
    fit = fit_power(f)
    return fit.exponent if fit.is_power and fit.exponent > 0 else None


# ------------------------------------------------------------ classification

@dataclass
class ClassificationReport:
    group_dimension: int
    klein_kroll: str
    detected_exponents: Optional[tuple] = None  # (r1, s1, r2, s2)
    evidence: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"group_dimension": self.group_dimension, "klein_kroll": self.klein_kroll,
                "detected_exponents": None if self.detected_exponents is None
                else list(self.detected_exponents),
                "evidence": self.evidence}


def _close(u, v, rtol=IDENTITY_RTOL):
    return abs(u - v) <= rtol * max(1.0, abs(u), abs(v))


def hartmann_exponents(plane: PlaneSpec) -> tuple:
    """((r1, s1, r2, s2) or None, fit evidence).

    The quadruple is present when f1 = x^-r1, f2 = x^-r1 / s1 and likewise
    f3, f4 with (r2, s2), for a normalised plane.
    """
    fits = [fit_power(f) for f in plane.functions]
    evidence = {f"f{i + 1}": {"exponent": ft.exponent, "f(1)": ft.scale,
                              "residual": ft.residual} for i, ft in enumerate(fits)}
    if not all(ft.is_power for ft in fits):
        return None, evidence
    f1, f2, f3, f4 = fits
    if not (_close(f1.exponent, f2.exponent) and _close(f3.exponent, f4.exponent)):
        return None, evidence
    quad = (f1.exponent, 1.0 / f2.scale, f3.exponent, 1.0 / f4.scale)
    return quad, evidence


def classify_plane(plane: PlaneSpec) -> ClassificationReport:
    """Automorphism group dimension (6, 4 or 3) and Klein-Kroll type."""
    plane.require_normalised()
    quad, evidence = hartmann_exponents(plane)
    if quad is None:
        return ClassificationReport(3, GENERIC_TYPE, None, evidence)
    r1, s1, r2, s2 = quad
    if all(_close(v, 1.0) for v in quad):
        return ClassificationReport(6, CLASSICAL_TYPE, quad, evidence)
    kk = HARTMANN_TYPE if _close(r1, r2) and _close(s1, 1.0) and _close(s2, 1.0) else GENERIC_TYPE
    return ClassificationReport(4, kk, quad, evidence)


def is_classical(plane: PlaneSpec) -> bool:
    return classify_plane(plane).group_dimension == 6


# ------------------------------------------------------------ isomorphisms

SIGN_CHANGES = ("A1", "A2", "A3", "A4")
TRANSFORMS = SIGN_CHANGES + tuple(f"flip*{a}" for a in SIGN_CHANGES)


def _over(f: ShFunction, k: float) -> ShFunction:
    return f.scaled(1.0 / k)


def _sign_change(plane: PlaneSpec, name: str) -> PlaneSpec:
    f1, f2, f3, f4 = plane.functions
    if name == "A1":
        fs = (f1, f2, f3, f4)
    elif name == "A2":  # (x, y) -> (x, -y)
        k4, k2 = float(f4(1.0)), float(f2(1.0))
        fs = (_over(f4, k4), _over(f3, k4), _over(f2, k2), _over(f1, k2))
    elif name == "A3":  # (x, y) -> (-x, y)
        fs = (f3, f4, f1, f2)
    elif name == "A4":  # (x, y) -> (-x, -y)
        k2, k4 = float(f2(1.0)), float(f4(1.0))
        fs = (_over(f2, k2), _over(f1, k2), _over(f4, k4), _over(f3, k4))
    else:
        raise BadParam(f"unknown coordinate change {name!r}")
    return PlaneSpec(*fs, name=plane.name)


def _flip(plane: PlaneSpec) -> PlaneSpec:
    """Functions of the image under (x, y) -> (y, x)."""
    f1, f2, f3, f4 = plane.functions
    k = invert(f4, 1.0)
    return PlaneSpec(f1.inverted(), f2.inverted(), _over(f4.inverted(), k), _over(f3.inverted(), k),
                     name=plane.name)


def flip_consistent(plane: PlaneSpec) -> bool:
    """Whether the flip substitution can come from an isomorphism.

    If (x, y) -> (y, x) maps the plane onto a plane of the family, it also
    maps that image back, so substituting twice must return the plane. This
    forces f(kx) = f(k) f(x) for f3, f4 with k = f4^{-1}(1), which fails for
    generic generators.
    """
    try:
        back = _flip(_flip(plane))
        return rescaling_residual(back, plane, 1.0) <= ISO_RTOL
    except (ArithmeticError, ValueError, FlatMinkError):
        return False


def transform_plane(plane: PlaneSpec, name: str) -> PlaneSpec:
    """Image of ``plane`` under one of :data:`TRANSFORMS`."""
    if name.startswith("flip*"):
        return _sign_change(_flip(plane), name[len("flip*"):])
    return _sign_change(plane, name)


@dataclass
class IsoWitness:
    transform: str
    r: float
    residual: float

    def to_dict(self) -> dict:
        return {"transform": self.transform, "r": self.r, "residual": self.residual}


def rescaling_residual(F: PlaneSpec, G: PlaneSpec, r: float, grid=ISO_GRID) -> float:
    """Max relative deviation of G from the r-rescaling of F on a grid."""
    xs = _geom(*grid)
    f1, f2, f3, f4 = F.functions
    k1, k3 = float(f1(1.0 / r)), float(f3(1.0 / r))
    worst = 0.0
    for f, g, k in zip(F.functions, G.functions, (k1, k1, k3, k3)):
        with np.errstate(all="ignore"):
            want = _values(f, xs / r) / k
            got = _values(g, xs)
            # values that underflow on the grid compare absolutely
            err = np.abs(got - want) / np.maximum(np.abs(want), _UNDERFLOW)
        worst = max(worst, float(np.max(np.where(np.isfinite(err), err, np.inf))))
    return worst


def _r_candidates(F: PlaneSpec, G: PlaneSpec) -> list:
    """Every r solving g1(r) f1(1/r) = 1 found on the bracket sweep 2^k."""
    f1, g1 = F.f1, G.f1

    def phi(r):
        with np.errstate(all="ignore"):
            return np.log(_values(g1, r)) + np.log(_values(f1, 1.0 / np.asarray(r)))

    ks = np.arange(R_SWEEP[0], R_SWEEP[1] + 1)
    rs = 2.0 ** ks.astype(float)
    vals = phi(rs)
    out = [float(r) for r, v in zip(rs, vals) if v == 0 or abs(v) <= 1e-12]
    for lo, hi, vl, vh in zip(rs[:-1], rs[1:], vals[:-1], vals[1:]):
        if np.isfinite(vl) and np.isfinite(vh) and vl * vh < 0:
            a, b, sa = float(lo), float(hi), math.copysign(1.0, vl)
            while True:
                m = math.sqrt(a * b)
                if not a < m < b:
                    break
                vm = float(phi(np.array([m]))[0])
                if vm == 0:
                    a = b = m
                    break
                if math.copysign(1.0, vm) == sa:
                    a = m
                else:
                    b = m
            out.append(a if abs(float(phi(np.array([a]))[0])) <= abs(float(phi(np.array([b]))[0])) else b)
    # try r = 1 first, then by distance from 1 on the log scale
    return sorted(set(out), key=lambda r: (abs(math.log(r)), r))


@dataclass
class IsoSearch:
    witness: Optional[IsoWitness]
    transforms_tried: list
    candidates_checked: int

    def to_dict(self) -> dict:
        return {"isomorphic": self.witness is not None,
                "witness": None if self.witness is None else self.witness.to_dict(),
                "transforms_tried": self.transforms_tried,
                "candidates_checked": self.candidates_checked}


def isomorphism_search(plane_f: PlaneSpec, plane_g: PlaneSpec) -> IsoSearch:
    """Search the eight coordinate changes and the r-sweep for a witness."""
    plane_f.require_normalised()
    plane_g.require_normalised()
    if is_classical(plane_f) and is_classical(plane_g):
        # isomorphisms of the classical plane need not fix (inf, inf)
        return IsoSearch(IsoWitness("A1", 1.0, rescaling_residual(plane_f, plane_g, 1.0)), [], 0)
    tried, checked = [], 0
    flips = flip_consistent(plane_f)
    for name in TRANSFORMS:
        tried.append(name)
        if name.startswith("flip*") and not flips:
            continue
        try:
            H = transform_plane(plane_f, name)
            candidates = _r_candidates(H, plane_g)
        except (ArithmeticError, ValueError, FlatMinkError):
            continue
        for r in candidates:
            checked += 1
            try:
                # (I) is symmetric under F <-> G, r <-> 1/r; checking both
                # directions probes each plane on its own unit-scale grid
                res = max(rescaling_residual(H, plane_g, r),
                          rescaling_residual(plane_g, H, 1.0 / r))
            except (ArithmeticError, ValueError, FlatMinkError):
                continue
            if res <= ISO_RTOL:
                return IsoSearch(IsoWitness(name, r, res), tried, checked)
    return IsoSearch(None, tried, checked)


def isomorphic(plane_f: PlaneSpec, plane_g: PlaneSpec) -> Optional[IsoWitness]:
    """A witness that the planes are isomorphic, or None."""
    return isomorphism_search(plane_f, plane_g).witness
