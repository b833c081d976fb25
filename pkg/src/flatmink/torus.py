"""Points of the torus S^1 x S^1 with S^1 modelled as R u {inf}.

Coordinates are plain floats; ``math.inf`` is the single point at infinity
(``-inf`` is coerced to it, NaN is rejected).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations
from typing import Optional

from .errors import DegenerateTriple, ParallelPoints

INF = math.inf


def ext(v) -> float:
    """Coerce a number or the strings "inf"/"∞" to an extended real."""
    if isinstance(v, str):
        if v.strip().lower() in ("inf", "+inf", "-inf", "infinity", "∞"):
            return INF
        v = float(v)
    v = float(v)
    if math.isnan(v):
        raise ValueError("NaN is not a point of S^1")
    if math.isinf(v):
        return INF
    return v + 0.0  # drop the sign of zero


def is_inf(v: float) -> bool:
    return v == INF


@dataclass(frozen=True)
class TorusPoint:
    x: float
    y: float

    def __post_init__(self):
        object.__setattr__(self, "x", ext(self.x))
        object.__setattr__(self, "y", ext(self.y))

    @property
    def finite(self) -> bool:
        return not (is_inf(self.x) or is_inf(self.y))

    def mirrored(self) -> "TorusPoint":
        """Image under (x, y) -> (-x, y)."""
        return TorusPoint(-self.x if not is_inf(self.x) else INF, self.y)

    def reflected(self) -> "TorusPoint":
        """Image under (x, y) -> (-x, -y)."""
        return TorusPoint(_neg(self.x), _neg(self.y))

    def moved(self, a: float, b: float, c: float) -> "TorusPoint":
        """Image under the map (x, y) -> (x + b, a*y + c), a > 0."""
        x = self.x if is_inf(self.x) else self.x + b
        y = self.y if is_inf(self.y) else a * self.y + c
        return TorusPoint(x, y)

    def __iter__(self):
        yield self.x
        yield self.y


def _neg(v: float) -> float:
    return INF if is_inf(v) else -v


def parallel_plus(p: TorusPoint, q: TorusPoint) -> bool:
    """Same vertical."""
    return p.x == q.x


def parallel_minus(p: TorusPoint, q: TorusPoint) -> bool:
    """Same horizontal."""
    return p.y == q.y


def parallel(p: TorusPoint, q: TorusPoint) -> bool:
    return parallel_plus(p, q) or parallel_minus(p, q)


def chart_angle(t: float) -> float:
    """S^1 chart t -> 2*atan(t), with inf -> pi."""
    return math.pi if is_inf(t) else 2.0 * math.atan(t)


def cyclic_orientation(a: float, b: float, c: float) -> int:
    """+1 if (a, b, c) run counterclockwise on S^1, else -1.

    The chart is monotone with inf as its top end, so the test reduces to
    whether the triple is a cyclic rotation of an increasing one.
    """
    if a == b or b == c or a == c:
        raise DegenerateTriple(f"coinciding coordinates in {(a, b, c)}")
    ascents = (a < b) + (b < c) + (c < a)
    return 1 if ascents == 2 else -1


@dataclass(frozen=True)
class AdmissibleType:
    """Type 1-5 of a joinable triple plus the role permutation.

    ``perm[k]`` is the index of the input point playing role p_{k+1}.
    """

    type: int
    perm: tuple

    def arrange(self, points):
        return tuple(points[i] for i in self.perm)


def _role_ok(kind: int, p1: TorusPoint, p2: TorusPoint, p3: TorusPoint) -> bool:
    if kind == 1:
        return is_inf(p1.x) and is_inf(p1.y) and p2.finite and p3.finite
    if kind == 2:
        return (p1.finite and is_inf(p2.x) and not is_inf(p2.y)
                and is_inf(p3.y) and not is_inf(p3.x))
    if kind == 3:
        return p1.finite and p2.finite and is_inf(p3.y) and not is_inf(p3.x)
    if kind == 4:
        return p1.finite and p2.finite and is_inf(p3.x) and not is_inf(p3.y)
    return p1.finite and p2.finite and p3.finite


def position_type(points) -> AdmissibleType:
    """Which of the five coordinate templates the triple fits."""
    for kind in range(1, 6):
        for perm in permutations(range(3)):
            if _role_ok(kind, *(points[i] for i in perm)):
                return AdmissibleType(kind, perm)
    raise ParallelPoints("triple matches no template; some points are parallel")


def joining_half(p1: TorusPoint, p2: TorusPoint, p3: TorusPoint) -> int:
    """-1 if the triple lies on an orientation-reversing graph, +1 otherwise."""
    pts = (p1, p2, p3)
    for i in range(3):
        for j in range(i + 1, 3):
            if parallel(pts[i], pts[j]):
                raise ParallelPoints(f"{pts[i]} and {pts[j]} are parallel")
    ox = cyclic_orientation(p1.x, p2.x, p3.x)
    oy = cyclic_orientation(p1.y, p2.y, p3.y)
    return 1 if ox == oy else -1


def classify_admissible(p1: TorusPoint, p2: TorusPoint, p3: TorusPoint,
                        half: int = -1) -> Optional[AdmissibleType]:
    """Admissible type for the requested half, or None if not joinable there."""
    if joining_half(p1, p2, p3) != half:
        return None
    return position_type((p1, p2, p3))
