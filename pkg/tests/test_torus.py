import math

import pytest
from hypothesis import given, strategies as st

from flatmink.errors import DegenerateTriple, ParallelPoints
from flatmink.torus import (INF, TorusPoint, chart_angle, classify_admissible,
                            cyclic_orientation, joining_half, parallel_minus, parallel_plus)

ext_reals = st.one_of(st.just(INF), st.floats(-1e6, 1e6, allow_nan=False))


def orientation_oracle(a, b, c):
    """Sign of the 2x2 determinant of chart-angle chords, an independent test."""
    pa, pb, pc = ((math.cos(chart_angle(t)), math.sin(chart_angle(t))) for t in (a, b, c))
    det = (pb[0] - pa[0]) * (pc[1] - pa[1]) - (pc[0] - pa[0]) * (pb[1] - pa[1])
    return 1 if det > 0 else -1


def test_parallel_examples():
    assert parallel_plus(TorusPoint(1, 2), TorusPoint(1, 5))
    assert parallel_plus(TorusPoint(INF, 2), TorusPoint(INF, INF))
    assert not parallel_plus(TorusPoint(1, 2), TorusPoint(2, 2))
    assert parallel_minus(TorusPoint(1, 2), TorusPoint(5, 2))
    assert parallel_minus(TorusPoint(1, INF), TorusPoint(INF, INF))
    assert not parallel_minus(TorusPoint(1, 2), TorusPoint(1, 3))


def test_infinity_coercion():
    assert TorusPoint("inf", -math.inf) == TorusPoint(INF, INF)
    with pytest.raises(ValueError):
        TorusPoint(math.nan, 0)


def test_cyclic_orientation_examples():
    assert cyclic_orientation(0, 1, INF) == 1
    assert cyclic_orientation(0, INF, 1) == -1
    assert cyclic_orientation(1, 2, 3) == 1
    with pytest.raises(DegenerateTriple):
        cyclic_orientation(1, 1, 2)


@given(ext_reals, ext_reals, ext_reals)
def test_cyclic_orientation_properties(a, b, c):
    if len({a, b, c}) < 3:
        return
    o = cyclic_orientation(a, b, c)
    assert o == cyclic_orientation(b, c, a) == cyclic_orientation(c, a, b)
    assert cyclic_orientation(b, a, c) == -o
    # chord determinant is reliable away from nearly coincident angles
    angles = sorted(chart_angle(t) for t in (a, b, c))
    if min(angles[1] - angles[0], angles[2] - angles[1]) > 1e-6:
        assert o == orientation_oracle(a, b, c)


def test_classify_admissible_examples():
    t = classify_admissible(TorusPoint(INF, INF), TorusPoint(0, 1), TorusPoint(1, 0), -1)
    assert t.type == 1
    t = classify_admissible(TorusPoint(1, 1), TorusPoint(INF, 0), TorusPoint(0, INF), -1)
    assert t.type == 2
    assert classify_admissible(TorusPoint(1, 1), TorusPoint(2, 2), TorusPoint(3, 3), -1) is None
    assert classify_admissible(TorusPoint(1, 1), TorusPoint(2, 2), TorusPoint(3, 3), 1).type == 5
    with pytest.raises(ParallelPoints):
        classify_admissible(TorusPoint(1, 1), TorusPoint(1, 2), TorusPoint(3, 3), -1)


points = st.builds(TorusPoint, ext_reals, ext_reals)


@given(points, points, points, st.permutations(range(3)))
def test_exactly_one_half_and_permutation_invariance(p1, p2, p3, perm):
    pts = (p1, p2, p3)
    if any(parallel_plus(pts[i], pts[j]) or parallel_minus(pts[i], pts[j])
           for i in range(3) for j in range(i + 1, 3)):
        return
    half = joining_half(*pts)
    assert (classify_admissible(*pts, half) is not None) and classify_admissible(*pts, -half) is None
    shuffled = tuple(pts[i] for i in perm)
    assert joining_half(*shuffled) == half
    typ = classify_admissible(*pts, half)
    arranged = typ.arrange(pts)
    assert sorted(map(repr, arranged)) == sorted(map(repr, pts))
