import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from flatmink.circles import PlaneSpec
from flatmink.classify import (CLASSICAL_TYPE, GENERIC_TYPE, HARTMANN_TYPE, TRANSFORMS,
                               classify_plane, detect_power, fit_power, flip_consistent, isomorphic,
                               isomorphism_search, normalise, rescale_plane, transform_plane)
from flatmink.errors import BadParam, NotNormalised
from flatmink.functions import catalog, from_callable
from flatmink.planes import hartmann, named_plane

R = catalog("reciprocal_power", i=1)


def uniform(name, **kw):
    return PlaneSpec.uniform(catalog(name, **kw))


def test_normalise_examples():
    f = catalog("reciprocal_power", i=1).scaled(2.0)
    plane = normalise(PlaneSpec(f, f, R, R))
    assert plane.f1(3.0) == pytest.approx(1 / 3) and plane.f2(3.0) == pytest.approx(1 / 3)
    classical = named_plane("classical")
    assert normalise(classical) is classical
    s = catalog("reciprocal_power_sum", n=2)
    assert normalise(PlaneSpec(s, s, R, R)).f1(1.0) == pytest.approx(1.0)
    once = normalise(named_plane("mixed"))
    assert normalise(once) is once and once.normalised


def test_detect_power_examples():
    assert detect_power(R) == pytest.approx(1.0, abs=1e-12)
    assert detect_power(catalog("hartmann_power", r=2.5)) == pytest.approx(2.5, abs=1e-10)
    assert detect_power(catalog("reciprocal_x_plus_arctan")) is None
    assert detect_power(catalog("arcsinh_reciprocal")) is None
    assert fit_power(catalog("reciprocal_x_plus_arctan")).residual > 1e-8


def test_detect_power_random_exponents():
    rng = np.random.default_rng(0)
    for r in rng.uniform(0.1, 10, 100):
        assert abs(detect_power(catalog("hartmann_power", r=float(r))) - r) <= 1e-10


def test_detect_power_ignores_scale():
    assert detect_power(catalog("hartmann_power", r=1.5).scaled(7.0)) == pytest.approx(1.5)


def test_classify_examples():
    rep = classify_plane(named_plane("classical"))
    assert (rep.group_dimension, rep.klein_kroll) == (6, CLASSICAL_TYPE)
    rep = classify_plane(uniform("hartmann_power", r=2.0))
    assert (rep.group_dimension, rep.klein_kroll) == (4, HARTMANN_TYPE)
    assert rep.detected_exponents == pytest.approx((2, 1, 2, 1))
    rep = classify_plane(PlaneSpec(normalise(PlaneSpec.uniform(catalog("reciprocal_x_plus_arctan"))).f1,
                                   R, R, R))
    assert (rep.group_dimension, rep.klein_kroll) == (3, GENERIC_TYPE)


def test_classify_hartmann_variants():
    rep = classify_plane(hartmann(2.0, s1=2.0))
    assert (rep.group_dimension, rep.klein_kroll) == (4, GENERIC_TYPE)
    assert rep.detected_exponents == pytest.approx((2, 2, 2, 1))
    rep = classify_plane(PlaneSpec(catalog("hartmann_power", r=2.0), catalog("hartmann_power", r=2.0),
                                   R, R))
    assert (rep.group_dimension, rep.klein_kroll) == (4, GENERIC_TYPE)
    # a black-box 1/x still classifies as classical
    blind = from_callable("recip", lambda x: 1.0 / x)
    assert classify_plane(PlaneSpec.uniform(blind)).group_dimension == 6


def test_classify_requires_normalised():
    with pytest.raises(NotNormalised):
        classify_plane(named_plane("mixed"))


@pytest.mark.parametrize("plane", [named_plane("classical"), hartmann(2.0), hartmann(1.5, 3.0, 0.5),
                                   normalise(named_plane("mixed"))],
                         ids=["classical", "hart2", "hart-generic", "mixed"])
@given(st.floats(0.05, 20))
@settings(max_examples=10)
def test_classification_invariant_under_rescaling(plane, r):
    a, b = classify_plane(plane), classify_plane(rescale_plane(plane, r))
    assert (a.group_dimension, a.klein_kroll) == (b.group_dimension, b.klein_kroll)
    if a.detected_exponents is not None:
        assert b.detected_exponents == pytest.approx(a.detected_exponents, rel=1e-6)


def test_rescale_rejects_nonpositive():
    with pytest.raises(BadParam):
        rescale_plane(named_plane("classical"), 0.0)


def test_isomorphism_examples():
    mixed = normalise(named_plane("mixed"))
    w = isomorphic(mixed, mixed)
    assert w.transform == "A1" and w.r == 1.0
    w = isomorphic(mixed, rescale_plane(mixed, 2.0))
    assert w is not None and abs(w.r - 2.0) <= 1e-6 and w.residual <= 1e-6
    r = catalog("reciprocal_power", i=1)
    other = PlaneSpec(normalise(PlaneSpec.uniform(catalog("reciprocal_x_plus_arctan"))).f1, r, r, r)
    search = isomorphism_search(named_plane("classical"), other)
    assert search.witness is None and search.transforms_tried == list(TRANSFORMS)


TEN_PLANES = [
    named_plane("classical"), hartmann(2.0), hartmann(0.5), hartmann(2.0, 2.0), hartmann(3.0, 1.0, 4.0),
    normalise(named_plane("mixed")),
    normalise(PlaneSpec.uniform(catalog("arcsinh_reciprocal"))),
    normalise(PlaneSpec.uniform(catalog("reciprocal_power_sum", n=2))),
    normalise(PlaneSpec(catalog("reciprocal_x_plus_arctan"), R, catalog("arcsinh_reciprocal"), R)),
    normalise(PlaneSpec(catalog("reciprocal_power_sum", n=3), R, R, catalog("arcsinh_reciprocal"))),
]


@pytest.mark.parametrize("k", range(len(TEN_PLANES)))
def test_isomorphism_reflexive(k):
    assert isomorphic(TEN_PLANES[k], TEN_PLANES[k]) is not None


@pytest.mark.parametrize("k", range(len(TEN_PLANES)))
def test_isomorphism_symmetric(k):
    F = TEN_PLANES[k]
    for G in (rescale_plane(F, 3.0), normalise(transform_plane(F, "A2")),
              rescale_plane(normalise(transform_plane(F, "A4")), 0.25)):
        assert isomorphic(F, G) is not None
        assert isomorphic(G, F) is not None
    G = normalise(transform_plane(F, "flip*A3"))
    assert (isomorphic(F, G) is None) == (isomorphic(G, F) is None)
    if flip_consistent(F):
        assert isomorphic(F, G) is not None


def test_flip_only_for_power_laws():
    assert flip_consistent(named_plane("classical"))
    assert flip_consistent(hartmann(2.0, 2.0, 0.5))
    assert not flip_consistent(normalise(named_plane("mixed")))


def test_non_isomorphic_pairs_symmetric():
    for i, F in enumerate(TEN_PLANES):
        for G in TEN_PLANES[i + 1:]:
            assert (isomorphic(F, G) is None) == (isomorphic(G, F) is None)
