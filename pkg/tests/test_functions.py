import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from flatmink.errors import BadParam, DomainError, UnknownName
from flatmink.functions import (CATALOG, CheckerConfig, catalog, check_limit_lemma,
                                check_strongly_hyperbolic, from_callable, function_from_spec,
                                invert)

GOOD = [("reciprocal_power", {"i": 1}), ("reciprocal_power", {"i": 3}),
        ("reciprocal_power_sum", {"n": 2}), ("reciprocal_power_sum", {"n": 3}),
        ("reciprocal_x_plus_arctan", {}), ("arcsinh_reciprocal", {}),
        ("hartmann_power", {"r": 0.5}), ("hartmann_power", {"r": 2.5})]
ALL = GOOD + [("reciprocal_sinh", {})]


def ids(cases):
    return [f"{n}{p}" for n, p in cases]


def test_catalog_values():
    assert catalog("reciprocal_power", i=1)(2.0) == 0.5
    assert catalog("reciprocal_power_sum", n=2)(2.0) == 0.75
    assert catalog("reciprocal_x_plus_arctan")(1.0) == pytest.approx(1 / (1 + math.pi / 4))
    assert catalog("arcsinh_reciprocal")(1.0) == pytest.approx(math.log(1 + math.sqrt(2)))
    assert catalog("hartmann_power", r=2.5)(2.0) == pytest.approx(2 ** -2.5)


def test_arcsinh_inverse_is_reciprocal_sinh():
    f = catalog("arcsinh_reciprocal")
    for y in (0.1, 1.0, 5.0):
        assert f.inverse(y) == pytest.approx(1 / math.sinh(y), rel=1e-14)


def test_arcsinh_far_from_overflow_near_zero():
    f = catalog("arcsinh_reciprocal")
    assert f(1e-310) == pytest.approx(math.log(2) - math.log(1e-310), rel=1e-15)
    assert math.isfinite(f(5e-324))


def test_catalog_errors():
    with pytest.raises(UnknownName):
        catalog("exp")
    for name, params in (("reciprocal_power", {"i": 0}), ("reciprocal_power", {"i": 1.5}),
                         ("reciprocal_power_sum", {"n": -1}), ("hartmann_power", {"r": 0})):
        with pytest.raises(BadParam):
            catalog(name, **params)
    with pytest.raises(BadParam):
        catalog("reciprocal_power", k=2)


def test_checker_config_validation():
    for kw in ({"grid_min": 0}, {"grid_max": 1e-5}, {"grid_points": 8}, {"tolerance": 0}):
        with pytest.raises(BadParam):
            CheckerConfig(**kw)


@pytest.mark.parametrize("name,params", GOOD, ids=ids(GOOD))
def test_catalog_members_pass_checker(name, params):
    rep = check_strongly_hyperbolic(catalog(name, **params))
    assert rep.passed, rep.to_dict()
    assert set(rep.conditions) == {1, 2, 3, 4, 5}


def test_reciprocal_sinh_fails_translation_ratio():
    cfg = CheckerConfig(limit_b_values=(1.0,), limit_horizon=30.0)
    rep = check_strongly_hyperbolic(catalog("reciprocal_sinh"), cfg)
    assert 3 in rep.failed()
    ratio = rep.conditions[3].detail["ratios"][0]
    assert abs(ratio - math.exp(-1)) < 1e-4


def test_checker_domain_error():
    cfg = CheckerConfig(limit_b_values=(-2e8,))
    with pytest.raises(DomainError):
        check_strongly_hyperbolic(catalog("reciprocal_power"), cfg)


def test_black_box_function_uses_numeric_derivative():
    f = from_callable("recip", lambda x: 1.0 / x)
    assert not f.analytic_deriv
    assert check_strongly_hyperbolic(f).passed
    assert f.deriv(2.0) == pytest.approx(-0.25, rel=1e-8)


def test_expression_spec():
    f = function_from_spec({"kind": "expr", "expr": "1/(x + arctan(x))"})
    assert f(1.0) == pytest.approx(catalog("reciprocal_x_plus_arctan")(1.0))


def test_spec_scale_and_round_trip():
    f = function_from_spec({"kind": "reciprocal_power", "i": 2, "scale": 3.0})
    assert f(2.0) == pytest.approx(0.75)
    g = function_from_spec(f.to_spec())
    assert g(0.7) == pytest.approx(f(0.7))


def test_limit_lemma_examples():
    f = catalog("reciprocal_power", i=1)
    rep = check_limit_lemma(f, CheckerConfig(limit_horizon=1e6, limit_b_values=(1.0,),
                                             limit_offsets=(2.0, 1.0)))
    assert abs(rep["parts"][4]["value"] - 2.0) < 1e-4
    assert abs(rep["parts"][1]["values"][0] - 1.0) < 1e-4
    assert rep["overall"] == "pass"
    same = check_limit_lemma(f, CheckerConfig(limit_offsets=(1.0, 1.0)))
    assert same["parts"][4]["value"] == 1.0


@pytest.mark.parametrize("name,params", GOOD, ids=ids(GOOD))
def test_limit_lemma_passes_for_catalog(name, params):
    assert check_limit_lemma(catalog(name, **params))["overall"] == "pass"


def test_invert_examples():
    assert invert(catalog("reciprocal_power", i=2), 4.0) == pytest.approx(0.5, rel=1e-12)
    assert invert(catalog("arcsinh_reciprocal"), 1.0) == pytest.approx(0.8509181282393216, rel=1e-12)
    with pytest.raises(DomainError):
        invert(catalog("reciprocal_power"), 0.0)


@pytest.mark.parametrize("name,params", ALL, ids=ids(ALL))
def test_invert_round_trip_and_bisection(name, params):
    f = catalog(name, **params)
    assert invert(f, float(f(3.0))) == pytest.approx(3.0, rel=1e-9)
    blind = from_callable("blind", f.f)
    xs = np.geomspace(1e-3, 1e2, 50)
    assert np.allclose(blind.inverse(f(xs)), xs, rtol=1e-9)


@pytest.mark.parametrize("name,params", ALL, ids=ids(ALL))
def test_derivative_matches_central_differences(name, params):
    f = catalog(name, **params)
    x = np.geomspace(1e-2, 1e4, 400)
    h = 1e-5 * np.minimum(x, 1.0)  # x-proportional steps blur e^-x at large x
    num = (f(x + h) - f(x - h)) / (2 * h)
    d = f.deriv(x)
    resolved = np.abs(f(x)) > 1e-280  # 1/sinh underflows beyond x ~ 700
    assert np.all((np.abs(num - d) <= 1e-6 * np.abs(d))[resolved])


@pytest.mark.parametrize("name,params", ALL, ids=ids(ALL))
@given(st.lists(st.floats(1e-3, 700.0), min_size=2, max_size=20, unique=True))
def test_strictly_decreasing_and_invertible(name, params, xs):
    f = catalog(name, **params)
    xs = np.sort(np.array(xs))
    v = f(xs)
    assert np.all(np.diff(v) < 0) or np.any(np.diff(xs) < 1e-12 * xs[1:])
    back = np.array([invert(f, float(y)) for y in v])
    assert np.allclose(back, xs, rtol=1e-9)
    assert np.all(f.deriv(xs) < 0)


def test_catalog_is_complete():
    assert set(CATALOG) == {n for n, _ in ALL}
