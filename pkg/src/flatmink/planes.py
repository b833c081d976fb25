"""Named planes used by the acceptance suite, the tests and the CLI."""

from __future__ import annotations

from .circles import PlaneSpec
from .errors import UnknownName
from .functions import catalog


def classical() -> PlaneSpec:
    return PlaneSpec.classical()


def hartmann(r: float = 2.0, s1: float = 1.0, s2: float = 1.0) -> PlaneSpec:
    """f1 = f3 = x^-r, f2 = x^-r / s1, f4 = x^-r / s2."""
    f = catalog("hartmann_power", r=r)
    f2 = f if s1 == 1.0 else f.scaled(1.0 / s1)
    f4 = f if s2 == 1.0 else f.scaled(1.0 / s2)
    return PlaneSpec(f, f2, f, f4, name=f"hartmann({r:g}, {s1:g}; {r:g}, {s2:g})")


def mixed() -> PlaneSpec:
    """Four different generators, one per slot; not normalised."""
    return PlaneSpec(catalog("reciprocal_x_plus_arctan"), catalog("arcsinh_reciprocal"),
                     catalog("reciprocal_power_sum", n=3), catalog("reciprocal_power", i=1),
                     name="mixed")


NAMED = {"classical": classical, "hartmann": hartmann, "mixed": mixed}
TEST_PLANES = ("classical", "hartmann", "mixed")


def named_plane(name: str) -> PlaneSpec:
    try:
        return NAMED[name]()
    except KeyError:
        raise UnknownName(f"no plane named {name!r}; known: {sorted(NAMED)}") from None
