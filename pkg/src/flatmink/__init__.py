"""Flat Minkowski planes built from strongly hyperbolic functions."""

from .errors import *  # noqa: F401,F403
from .torus import INF, TorusPoint, cyclic_orientation, classify_admissible, parallel_minus, parallel_plus
from .functions import CheckerConfig, ShFunction, catalog, check_limit_lemma, check_strongly_hyperbolic, invert

__version__ = "0.1.0"
