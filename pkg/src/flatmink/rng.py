"""Seeded randomness.

Every random stream is numpy's Philox4x64 counter-based generator keyed by
a single 64-bit seed, so a (seed, draw index) pair names the same numbers
on every platform. On the command line the environment variable MINK_SEED
overrides ``--seed`` (see :func:`resolve_seed`); library calls use the seed
they are given.
"""

from __future__ import annotations

import os

import numpy as np

DEFAULT_SEED = 42


def resolve_seed(seed: int | None = None) -> int:
    env = os.environ.get("MINK_SEED")
    if env is not None and env.strip():
        return int(env, 0) & (2**64 - 1)
    return DEFAULT_SEED if seed is None else int(seed) & (2**64 - 1)


def make_rng(seed: int = DEFAULT_SEED, stream: int = 0) -> np.random.Generator:
    """Generator for ``seed``; distinct ``stream`` values give independent streams."""
    key = int(seed) & (2**64 - 1)
    return np.random.Generator(np.random.Philox(key=[key, stream]))
