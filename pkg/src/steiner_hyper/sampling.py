"""Seeded samplers for exact rational test vectors."""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .bases import project_to_hn

__all__ = ["rng_for", "random_rational_vector", "random_hn_vector", "child_seeds"]


def rng_for(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def child_seeds(seed: int, count: int) -> list[np.random.SeedSequence]:
    """Independent per-trial seeds derived from one master seed."""
    return np.random.SeedSequence(seed).spawn(count)


def random_rational_vector(n: int, rng, low: int = -9, high: int = 9, denominator: int = 1) -> np.ndarray:
    """Numerators uniform on ``[low, high]`` over a fixed denominator."""
    rng = rng_for(rng)
    nums = rng.integers(low, high + 1, size=n)
    return np.array([Fraction(int(a), denominator) for a in nums], dtype=object)


def random_hn_vector(n: int, rng, low: int = -9, high: int = 9) -> np.ndarray:
    """Nonzero vector with coordinate sum exactly zero (projected sample)."""
    rng = rng_for(rng)
    while True:
        c = project_to_hn(random_rational_vector(n, rng, low, high))
        if any(x != 0 for x in c):
            return c
