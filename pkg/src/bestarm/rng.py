"""Deterministic RNG plumbing.

Every stochastic routine in the package takes an explicit
``numpy.random.Generator``.  Generators are built from 64-bit seeds on top
of PCG64 (period 2**128, normal draws via numpy's ziggurat), so identical
seeds reproduce identical draw sequences within one build.  Replication
seeds are derived from a master seed with a splitmix64 avalanche mix,
which makes stream overlap between distinct (grid index, replication)
pairs as unlikely as a 64-bit collision.
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1


def splitmix64(z: int) -> int:
    """One splitmix64 avalanche step (Steele et al.), on 64-bit words."""
    z = (z + 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def mix_seed(master_seed: int, *words: int) -> int:
    """Mix a master seed with integer coordinates into a fresh 64-bit seed."""
    z = master_seed & _MASK64
    for w in words:
        z = splitmix64(z ^ (w & _MASK64))
    return splitmix64(z)


def make_rng(seed: int) -> np.random.Generator:
    """Generator seeded by a 64-bit integer."""
    return np.random.Generator(np.random.PCG64(seed & _MASK64))
