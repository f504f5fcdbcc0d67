"""Deterministic random substreams for replicated Monte Carlo work.

Each replicate draws from a Philox counter-based generator keyed by
(seed, replicate index), so a replicate's stream never depends on how many
other replicates ran before it or on which thread ran it.
"""

from __future__ import annotations

import secrets

import numpy as np

_MASK64 = (1 << 64) - 1


def substream(seed: int, index: int) -> np.random.Generator:
    """Independent generator for one replicate of a seeded run."""
    if seed < 0 or index < 0:
        raise ValueError("seed and replicate index must be non-negative")
    key = [np.uint64(seed & _MASK64), np.uint64(index & _MASK64)]
    return np.random.Generator(np.random.Philox(key=key))


def fresh_seed() -> int:
    """Entropy-derived 63-bit seed for runs where none was supplied."""
    return secrets.randbits(63)


def as_generator(seed_or_rng: int | np.random.Generator) -> np.random.Generator:
    """Accept either a seed (stream 0 of that seed) or an existing generator."""
    if isinstance(seed_or_rng, np.random.Generator):
        return seed_or_rng
    return substream(int(seed_or_rng), 0)
