"""Derived random streams.

Every random draw in the package comes from a generator whose seed is
``derive_seed(master, *tags)``. Tags are hashed to 64 bits and folded into
the master seed with the SplitMix64 finalizer, so the stream for
``(seed, "trial", 17)`` never depends on how many other streams were drawn
first. That is what makes trial loops order-independent.
"""

from __future__ import annotations

import hashlib

import numpy as np

MASK64 = (1 << 64) - 1


def mix64(z: int) -> int:
    """SplitMix64 finalizer: a bijective 64-bit avalanche mix."""
    z = (z + 0x9E3779B97F4A7C15) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def _tag_value(tag) -> int:
    if isinstance(tag, (int, np.integer)):
        return int(tag) & MASK64
    digest = hashlib.blake2b(str(tag).encode("utf-8"), digest_size=8).digest()
    return int.from_bytes(digest, "little")


def derive_seed(master: int, *tags) -> int:
    """Fold ``tags`` into ``master`` one at a time: ``s = mix64(s ^ mix64(tag))``."""
    s = int(master) & MASK64
    for tag in tags:
        s = mix64(s ^ mix64(_tag_value(tag)))
    return s


def generator(master: int, *tags) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(derive_seed(master, *tags)))
