# -*- coding: utf-8 -*-

"""Named random substreams.

Every random draw in the package comes from a generator built here, keyed by the root
``--seed`` plus a path of names and indices. Keys are hashed to non-negative integers
and fed to a :class:`numpy.random.SeedSequence`, so two streams with different key
paths are statistically independent and a stream never depends on the order in
which other streams were created.
"""

import zlib
from typing import List, Union

import numpy as np

StreamKey = Union[int, str]


def _key_to_int(key: StreamKey) -> int:
    if isinstance(key, bool):
        raise ValueError("stream keys must be integers or strings")
    if isinstance(key, (int, np.integer)):
        if key < 0:
            raise ValueError("integer stream keys must be non-negative")
        return int(key)
    return zlib.crc32(key.encode("utf-8"))


def named_seed(*keys: StreamKey) -> int:
    """Derive a 63-bit integer seed from a key path.

    Args:
        keys: The key path, e.g. ``(root_seed, "demos", cell_seed)``.

    Returns:
        A non-negative integer usable as a seed for another stream.
    """
    entropy: List[int] = [_key_to_int(k) for k in keys]
    state = np.random.SeedSequence(entropy).generate_state(2, dtype=np.uint32)
    return (int(state[0]) << 31) ^ int(state[1])


def substream(*keys: StreamKey) -> np.random.Generator:
    """Build the generator for a key path.

    Args:
        keys: The key path, e.g. ``(episode_seed, step, candidate_index)``.

    Returns:
        A fresh PCG64 generator; equal key paths give bit-identical draws.

    Raises:
        ValueError: if no keys are given or an integer key is negative.
    """
    if not keys:
        raise ValueError("at least one stream key is required")
    entropy = [_key_to_int(k) for k in keys]
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy)))
